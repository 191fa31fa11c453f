#include "condtree/plane_tree.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "condtree/error.hpp"

namespace condtree {

Vertex Vertex::child(std::uint32_t j) const {
  if (j == 0) throw Error(ErrorCode::InvalidArgument, "child indices start at 1");
  auto p = path_;
  p.push_back(j);
  return Vertex(std::move(p));
}

Vertex Vertex::parent() const {
  if (path_.empty()) throw Error(ErrorCode::EmptyVertex, "the root has no parent");
  return Vertex(std::vector<std::uint32_t>(path_.begin(), path_.end() - 1));
}

Vertex Vertex::concat(const Vertex& v) const {
  auto p = path_;
  p.insert(p.end(), v.path_.begin(), v.path_.end());
  return Vertex(std::move(p));
}

bool Vertex::is_ancestor_of(const Vertex& v) const {
  return path_.size() <= v.path_.size() && std::equal(path_.begin(), path_.end(), v.path_.begin());
}

std::string Vertex::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < path_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(path_[i]);
  }
  out += ')';
  return out;
}

Vertex Vertex::parse(std::string_view text) {
  std::vector<std::uint32_t> path;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (c >= '0' && c <= '9') {
      std::uint32_t value = 0;
      auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + text.size(), value);
      if (ec != std::errc() || value == 0) {
        throw Error(ErrorCode::ParseError, "bad vertex '" + std::string(text) + "'");
      }
      path.push_back(value);
      i = static_cast<std::size_t>(ptr - text.data());
    } else if (c == '(' || c == ')' || c == ',' || c == ' ') {
      ++i;
    } else {
      throw Error(ErrorCode::ParseError, "bad vertex '" + std::string(text) + "'");
    }
  }
  return Vertex(std::move(path));
}

PlaneTree::PlaneTree() : PlaneTree(std::vector<std::uint32_t>{0}) {}

PlaneTree::PlaneTree(std::vector<std::uint32_t> counts) : counts_(std::move(counts)) {
  const std::size_t n = counts_.size();
  parent_.assign(n, 0);
  depth_.assign(n, 0);
  end_.assign(n, static_cast<std::uint32_t>(n));
  // Each stack entry: (vertex, children still to attach).
  std::vector<std::pair<std::uint32_t, std::uint32_t>> stack;
  stack.reserve(64);
  for (std::uint32_t i = 0; i < n; ++i) {
    while (!stack.empty() && stack.back().second == 0) {
      end_[stack.back().first] = i;
      stack.pop_back();
    }
    if (!stack.empty()) {
      parent_[i] = stack.back().first;
      depth_[i] = depth_[stack.back().first] + 1;
      --stack.back().second;
    }
    stack.emplace_back(i, counts_[i]);
  }
  while (!stack.empty()) {
    end_[stack.back().first] = static_cast<std::uint32_t>(n);
    stack.pop_back();
  }
}

PlaneTree PlaneTree::from_preorder(std::vector<std::uint32_t> counts) {
  if (counts.empty()) throw Error(ErrorCode::InvalidPreorder, "empty child-count list");
  std::int64_t walk = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    walk += static_cast<std::int64_t>(counts[i]) - 1;
    const bool last = i + 1 == counts.size();
    if (!last && walk <= -1) {
      throw Error(ErrorCode::InvalidPreorder,
                  "Lukasiewicz path reaches -1 at position " + std::to_string(i + 1) + " of " +
                      std::to_string(counts.size()));
    }
    if (last && walk != -1) {
      throw Error(ErrorCode::InvalidPreorder,
                  "Lukasiewicz path ends at " + std::to_string(walk) + " instead of -1");
    }
  }
  return PlaneTree(std::move(counts));
}

std::size_t PlaneTree::child(std::size_t index, std::uint32_t j) const {
  if (j == 0 || j > counts_[index]) {
    throw Error(ErrorCode::VertexNotInTree, "child " + std::to_string(j) + " of vertex with " +
                                                std::to_string(counts_[index]) + " children");
  }
  std::size_t c = index + 1;
  for (std::uint32_t step = 1; step < j; ++step) c = end_[c];
  return c;
}

Vertex PlaneTree::vertex_at(std::size_t index) const {
  std::vector<std::uint32_t> path(depth_[index]);
  std::size_t v = index;
  for (std::size_t d = depth_[index]; d > 0; --d) {
    const std::size_t p = parent_[v];
    std::uint32_t j = 1;
    for (std::size_t c = p + 1; c != v; c = end_[c]) ++j;
    path[d - 1] = j;
    v = p;
  }
  return Vertex(std::move(path));
}

std::optional<std::size_t> PlaneTree::index_of(const Vertex& v) const {
  std::size_t index = 0;
  for (std::uint32_t j : v.path()) {
    if (j == 0 || j > counts_[index]) return std::nullopt;
    index = child(index, j);
  }
  return index;
}

std::size_t PlaneTree::require(const Vertex& v) const {
  auto index = index_of(v);
  if (!index) throw Error(ErrorCode::VertexNotInTree, v.to_string());
  return *index;
}

std::size_t PlaneTree::leaf_count() const noexcept {
  return static_cast<std::size_t>(std::count(counts_.begin(), counts_.end(), 0u));
}

PlaneTree build_tree(std::vector<std::uint32_t> preorder_child_counts) {
  return PlaneTree::from_preorder(std::move(preorder_child_counts));
}

ContourFunction contour_of(const PlaneTree& t) {
  ContourFunction c;
  c.values.reserve(t.zeta() + 1);
  for (std::uint32_t v : contour_vertices(t)) c.values.push_back(static_cast<std::int64_t>(t.depth(v)));
  return c;
}

std::vector<std::uint32_t> contour_vertices(const PlaneTree& t) {
  std::vector<std::uint32_t> out;
  out.reserve(t.zeta() + 1);
  // Stack of (vertex, next child to descend into).
  std::vector<std::pair<std::uint32_t, std::uint32_t>> stack;
  stack.emplace_back(0u, 0u);
  std::uint32_t next_index = 1;
  while (!stack.empty()) {
    auto& [v, done] = stack.back();
    out.push_back(v);
    if (done < t.child_count(v)) {
      ++done;
      stack.emplace_back(next_index++, 0u);
    } else {
      stack.pop_back();
    }
  }
  return out;
}

PlaneTree tree_of_contour(std::span<const std::int64_t> values) {
  if (values.empty() || values.front() != 0 || values.back() != 0) {
    throw Error(ErrorCode::InvalidContour, "contour must start and end at 0");
  }
  if (values.size() % 2 == 0) throw Error(ErrorCode::InvalidContour, "contour duration must be even");
  std::vector<std::uint32_t> counts{0};
  std::vector<std::uint32_t> stack{0};
  for (std::size_t t = 1; t < values.size(); ++t) {
    const std::int64_t step = values[t] - values[t - 1];
    if (values[t] < 0) throw Error(ErrorCode::InvalidContour, "negative value at time " + std::to_string(t));
    if (step == 1) {
      ++counts[stack.back()];
      stack.push_back(static_cast<std::uint32_t>(counts.size()));
      counts.push_back(0);
    } else if (step == -1) {
      stack.pop_back();
    } else {
      throw Error(ErrorCode::InvalidContour, "step of size " + std::to_string(step) + " at time " +
                                                 std::to_string(t));
    }
  }
  return PlaneTree::from_preorder(std::move(counts));
}

PlaneTree tree_of_contour(const ContourFunction& c) { return tree_of_contour(std::span<const std::int64_t>(c.values)); }

VisitTimes visit_times(const PlaneTree& t, std::size_t index) {
  // Before the first visit of v, each earlier vertex contributed one up-step,
  // and every earlier vertex not on the ancestral line also its down-step.
  const std::size_t first = 2 * index - t.depth(index);
  return {first, first + 2 * (t.subtree_size(index) - 1)};
}

VisitTimes visit_times(const PlaneTree& t, const Vertex& v) { return visit_times(t, t.require(v)); }

std::vector<Vertex> leaves(const PlaneTree& t) {
  std::vector<Vertex> out;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t.is_leaf(i)) out.push_back(t.vertex_at(i));
  }
  return out;
}

PlaneTree subtree_from(const PlaneTree& t, std::size_t index) {
  auto c = t.counts();
  return PlaneTree::from_preorder(
      std::vector<std::uint32_t>(c.begin() + static_cast<std::ptrdiff_t>(index),
                                 c.begin() + static_cast<std::ptrdiff_t>(t.subtree_end(index))));
}

PlaneTree subtree_from(const PlaneTree& t, const Vertex& v) { return subtree_from(t, t.require(v)); }

PlaneTree truncate_at(const PlaneTree& t, std::size_t index) {
  auto c = t.counts();
  std::vector<std::uint32_t> out(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(index));
  out.push_back(0);
  out.insert(out.end(), c.begin() + static_cast<std::ptrdiff_t>(t.subtree_end(index)), c.end());
  return PlaneTree::from_preorder(std::move(out));
}

PlaneTree truncate_at(const PlaneTree& t, const Vertex& v) { return truncate_at(t, t.require(v)); }

namespace {

void extend(std::vector<std::uint32_t>& counts, std::size_t total, std::size_t pending,
            const std::function<void(const PlaneTree&)>& visit) {
  const std::size_t remaining = total - counts.size();
  if (remaining == 1) {
    // pending == 1 here: the last vertex is a leaf closing the walk.
    counts.push_back(0);
    visit(PlaneTree::from_preorder(counts));
    counts.pop_back();
    return;
  }
  // New pending = pending - 1 + c must lie in [1, remaining - 1].
  const std::size_t lo = pending >= 2 ? 0 : 2 - pending;
  const std::size_t hi = remaining - pending;
  for (std::size_t c = lo; c <= hi; ++c) {
    counts.push_back(static_cast<std::uint32_t>(c));
    extend(counts, total, pending - 1 + c, visit);
    counts.pop_back();
  }
}

}  // namespace

void for_each_tree(std::size_t n_vertices, bool root_single_child,
                   const std::function<void(const PlaneTree&)>& visit) {
  if (n_vertices == 0) throw Error(ErrorCode::InvalidArgument, "trees have at least one vertex");
  if (n_vertices == 1) {
    if (!root_single_child) visit(PlaneTree());
    return;
  }
  std::vector<std::uint32_t> counts;
  counts.reserve(n_vertices);
  if (root_single_child) {
    counts.push_back(1);
    extend(counts, n_vertices, 1, visit);
    return;
  }
  extend(counts, n_vertices, 1, visit);
}

std::vector<PlaneTree> enumerate_trees(std::size_t n_vertices, bool root_single_child) {
  std::vector<PlaneTree> out;
  for_each_tree(n_vertices, root_single_child, [&](const PlaneTree& t) { out.push_back(t); });
  return out;
}

std::uint64_t catalan(std::size_t k) {
  std::uint64_t c = 1;
  for (std::size_t i = 0; i < k; ++i) {
    // C_{i+1} = C_i * 2(2i+1) / (i+2); exact at every step.
    c = c * 2 * (2 * i + 1) / (i + 2);
  }
  return c;
}

std::string to_csv_line(const PlaneTree& t) {
  std::string out;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(t.child_count(i));
  }
  return out;
}

PlaneTree parse_csv_line(std::string_view line) {
  std::vector<std::uint32_t> counts;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == ',' || line[i] == '\r')) ++i;
    if (i >= line.size()) break;
    std::uint32_t value = 0;
    auto [ptr, ec] = std::from_chars(line.data() + i, line.data() + line.size(), value);
    if (ec != std::errc()) throw Error(ErrorCode::ParseError, "bad child count list '" + std::string(line) + "'");
    counts.push_back(value);
    i = static_cast<std::size_t>(ptr - line.data());
  }
  return PlaneTree::from_preorder(std::move(counts));
}

}  // namespace condtree
