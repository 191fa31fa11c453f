#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "condtree/error.hpp"
#include "condtree/plane_tree.hpp"
#include "condtree/rational.hpp"

namespace condtree {

/// A plane tree with a label U_v per vertex, indexed in preorder.
///
/// `Label` is the numeric field: double for Monte Carlo, Rational (or an
/// integer type) where identities are checked exactly.
template <class Label>
struct SpatialTree {
  PlaneTree tree;
  std::vector<Label> labels;

  SpatialTree() : labels(1, Label(0)) {}
  SpatialTree(PlaneTree t, std::vector<Label> l) : tree(std::move(t)), labels(std::move(l)) {
    if (labels.size() != tree.size()) {
      throw Error(ErrorCode::LengthMismatch, std::to_string(labels.size()) + " labels for " +
                                                 std::to_string(tree.size()) + " vertices");
    }
  }

  std::size_t size() const noexcept { return tree.size(); }
  const Label& root_label() const { return labels.front(); }
  const Label& label(const Vertex& v) const { return labels[tree.require(v)]; }

  friend bool operator==(const SpatialTree&, const SpatialTree&) = default;
};

template <class To, class From>
To label_cast(const From& x) {
  if constexpr (std::is_same_v<From, Rational> && !std::is_same_v<To, Rational>) {
    return static_cast<To>(x.get_d());
  } else {
    return To(x);
  }
}

template <class To, class From>
SpatialTree<To> convert_labels(const SpatialTree<From>& s) {
  std::vector<To> out;
  out.reserve(s.labels.size());
  for (const auto& x : s.labels) out.push_back(label_cast<To>(x));
  return {s.tree, std::move(out)};
}

template <class Label>
SpatialTree<Label> shift_labels(SpatialTree<Label> s, const Label& delta) {
  for (auto& x : s.labels) x += delta;
  return s;
}

/// V at integer times 0..zeta(T).
template <class Label>
std::vector<Label> spatial_contour(const SpatialTree<Label>& s) {
  std::vector<Label> out;
  out.reserve(s.tree.zeta() + 1);
  for (std::uint32_t v : contour_vertices(s.tree)) out.push_back(s.labels[v]);
  return out;
}

/// Minimal label, the set Delta of its preorder (= lexicographic) indices,
/// and v_m, the first of them.
template <class Label>
struct MinLabel {
  Label min;
  std::vector<std::size_t> delta;
  std::size_t first = 0;
};

/// With `include_root` false the minimum is taken over T \ {root} (the
/// quantity written U-underbar); throws Error(SingletonTree) if that is empty.
template <class Label>
MinLabel<Label> min_label(const SpatialTree<Label>& s, bool include_root = true) {
  const std::size_t start = include_root ? 0 : 1;
  if (start >= s.size()) throw Error(ErrorCode::SingletonTree, "no non-root vertex");
  MinLabel<Label> out{s.labels[start], {}, start};
  for (std::size_t i = start; i < s.size(); ++i) {
    if (s.labels[i] < out.min) {
      out.min = s.labels[i];
      out.delta.clear();
    }
    if (s.labels[i] == out.min) out.delta.push_back(i);
  }
  out.first = out.delta.front();
  return out;
}

/// U-underbar, with nullopt standing for +infinity on the single-vertex tree.
template <class Label>
std::optional<Label> lower_label(const SpatialTree<Label>& s) {
  if (s.size() < 2) return std::nullopt;
  return *std::min_element(s.labels.begin() + 1, s.labels.end());
}

/// True iff every non-root label is > 0 (`strict`) or >= 0.
template <class Label>
bool positive_off_root(const SpatialTree<Label>& s, bool strict = true) {
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (strict ? !(s.labels[i] > 0) : s.labels[i] < 0) return false;
  }
  return true;
}

/// (j1, ..., jp) -> (1, jp, ..., j2): the vertex of the re-rooted tree that
/// corresponds to the old root. Throws Error(EmptyVertex) for the root.
Vertex companion_vertex(const Vertex& v0);

/// Re-roots at v0 after cutting the strict descendants of v0.
///
/// Both contours of the result are computed from the original ones,
///   C'(t) = C(k) + C([[k-t]]) - 2 min_{between k and [[k-t]]} C,
///   V'(t) = V([[k-t]]) - V(k),   0 <= t <= zeta - (l - k),
/// where [[x]] is x reduced into [0, zeta), and decoded with tree_of_contour.
/// The child order of the result is the one induced by this contour.
template <class Label>
SpatialTree<Label> reroot_at(const SpatialTree<Label>& s, std::size_t v0) {
  const PlaneTree& t = s.tree;
  if (v0 >= t.size()) throw Error(ErrorCode::VertexNotInTree, "index " + std::to_string(v0));
  if (v0 == 0) throw Error(ErrorCode::RootNotAllowed, "cannot re-root at the root");

  const auto walk = contour_vertices(t);
  const std::size_t zeta = t.zeta();
  const auto [k, l] = visit_times(t, v0);
  const std::size_t length = zeta - (l - k);
  auto height = [&](std::size_t time) { return static_cast<std::int64_t>(t.depth(walk[time])); };

  // right_min[j - k] = min C[k..j] for k <= j < zeta.
  std::vector<std::int64_t> right_min(zeta - k);
  std::int64_t running = height(k);
  for (std::size_t j = k; j < zeta; ++j) {
    running = std::min(running, height(j));
    right_min[j - k] = running;
  }

  std::vector<std::int64_t> contour(length + 1);
  std::vector<Label> spatial(length + 1);
  const std::int64_t base = height(k);
  const Label& base_label = s.labels[v0];
  std::int64_t left_min = base;
  for (std::size_t time = 0; time <= length; ++time) {
    std::size_t idx;
    std::int64_t between;
    if (time <= k) {
      idx = k - time;
      left_min = std::min(left_min, height(idx));
      between = left_min;
    } else {
      idx = zeta - (time - k);
      between = right_min[idx - k];
    }
    contour[time] = base + height(idx) - 2 * between;
    spatial[time] = s.labels[walk[idx]] - base_label;
  }

  PlaneTree rerooted = tree_of_contour(std::span<const std::int64_t>(contour));
  std::vector<Label> labels(rerooted.size());
  const auto new_walk = contour_vertices(rerooted);
  for (std::size_t time = 0; time <= length; ++time) labels[new_walk[time]] = spatial[time];
  return {std::move(rerooted), std::move(labels)};
}

template <class Label>
SpatialTree<Label> reroot_at(const SpatialTree<Label>& s, const Vertex& v0) {
  if (v0.is_root()) throw Error(ErrorCode::RootNotAllowed, "cannot re-root at the root");
  return reroot_at(s, s.tree.require(v0));
}

/// Labelled subtree T^[v] with the original labels (U-bar^[v]_w = U_{vw}).
template <class Label>
SpatialTree<Label> labelled_subtree(const SpatialTree<Label>& s, std::size_t v) {
  const std::size_t end = s.tree.subtree_end(v);
  return {subtree_from(s.tree, v),
          std::vector<Label>(s.labels.begin() + static_cast<std::ptrdiff_t>(v),
                             s.labels.begin() + static_cast<std::ptrdiff_t>(end))};
}

template <class Label>
struct ExitVertex {
  Vertex vertex;
  Label label;
  /// Preorder index of the exit inside the truncated tree.
  std::size_t truncated_index = 0;
  SpatialTree<Label> subtree;
};

/// First-exit decomposition from (-inf, a).
template <class Label>
struct ExitDecomposition {
  Label level;
  SpatialTree<Label> truncated;
  std::vector<ExitVertex<Label>> exits;  // lexicographic order

  std::size_t count() const noexcept { return exits.size(); }
};

/// Throws Error(RootAboveLevel) when the root label is >= a.
template <class Label>
ExitDecomposition<Label> exit_decompose(const SpatialTree<Label>& s, const Label& a) {
  if (!(s.root_label() < a)) throw Error(ErrorCode::RootAboveLevel, "root label is not below the level");
  const PlaneTree& t = s.tree;
  // below_exit[i]: some strict ancestor of i has label >= a.
  std::vector<char> below_exit(t.size(), 0);
  std::vector<std::uint32_t> counts;
  std::vector<Label> labels;
  ExitDecomposition<Label> out{a, {}, {}};
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i > 0) {
      const std::size_t p = t.parent(i);
      below_exit[i] = below_exit[p] || !(s.labels[p] < a);
    }
    if (below_exit[i]) continue;
    const bool exit = !(s.labels[i] < a);
    if (exit) {
      out.exits.push_back({t.vertex_at(i), s.labels[i], counts.size(), labelled_subtree(s, i)});
    }
    counts.push_back(exit ? 0u : t.child_count(i));
    labels.push_back(s.labels[i]);
  }
  out.truncated = {PlaneTree::from_preorder(std::move(counts)), std::move(labels)};
  return out;
}

/// Grafts the exit subtrees back onto the truncated tree.
template <class Label>
SpatialTree<Label> reassemble(const ExitDecomposition<Label>& d) {
  const auto& trunc = d.truncated;
  std::vector<std::uint32_t> counts;
  std::vector<Label> labels;
  std::size_t next_exit = 0;
  for (std::size_t i = 0; i < trunc.size(); ++i) {
    if (next_exit < d.exits.size() && d.exits[next_exit].truncated_index == i) {
      const auto& sub = d.exits[next_exit++].subtree;
      counts.insert(counts.end(), sub.tree.counts().begin(), sub.tree.counts().end());
      labels.insert(labels.end(), sub.labels.begin(), sub.labels.end());
    } else {
      counts.push_back(trunc.tree.child_count(i));
      labels.push_back(trunc.labels[i]);
    }
  }
  return {PlaneTree::from_preorder(std::move(counts)), std::move(labels)};
}

}  // namespace condtree
