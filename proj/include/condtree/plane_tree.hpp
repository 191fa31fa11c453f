#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace condtree {

/// A vertex in Neveu's notation: the path of child indices from the root.
/// The empty path is the root. Ordering is lexicographic with proper
/// prefixes first, which is also the preorder of any tree containing both.
class Vertex {
 public:
  Vertex() = default;
  Vertex(std::initializer_list<std::uint32_t> path) : path_(path) {}
  explicit Vertex(std::vector<std::uint32_t> path) : path_(std::move(path)) {}

  static Vertex root() { return {}; }

  bool is_root() const noexcept { return path_.empty(); }
  std::size_t depth() const noexcept { return path_.size(); }
  std::span<const std::uint32_t> path() const noexcept { return path_; }
  std::uint32_t operator[](std::size_t i) const { return path_[i]; }

  Vertex child(std::uint32_t j) const;
  Vertex parent() const;
  /// Concatenation uv.
  Vertex concat(const Vertex& v) const;
  bool is_ancestor_of(const Vertex& v) const;  // non-strict

  std::string to_string() const;  // "()" for the root, "(1,2)" otherwise
  static Vertex parse(std::string_view text);

  friend auto operator<=>(const Vertex&, const Vertex&) = default;
  friend bool operator==(const Vertex&, const Vertex&) = default;

 private:
  std::vector<std::uint32_t> path_;
};

/// Contour heights at integer times 0..2(|T|-1).
struct ContourFunction {
  std::vector<std::int64_t> values;

  std::size_t duration() const noexcept { return values.empty() ? 0 : values.size() - 1; }
  friend bool operator==(const ContourFunction&, const ContourFunction&) = default;
};

/// Rooted ordered tree stored as its preorder child-count list.
///
/// Vertices are addressed by preorder index (0 is the root); preorder is the
/// lexicographic order of Neveu paths, so index order and `Vertex` order agree.
/// Parent, depth and subtree extent are precomputed at construction.
class PlaneTree {
 public:
  /// The single-vertex tree.
  PlaneTree();

  /// Throws Error(InvalidPreorder) unless the Lukasiewicz path of `counts`
  /// stays above -1 and ends at -1 exactly at the last entry.
  static PlaneTree from_preorder(std::vector<std::uint32_t> counts);

  std::size_t size() const noexcept { return counts_.size(); }
  /// zeta(T) = 2(|T| - 1), the duration of the contour.
  std::size_t zeta() const noexcept { return 2 * (counts_.size() - 1); }

  std::span<const std::uint32_t> counts() const noexcept { return counts_; }
  std::uint32_t child_count(std::size_t index) const { return counts_[index]; }
  bool is_leaf(std::size_t index) const { return counts_[index] == 0; }

  /// Parent preorder index; the root maps to itself.
  std::size_t parent(std::size_t index) const { return parent_[index]; }
  std::size_t depth(std::size_t index) const { return depth_[index]; }
  /// One past the last preorder index of the subtree rooted at `index`.
  std::size_t subtree_end(std::size_t index) const { return end_[index]; }
  std::size_t subtree_size(std::size_t index) const { return end_[index] - index; }
  /// Preorder index of the j-th child (1-based) of `index`.
  std::size_t child(std::size_t index, std::uint32_t j) const;

  Vertex vertex_at(std::size_t index) const;
  std::optional<std::size_t> index_of(const Vertex& v) const;
  /// Like index_of, but throws Error(VertexNotInTree).
  std::size_t require(const Vertex& v) const;

  std::size_t leaf_count() const noexcept;

  friend bool operator==(const PlaneTree& a, const PlaneTree& b) { return a.counts_ == b.counts_; }
  friend auto operator<=>(const PlaneTree& a, const PlaneTree& b) { return a.counts_ <=> b.counts_; }

 private:
  explicit PlaneTree(std::vector<std::uint32_t> counts);

  std::vector<std::uint32_t> counts_;
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint32_t> depth_;
  std::vector<std::uint32_t> end_;
};

/// Inclusive first and last contour visit times of a vertex.
struct VisitTimes {
  std::size_t first = 0;
  std::size_t last = 0;
  friend bool operator==(const VisitTimes&, const VisitTimes&) = default;
};

PlaneTree build_tree(std::vector<std::uint32_t> preorder_child_counts);

ContourFunction contour_of(const PlaneTree& t);

/// Preorder index of the vertex occupied at each integer contour time.
std::vector<std::uint32_t> contour_vertices(const PlaneTree& t);

/// Inverse of contour_of; throws Error(InvalidContour).
PlaneTree tree_of_contour(const ContourFunction& c);
PlaneTree tree_of_contour(std::span<const std::int64_t> values);

VisitTimes visit_times(const PlaneTree& t, std::size_t index);
VisitTimes visit_times(const PlaneTree& t, const Vertex& v);

std::vector<Vertex> leaves(const PlaneTree& t);

/// T^[v]: the subtree originating from v, re-indexed from its own root.
PlaneTree subtree_from(const PlaneTree& t, const Vertex& v);
PlaneTree subtree_from(const PlaneTree& t, std::size_t index);

/// T^(v): t with the strict descendants of v removed.
PlaneTree truncate_at(const PlaneTree& t, const Vertex& v);
PlaneTree truncate_at(const PlaneTree& t, std::size_t index);

/// Calls `visit` once for every plane tree with `n_vertices` vertices, in
/// increasing lexicographic order of preorder counts. With
/// `root_single_child` only trees whose root has exactly one child are visited.
void for_each_tree(std::size_t n_vertices, bool root_single_child,
                   const std::function<void(const PlaneTree&)>& visit);

std::vector<PlaneTree> enumerate_trees(std::size_t n_vertices, bool root_single_child = false);

/// Catalan number C_k (exact for k <= 33).
std::uint64_t catalan(std::size_t k);

/// "2,3,0,2,0,0,0,0"
std::string to_csv_line(const PlaneTree& t);
PlaneTree parse_csv_line(std::string_view line);

}  // namespace condtree
