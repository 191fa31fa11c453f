#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "condtree/distributions.hpp"
#include "condtree/rng.hpp"
#include "condtree/spatial_tree.hpp"

namespace condtree {

/// Rooted planar map as a rotation system on darts.
///
/// sigma(d) is the next dart counterclockwise around the origin of d, alpha(d)
/// the opposite dart of the same edge. Faces are the cycles of sigma o alpha.
/// Vertices carry the ids given at construction (one id per sigma cycle).
class PlanarQuadrangulation {
 public:
  /// Vertex ids are assigned to sigma cycles in order of their smallest dart.
  /// Throws Error(NotAQuadrangulation).
  static PlanarQuadrangulation from_rotation(std::vector<std::uint32_t> sigma, std::vector<std::uint32_t> alpha,
                                             std::uint32_t root_dart);
  /// Same, with explicit vertex ids (must be constant on each sigma cycle and
  /// distinct across cycles, covering 0..V-1).
  static PlanarQuadrangulation from_rotation(std::vector<std::uint32_t> sigma, std::vector<std::uint32_t> alpha,
                                             std::uint32_t root_dart, std::vector<std::uint32_t> vertex_of);

  std::size_t faces() const noexcept { return sigma_.size() / 4; }
  std::size_t darts() const noexcept { return sigma_.size(); }
  std::size_t vertices() const noexcept { return vertex_count_; }
  std::size_t edges() const noexcept { return sigma_.size() / 2; }

  std::uint32_t sigma(std::uint32_t d) const { return sigma_[d]; }
  std::uint32_t sigma_inverse(std::uint32_t d) const { return sigma_inv_[d]; }
  std::uint32_t alpha(std::uint32_t d) const { return alpha_[d]; }
  std::uint32_t phi(std::uint32_t d) const { return sigma_[alpha_[d]]; }
  std::uint32_t origin(std::uint32_t d) const { return vertex_of_[d]; }
  std::uint32_t root_dart() const noexcept { return root_; }
  std::uint32_t root_vertex() const { return vertex_of_[root_]; }

  /// Face orbits of sigma o alpha, each listed from its smallest dart.
  std::vector<std::vector<std::uint32_t>> face_orbits() const;
  /// Rotation around each vertex, indexed by vertex id.
  std::vector<std::vector<std::uint32_t>> sigma_cycles() const;

  friend bool operator==(const PlanarQuadrangulation&, const PlanarQuadrangulation&) = default;

 private:
  PlanarQuadrangulation() = default;
  void validate() const;

  std::vector<std::uint32_t> sigma_, sigma_inv_, alpha_, vertex_of_;
  std::uint32_t root_ = 0;
  std::size_t vertex_count_ = 0;
};

/// Corner-successor construction from a well-labelled tree with n >= 1 edges
/// (root label 1, labels >= 1, neighbour labels within 1).
///
/// The contour corners 0..2n-1 are joined to the next corner (cyclically) of
/// label one less, and label-1 corners to an extra vertex a0. Tree vertices
/// keep their preorder index as vertex id; a0 gets id n + 1. Arc i owns darts
/// 2i (at corner i) and 2i + 1 (at its target). The root dart is 1, from a0
/// to the tree root. Throws Error(NotWellLabelled).
PlanarQuadrangulation cvs_build(const SpatialTree<int>& wt);
PlanarQuadrangulation cvs_build(const SpatialTree<double>& wt);

/// Recovers the well-labelled tree: labels are distances from the root
/// vertex, and each face contributes one tree edge. Throws
/// Error(NotAQuadrangulation).
SpatialTree<int> cvs_inverse(const PlanarQuadrangulation& q);

/// Graph distances from the root vertex.
std::vector<std::size_t> distances_from_root(const PlanarQuadrangulation& q);

struct DistanceProfile {
  std::size_t radius = 0;
  std::map<std::size_t, std::size_t> counts;  // k -> |{a : d(a0, a) = k}|

  /// Atoms (k / n^{1/4}, lambda_q(k) / (n + 1)) over k >= 1, i.e. over the n+1
  /// vertices other than a0, so the measure has mass one.
  std::vector<std::pair<double, double>> rescaled(std::size_t n) const;
};

DistanceProfile distance_profile(const PlanarQuadrangulation& q);

/// Code of the rooted map: darts numbered in breadth-first discovery order
/// from the root dart (following sigma, then alpha), then (sigma, alpha) of
/// each dart in that order, 4 little-endian bytes per entry. Equal iff the
/// rooted maps are isomorphic.
std::string canonical_code(const PlanarQuadrangulation& q);

/// Uniform rooted quadrangulation with n faces: a uniform well-labelled tree
/// (exact rejection) mapped through cvs_build.
PlanarQuadrangulation sample_uniform_quad(std::size_t n, Rng& rng, std::uint64_t max_rejections = 100'000'000);

nlohmann::json to_json(const PlanarQuadrangulation& q);
PlanarQuadrangulation quad_from_json(const nlohmann::json& j);

}  // namespace condtree
