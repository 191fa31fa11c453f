#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "condtree/distributions.hpp"
#include "condtree/plane_tree.hpp"
#include "condtree/rng.hpp"
#include "condtree/spatial_tree.hpp"

namespace condtree {

/// The tree and spatial-tree laws that can be sampled.
///   Pi       Galton-Watson tree                   PiN     Pi given |T| = n+1
///   Px       Pi with labels started at x          PNx     Px given |T| = n+1
///   PBarNx   PNx given U-underbar > 0
///   Q        Pi given N_root = 1, labels from x   QN      Q given |T| = n+1
///   QBarN    QN given U-underbar > 0
enum class Measure { Pi, PiN, Px, PNx, PBarNx, Q, QN, QBarN };

std::string_view to_string(Measure m);
Measure parse_measure(std::string_view text);
bool is_size_conditioned(Measure m);
bool is_spatial(Measure m);

struct SampleConfig {
  std::uint64_t seed = 0;
  Measure measure = Measure::PiN;
  std::optional<std::size_t> n;
  double x = 0.0;
  std::uint64_t max_rejections = 100'000'000;
  std::size_t size_cap = std::size_t{1} << 24;
  /// Strict ({U-underbar > 0}) or closed ({U-underbar >= 0}) positivity.
  bool strict = true;

  /// Throws Error(InvalidArgument).
  void validate() const;
};

/// Unconditioned GW tree, grown in preorder with an explicit counter of open
/// slots. Throws Error(SizeOverflow) beyond `size_cap` vertices.
PlaneTree sample_gw(const OffspringDistribution& mu, Rng& rng, std::size_t size_cap = std::size_t{1} << 24);

/// Rotates a child-count sequence whose Lukasiewicz steps sum to -1 to its
/// unique cyclic shift that first reaches -1 at the last step.
std::vector<std::uint32_t> cycle_lemma_rotate(std::span<const std::uint32_t> counts);

/// Exact sampler for Pi conditioned on |T| = n + 1.
///
/// Draws n + 1 child counts i.i.d. from mu conditioned on summing to n and
/// applies the cycle lemma. For the geometric law the conditioned vector is
/// uniform over weak compositions of n and is drawn directly; otherwise whole
/// blocks are redrawn until the sum matches.
class SizedTreeSampler {
 public:
  /// Throws Error(UnreachableSize) if mu gives size n + 1 probability 0.
  SizedTreeSampler(const OffspringDistribution& mu, std::size_t n);

  std::size_t n() const noexcept { return n_; }
  PlaneTree operator()(Rng& rng) const;
  std::vector<std::uint32_t> sample_counts(Rng& rng) const;

 private:
  const OffspringDistribution* mu_;
  std::size_t n_;
};

PlaneTree sample_gw_sized(const OffspringDistribution& mu, std::size_t n, Rng& rng);

/// Q^n trees: a root with one child carrying a Pi^{n-1} subtree (n >= 1).
PlaneTree sample_q_sized(const OffspringDistribution& mu, std::size_t n, Rng& rng);

/// Labels x + sum of i.i.d. gamma increments along each ancestral line.
SpatialTree<double> sample_spatial(const PlaneTree& t, const StepDistribution& gamma, double x, Rng& rng);

/// One rejection attempt for positivity: fresh sized tree, labels drawn in
/// preorder, abandoned at the first non-positive non-root label. Returns the
/// tree on success.
std::optional<SpatialTree<double>> positivity_attempt(const SizedTreeSampler& trees, const StepDistribution& gamma,
                                                      double x, Rng& rng, bool strict = true,
                                                      bool q_tree = false);

struct ConditionedSample {
  SpatialTree<double> tree;
  std::uint64_t attempts = 0;
};

/// Exact PBarNx sample by rejection. Throws Error(RejectionBudgetExhausted).
ConditionedSample sample_conditioned(const OffspringDistribution& mu, const StepDistribution& gamma, std::size_t n,
                                     double x, Rng& rng, std::uint64_t max_rejections = 100'000'000,
                                     bool strict = true);

struct ImportanceSample {
  /// The re-rooted tree for valid draws, the raw Q^n draw otherwise.
  SpatialTree<double> tree;
  /// 1/|leaves|; re-rooting at a leaf does not change the leaf count.
  double weight = 0.0;
  /// |Delta| = 1 and v_m is a leaf.
  bool valid = false;
};

/// Draws from Q^n (root label 0) and re-roots at v_m. The average of
/// valid * weight * F(tree) estimates Q^n(F 1{U-underbar > 0}).
ImportanceSample sample_reroot_importance(const OffspringDistribution& mu, const StepDistribution& gamma,
                                          std::size_t n, Rng& rng);

/// Dispatches on `config.measure`. Tree-only measures (Pi, PiN) carry the
/// constant label x.
SpatialTree<double> sample_measure(const SampleConfig& config, const OffspringDistribution& mu,
                                   const StepDistribution& gamma, Rng& rng);

}  // namespace condtree
