#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "condtree/distributions.hpp"
#include "condtree/plane_tree.hpp"
#include "condtree/rational.hpp"
#include "condtree/spatial_tree.hpp"

namespace condtree {

/// Pi(T) = prod_v mu(N_v).
Rational tree_weight(const PlaneTree& t, const OffspringDistribution& mu);

/// Q(T) = prod_{v != root} mu(N_v): Pi given N_root = 1, defined even when mu(1) = 0.
Rational q_tree_weight(const PlaneTree& t, const OffspringDistribution& mu);

/// Calls visit(labels, weight) for every label vector of t with root label x
/// and increments from the atoms of gamma; weight is the product of the step
/// masses. Label vectors come in odometer order. Throws Error(IrrationalMass)
/// for non-atomic gamma.
void for_each_labelling(const PlaneTree& t, const StepDistribution& gamma, const Rational& x,
                        const std::function<void(const std::vector<Rational>&, const Rational&)>& visit);

struct SizeLawRow {
  std::size_t size = 0;  // |T|
  Rational enumerated;   // sum of Pi(T) over trees of that size
  Rational walk;         // P(S_size = -1) / size
  bool equal = false;
};

/// Rows for |T| = 1..max_size.
std::vector<SizeLawRow> verify_size_law(const OffspringDistribution& mu, std::size_t max_size);

/// P(S_k = -1) for the walk with steps nu(j) = mu(j + 1), by exact convolution.
Rational walk_hit_probability(const OffspringDistribution& mu, std::size_t k);

/// An atom of a finite labelled-tree measure: (preorder child counts, labels).
using AtomKey = std::pair<std::vector<std::uint32_t>, std::vector<Rational>>;
using AtomMeasure = std::map<AtomKey, Rational>;

enum class FunctionalFamily { Mass, Shape, Leaves, ChildPattern, LabelHistogram, ContourCell, Atom };

std::string to_string(FunctionalFamily f);
std::vector<FunctionalFamily> all_families();

struct FamilyResult {
  FunctionalFamily family{};
  std::size_t functionals = 0;
  std::size_t mismatches = 0;
};

struct Mismatch {
  std::string functional;
  Rational lhs, rhs;
};

struct IdentityReport {
  std::string identity;
  std::size_t n = 0;
  std::string mu, gamma;
  Rational lhs, rhs;  // total masses (F = 1)
  std::size_t terms = 0;
  std::vector<FamilyResult> families;
  std::vector<Mismatch> mismatches;  // at most a few, for diagnosis
  bool equal = false;

  nlohmann::json to_json() const;
};

/// Both sides of the minimum re-rooting identity over Q-trees with n edges:
///   Q(F(T^, U^) 1{|Delta| = 1, v_m a leaf}) = Q(F(T, U) |leaves| 1{U-underbar > 0}).
struct RerootSides {
  AtomMeasure lhs, rhs;
  std::size_t terms = 0;
};
RerootSides reroot_sides(std::size_t n, const OffspringDistribution& mu, const StepDistribution& gamma,
                         bool closed);

/// Exact check of the identity above, compared on every functional of the
/// requested families.
IdentityReport verify_reroot_identity(std::size_t n, const OffspringDistribution& mu, const StepDistribution& gamma,
                                      const std::vector<FunctionalFamily>& families = all_families());

/// Variant summing over every minimal leaf on the left and using
/// 1{U-underbar >= 0} on the right.
IdentityReport verify_reroot_identity_closed(std::size_t n, const OffspringDistribution& mu,
                                             const StepDistribution& gamma,
                                             const std::vector<FunctionalFamily>& families = all_families());

IdentityReport compare_measures(const AtomMeasure& lhs, const AtomMeasure& rhs,
                                const std::vector<FunctionalFamily>& families);

/// Q^n(F 1{U-underbar > 0}) with root label 0, Q^n = Q(. | |T| = n + 1).
Rational exact_q_positive_expectation(std::size_t n, const OffspringDistribution& mu, const StepDistribution& gamma,
                                      const std::function<double(const SpatialTree<double>&)>& f);

struct WellLabelledCount {
  std::size_t n = 0;
  BigInt count_all;             // root label 1, steps in {-1, 0, 1}
  BigInt count_well_labelled;   // all labels >= 1
  Rational ratio;
  BigInt tutte;                 // (2/(n+2)) (3^n/(n+1)) binom(2n, n)
  bool matches_formulas = false;
};

WellLabelledCount count_well_labelled(std::size_t n);
BigInt tutte_count(std::size_t n);

/// Calls visit for every well-labelled tree with n edges (root label 1).
void for_each_well_labelled(std::size_t n, const std::function<void(const SpatialTree<int>&)>& visit);

/// E[|leaves|] under Pi^n (trees with n + 1 vertices).
Rational exact_leaf_mean(std::size_t n, const OffspringDistribution& mu);

/// Exact law of the labelled tree under PBar^n_x, as an atom measure.
AtomMeasure exact_conditioned_law(std::size_t n, const OffspringDistribution& mu, const StepDistribution& gamma,
                                  const Rational& x, bool strict = true);

}  // namespace condtree
