#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "condtree/rational.hpp"
#include "condtree/rng.hpp"

namespace condtree {

/// Critical offspring law mu on {0, 1, 2, ...}.
///
/// Either the geometric law mu(k) = 2^{-k-1} or an explicit finite pmf with
/// exact rational masses. Construction enforces sum 1, mean 1, mu(1) < 1 and
/// positive variance; aperiodicity and exponential moments are reported only.
class OffspringDistribution {
 public:
  static OffspringDistribution geometric_half();
  /// Throws Error(InvalidDistribution).
  static OffspringDistribution from_pmf(std::vector<Rational> pmf);

  bool is_geometric_half() const noexcept { return geometric_; }
  std::string name() const;

  double pmf(std::size_t k) const;
  Rational exact_pmf(std::size_t k) const;
  /// Walk law nu(k) = mu(k + 1), k >= -1.
  double walk_pmf(std::int64_t k) const { return k < -1 ? 0.0 : pmf(static_cast<std::size_t>(k + 1)); }
  /// Largest k with mu(k) > 0; nullopt for infinite support.
  std::optional<std::size_t> max_support() const;
  /// The explicit pmf (empty for the geometric law).
  const std::vector<Rational>& table() const noexcept { return exact_; }

  double mean() const noexcept { return 1.0; }
  double variance() const noexcept { return variance_; }
  double sigma() const;

  bool aperiodic() const noexcept { return aperiodic_; }
  bool exponential_moments() const noexcept { return true; }

  std::uint32_t sample(Rng& rng) const;

 private:
  OffspringDistribution() = default;

  bool geometric_ = false;
  std::vector<Rational> exact_;
  std::vector<double> pmf_;
  std::vector<double> cdf_;
  double variance_ = 0.0;
  bool aperiodic_ = true;
};

/// Symmetric displacement law gamma on the real line.
///
/// Finite atomic laws carry exact rational atoms (needed by the exhaustive
/// verifiers); the Gaussian law is available for Monte Carlo only.
class StepDistribution {
 public:
  struct Atom {
    Rational value;
    Rational mass;
  };

  /// Uniform on {-1, 0, 1}.
  static StepDistribution uniform3();
  /// Uniform on {-1, 1}.
  static StepDistribution plus_minus_one();
  static StepDistribution gaussian(double standard_deviation);
  /// Throws Error(InvalidDistribution) unless symmetric, of total mass 1 and
  /// not the point mass at 0.
  static StepDistribution from_atoms(std::vector<Atom> atoms);

  std::string name() const;
  bool finite() const noexcept { return !gaussian_; }
  bool symmetric() const noexcept { return true; }
  /// x^4 gamma([x, inf)) -> 0; holds for every law this class can represent.
  bool tail_condition() const noexcept { return true; }
  bool integer_valued() const noexcept;
  const std::vector<Atom>& atoms() const noexcept { return atoms_; }

  double variance() const noexcept { return variance_; }
  double rho() const;

  double sample(Rng& rng) const;

 private:
  StepDistribution() = default;

  bool gaussian_ = false;
  std::vector<Atom> atoms_;
  std::vector<double> values_;
  std::vector<double> cdf_;
  double variance_ = 0.0;
  bool equal_masses_ = false;
  std::string name_;
};

}  // namespace condtree
