#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "condtree/plane_tree.hpp"
#include "condtree/rng.hpp"

namespace condtree {

/// Excursion and head of the Brownian snake at grid times i/m, i = 0..m.
struct SnakePath {
  std::size_t grid_size = 0;
  std::vector<double> excursion;
  std::vector<double> head;
  double initial = 0.0;
};

/// Brownian bridge from 0 to 0 on [0, 1] at times i/m.
std::vector<double> sample_bridge(std::size_t m, Rng& rng);

/// Normalized excursion at times i/m: a bridge rotated cyclically at its
/// argmin and shifted by its minimum. Throws Error(InvalidArgument) if m < 2.
std::vector<double> sample_excursion(std::size_t m, Rng& rng);

/// Head process given the excursion grid values, started at r. Gaussian with
/// cov(Z(s), Z(s')) = min of e between s and s'. Throws Error(InvalidArgument)
/// unless e(0) = e(m) = 0 and e >= 0.
SnakePath sample_snake_head(std::span<const double> e, double r, Rng& rng);

/// Re-roots a path started at 0 at the argmin s* of its head:
/// Zbar(s) = Z({s* + s}) - Z(s*) and
/// ebar(s) = e(s*) + e({s* + s}) - 2 min of e between s* and {s* + s}.
/// Throws Error(NonUniqueMinimum) on ties, Error(InvalidArgument) if r != 0.
SnakePath verwaat_reroot(const SnakePath& p);

/// Fresh (e, Z^0) on an m-grid re-rooted at its minimum; regenerates on ties.
/// Throws Error(NonUniqueMinimum) after `max_regenerations` tied draws.
SnakePath sample_conditioned_snake(std::size_t m, Rng& rng, std::size_t max_regenerations = 16);

/// Fresh (e, Z^r) on an m-grid.
SnakePath sample_snake(std::size_t m, double r, Rng& rng);

struct RescaledPath {
  std::vector<double> time;
  std::vector<double> contour;  // (sigma/2) C(2nt) / n^{1/2}
  std::vector<double> spatial;  // kappa V(2nt) / n^{1/4}
  double sigma = 0.0, rho = 0.0, kappa = 0.0;
};

/// kappa = (1/rho) (sigma/2)^{1/2}.
double snake_kappa(double sigma, double rho);

/// Evaluates the rescaled pair at t = i/grid, i = 0..grid, interpolating
/// linearly between integer times. grid = 0 means grid = 2n. Throws
/// Error(LengthMismatch) unless both sequences have 2n + 1 values.
RescaledPath rescale_discrete(const ContourFunction& c, std::span<const double> v, std::size_t n, double sigma,
                              double rho, std::size_t grid = 0);

/// Two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b|. Throws
/// Error(EmptySample).
double ks_two_sample(std::span<const double> a, std::span<const double> b);

struct Histogram {
  double origin = 0.0;
  double width = 0.0;
  std::vector<double> mass;  // bin k covers [origin + k width, origin + (k+1) width)
};

struct SnakeFunctionals {
  double sup = 0.0, inf = 0.0, range = 0.0;
  /// Grid occupation measure of Z (uniform weight on i = 0..m-1).
  Histogram occupation;
  /// Same for Z - inf Z.
  Histogram shifted_occupation;
};

SnakeFunctionals functionals(const SnakePath& p, std::size_t bins = 32);

}  // namespace condtree
