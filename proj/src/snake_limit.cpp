#include "condtree/snake_limit.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "condtree/error.hpp"

namespace condtree {

std::vector<double> sample_bridge(std::size_t m, Rng& rng) {
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "bridge grid needs m >= 1");
  std::normal_distribution<double> normal(0.0, 1.0 / std::sqrt(static_cast<double>(m)));
  std::vector<double> w(m + 1, 0.0);
  for (std::size_t i = 1; i <= m; ++i) w[i] = w[i - 1] + normal(rng);
  const double end = w[m];
  for (std::size_t i = 0; i <= m; ++i) w[i] -= end * static_cast<double>(i) / static_cast<double>(m);
  w[m] = 0.0;
  return w;
}

std::vector<double> sample_excursion(std::size_t m, Rng& rng) {
  if (m < 2) throw Error(ErrorCode::InvalidArgument, "excursion grid needs m >= 2");
  const auto b = sample_bridge(m, rng);
  const auto k = static_cast<std::size_t>(std::min_element(b.begin(), b.end() - 1) - b.begin());
  std::vector<double> e(m + 1);
  for (std::size_t i = 0; i <= m; ++i) e[i] = b[(k + i) % m] - b[k];
  e[0] = e[m] = 0.0;
  return e;
}

SnakePath sample_snake_head(std::span<const double> e, double r, Rng& rng) {
  if (e.size() < 2 || e.front() != 0.0 || e.back() != 0.0) {
    throw Error(ErrorCode::InvalidArgument, "excursion must start and end at 0");
  }
  for (double x : e) {
    if (!(x >= 0.0)) throw Error(ErrorCode::InvalidArgument, "excursion must be nonnegative");
  }
  SnakePath p;
  p.grid_size = e.size() - 1;
  p.excursion.assign(e.begin(), e.end());
  p.initial = r;
  p.head.reserve(e.size());
  p.head.push_back(r);

  // Breakpoints (height, value) of the current lifetime path, heights strictly
  // increasing; between consecutive breakpoints the path is a Brownian bridge.
  struct Point {
    double height, value;
  };
  std::vector<Point> stack{{0.0, r}};
  std::normal_distribution<double> normal;
  for (std::size_t i = 0; i + 1 < e.size(); ++i) {
    const double low = std::min(e[i], e[i + 1]);
    while (stack.size() > 1 && stack[stack.size() - 2].height >= low) stack.pop_back();
    Point& top = stack.back();
    if (top.height > low) {
      const Point& below = stack[stack.size() - 2];
      const double span = top.height - below.height, a = low - below.height;
      const double mean = below.value + (top.value - below.value) * a / span;
      top = {low, mean + std::sqrt(a * (top.height - low) / span) * normal(rng)};
    }
    const double rise = e[i + 1] - stack.back().height;
    if (rise > 0.0) stack.push_back({e[i + 1], stack.back().value + std::sqrt(rise) * normal(rng)});
    p.head.push_back(stack.back().value);
  }
  return p;
}

SnakePath verwaat_reroot(const SnakePath& p) {
  if (p.initial != 0.0) throw Error(ErrorCode::InvalidArgument, "re-rooting needs a path started at 0");
  const std::size_t m = p.grid_size;
  if (m < 1 || p.head.size() != m + 1 || p.excursion.size() != m + 1) {
    throw Error(ErrorCode::LengthMismatch, "path arrays do not match the grid");
  }
  std::size_t k = 0;
  std::size_t ties = 0;
  for (std::size_t i = 0; i < m; ++i) {
    if (p.head[i] < p.head[k]) {
      k = i;
      ties = 0;
    } else if (i != k && p.head[i] == p.head[k]) {
      ++ties;
    }
  }
  if (ties > 0) throw Error(ErrorCode::NonUniqueMinimum, "head minimum is attained more than once");

  // lo[i] = min of e between k and i (either side), by running minima.
  const auto& e = p.excursion;
  std::vector<double> lo(m + 1);
  lo[k] = e[k];
  for (std::size_t i = k + 1; i <= m; ++i) lo[i] = std::min(lo[i - 1], e[i]);
  for (std::size_t i = k; i-- > 0;) lo[i] = std::min(lo[i + 1], e[i]);

  SnakePath out;
  out.grid_size = m;
  out.initial = 0.0;
  out.head.resize(m + 1);
  out.excursion.resize(m + 1);
  for (std::size_t j = 0; j <= m; ++j) {
    const std::size_t i = (k + j) % m;
    out.head[j] = p.head[i] - p.head[k];
    out.excursion[j] = std::max(0.0, e[k] + e[i] - 2.0 * lo[i]);
  }
  out.head[0] = out.head[m] = 0.0;
  out.excursion[0] = out.excursion[m] = 0.0;
  return out;
}

SnakePath sample_snake(std::size_t m, double r, Rng& rng) { return sample_snake_head(sample_excursion(m, rng), r, rng); }

SnakePath sample_conditioned_snake(std::size_t m, Rng& rng, std::size_t max_regenerations) {
  for (std::size_t attempt = 0;; ++attempt) {
    try {
      return verwaat_reroot(sample_snake(m, 0.0, rng));
    } catch (const Error& err) {
      if (err.code() != ErrorCode::NonUniqueMinimum || attempt >= max_regenerations) throw;
    }
  }
}

double snake_kappa(double sigma, double rho) { return std::sqrt(sigma / 2.0) / rho; }

RescaledPath rescale_discrete(const ContourFunction& c, std::span<const double> v, std::size_t n, double sigma,
                              double rho, std::size_t grid) {
  const std::size_t len = 2 * n + 1;
  if (n == 0 || c.values.size() != len || v.size() != len) {
    throw Error(ErrorCode::LengthMismatch, "contour and label sequences must have 2n + 1 values");
  }
  if (grid == 0) grid = 2 * n;
  RescaledPath out;
  out.sigma = sigma;
  out.rho = rho;
  out.kappa = snake_kappa(sigma, rho);
  const double nd = static_cast<double>(n);
  const double cs = sigma / 2.0 / std::sqrt(nd), vs = out.kappa / std::pow(nd, 0.25);
  out.time.resize(grid + 1);
  out.contour.resize(grid + 1);
  out.spatial.resize(grid + 1);
  for (std::size_t i = 0; i <= grid; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(grid);
    const double x = 2.0 * nd * t;
    auto lo = std::min(static_cast<std::size_t>(std::floor(x)), 2 * n);
    const double frac = x - static_cast<double>(lo);
    const std::size_t hi = std::min(lo + 1, 2 * n);
    const double cv = static_cast<double>(c.values[lo]) * (1 - frac) + static_cast<double>(c.values[hi]) * frac;
    const double vv = v[lo] * (1 - frac) + v[hi] * frac;
    out.time[i] = t;
    out.contour[i] = cs * cv;
    out.spatial[i] = vs * vv;
  }
  return out;
}

double ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw Error(ErrorCode::EmptySample, "both samples must be nonempty");
  std::vector<double> x(a.begin(), a.end()), y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double nx = static_cast<double>(x.size()), ny = static_cast<double>(y.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double t = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == t) ++i;
    while (j < y.size() && y[j] == t) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / nx - static_cast<double>(j) / ny));
  }
  return d;
}

namespace {

Histogram occupation(std::span<const double> z, double origin, double width, std::size_t bins) {
  Histogram h{origin, width, std::vector<double>(bins, 0.0)};
  const double w = 1.0 / static_cast<double>(z.size());
  for (double x : z) {
    auto k = width > 0 ? static_cast<std::size_t>((x - origin) / width) : 0;
    h.mass[std::min(k, bins - 1)] += w;
  }
  return h;
}

}  // namespace

SnakeFunctionals functionals(const SnakePath& p, std::size_t bins) {
  if (p.head.empty()) throw Error(ErrorCode::EmptySample, "path has no grid values");
  if (bins == 0) throw Error(ErrorCode::InvalidArgument, "need at least one bin");
  SnakeFunctionals f;
  auto [lo, hi] = std::minmax_element(p.head.begin(), p.head.end());
  f.inf = *lo;
  f.sup = *hi;
  f.range = f.sup - f.inf;
  // Grid times i/m, i < m, each carry mass 1/m; a single-point path keeps its one value.
  std::span<const double> z(p.head.data(), p.head.size() > 1 ? p.head.size() - 1 : 1);
  const double width = f.range / static_cast<double>(bins);
  f.occupation = occupation(z, f.inf, width, bins);
  std::vector<double> shifted(z.begin(), z.end());
  for (double& x : shifted) x -= f.inf;
  f.shifted_occupation = occupation(shifted, 0.0, width, bins);
  return f;
}

}  // namespace condtree
