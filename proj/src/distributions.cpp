#include "condtree/distributions.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <random>

#include "condtree/error.hpp"

namespace condtree {

OffspringDistribution OffspringDistribution::geometric_half() {
  OffspringDistribution d;
  d.geometric_ = true;
  d.variance_ = 2.0;
  return d;
}

OffspringDistribution OffspringDistribution::from_pmf(std::vector<Rational> pmf) {
  while (!pmf.empty() && pmf.back() == 0) pmf.pop_back();
  if (pmf.empty()) throw Error(ErrorCode::InvalidDistribution, "empty offspring pmf");
  Rational total = 0, mean = 0, second = 0;
  for (std::size_t k = 0; k < pmf.size(); ++k) {
    if (pmf[k] < 0) throw Error(ErrorCode::InvalidDistribution, "negative mass at " + std::to_string(k));
    total += pmf[k];
    mean += pmf[k] * static_cast<long>(k);
    second += pmf[k] * static_cast<long>(k * k);
  }
  if (total != 1) throw Error(ErrorCode::InvalidDistribution, "masses sum to " + to_string(total));
  if (mean != 1) throw Error(ErrorCode::InvalidDistribution, "not critical: mean " + to_string(mean));
  if (pmf.size() > 1 && pmf[1] == 1) throw Error(ErrorCode::InvalidDistribution, "mu(1) must be < 1");
  const Rational variance = second - 1;
  if (variance <= 0) throw Error(ErrorCode::InvalidDistribution, "zero variance");

  OffspringDistribution d;
  d.exact_ = std::move(pmf);
  d.variance_ = variance.get_d();
  double acc = 0.0;
  std::size_t g = 0;
  for (std::size_t k = 0; k < d.exact_.size(); ++k) {
    const double p = d.exact_[k].get_d();
    d.pmf_.push_back(p);
    acc += p;
    d.cdf_.push_back(acc);
    if (d.exact_[k] > 0) g = std::gcd(g, k);
  }
  d.cdf_.back() = 1.0;
  d.aperiodic_ = g == 1;
  return d;
}

std::string OffspringDistribution::name() const {
  if (geometric_) return "geometric-half";
  std::string out = "pmf[";
  for (std::size_t k = 0; k < exact_.size(); ++k) {
    if (k) out += ',';
    out += to_string(exact_[k]);
  }
  return out + "]";
}

double OffspringDistribution::pmf(std::size_t k) const {
  if (geometric_) return std::ldexp(1.0, -static_cast<int>(k) - 1);
  return k < pmf_.size() ? pmf_[k] : 0.0;
}

Rational OffspringDistribution::exact_pmf(std::size_t k) const {
  if (geometric_) {
    Rational q(1);
    mpz_mul_2exp(q.get_den_mpz_t(), q.get_den_mpz_t(), k + 1);
    return q;
  }
  return k < exact_.size() ? exact_[k] : Rational(0);
}

std::optional<std::size_t> OffspringDistribution::max_support() const {
  if (geometric_) return std::nullopt;
  return exact_.size() - 1;
}

double OffspringDistribution::sigma() const { return std::sqrt(variance_); }

std::uint32_t OffspringDistribution::sample(Rng& rng) const {
  if (geometric_) {
    // Number of trailing zero bits of uniform words is geometric(1/2).
    std::uint32_t k = 0;
    for (;;) {
      const std::uint64_t bits = rng();
      if (bits != 0) return k + static_cast<std::uint32_t>(std::countr_zero(bits));
      k += 64;
    }
  }
  const double u = uniform01(rng);
  const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  return static_cast<std::uint32_t>(std::min<std::ptrdiff_t>(it - cdf_.begin(),
                                                             static_cast<std::ptrdiff_t>(cdf_.size()) - 1));
}

StepDistribution StepDistribution::uniform3() {
  auto d = from_atoms({{Rational(-1), Rational(1, 3)}, {Rational(0), Rational(1, 3)}, {Rational(1), Rational(1, 3)}});
  d.name_ = "uniform3";
  return d;
}

StepDistribution StepDistribution::plus_minus_one() {
  auto d = from_atoms({{Rational(-1), Rational(1, 2)}, {Rational(1), Rational(1, 2)}});
  d.name_ = "pm1";
  return d;
}

StepDistribution StepDistribution::gaussian(double standard_deviation) {
  if (!(standard_deviation > 0.0) || !std::isfinite(standard_deviation)) {
    throw Error(ErrorCode::InvalidDistribution, "gaussian steps need a positive standard deviation");
  }
  StepDistribution d;
  d.gaussian_ = true;
  d.variance_ = standard_deviation * standard_deviation;
  d.name_ = "gaussian(" + std::to_string(standard_deviation) + ")";
  return d;
}

StepDistribution StepDistribution::from_atoms(std::vector<Atom> atoms) {
  std::sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) { return a.value < b.value; });
  // Merge repeated values and drop null atoms.
  std::vector<Atom> merged;
  for (auto& a : atoms) {
    if (a.mass < 0) throw Error(ErrorCode::InvalidDistribution, "negative step mass");
    if (a.mass == 0) continue;
    if (!merged.empty() && merged.back().value == a.value) {
      merged.back().mass += a.mass;
    } else {
      merged.push_back(a);
    }
  }
  Rational total = 0, variance = 0;
  for (const auto& a : merged) {
    total += a.mass;
    variance += a.mass * a.value * a.value;
  }
  if (total != 1) throw Error(ErrorCode::InvalidDistribution, "step masses sum to " + to_string(total));
  for (std::size_t i = 0; i < merged.size(); ++i) {
    const auto& mirror = merged[merged.size() - 1 - i];
    if (mirror.value != -merged[i].value || mirror.mass != merged[i].mass) {
      throw Error(ErrorCode::InvalidDistribution, "step law is not symmetric");
    }
  }
  if (variance == 0) throw Error(ErrorCode::InvalidDistribution, "step law is the point mass at 0");

  StepDistribution d;
  d.atoms_ = std::move(merged);
  d.variance_ = variance.get_d();
  double acc = 0.0;
  for (const auto& a : d.atoms_) {
    d.values_.push_back(a.value.get_d());
    acc += a.mass.get_d();
    d.cdf_.push_back(acc);
  }
  d.cdf_.back() = 1.0;
  d.equal_masses_ = std::all_of(d.atoms_.begin(), d.atoms_.end(),
                                [&](const Atom& a) { return a.mass == d.atoms_.front().mass; });
  d.name_ = "atoms{";
  for (std::size_t i = 0; i < d.atoms_.size(); ++i) {
    if (i) d.name_ += ',';
    d.name_ += to_string(d.atoms_[i].value) + ":" + to_string(d.atoms_[i].mass);
  }
  d.name_ += "}";
  return d;
}

std::string StepDistribution::name() const { return name_; }

bool StepDistribution::integer_valued() const noexcept {
  if (gaussian_) return false;
  return std::all_of(atoms_.begin(), atoms_.end(), [](const Atom& a) { return a.value.get_den() == 1; });
}

double StepDistribution::rho() const { return std::sqrt(variance_); }

double StepDistribution::sample(Rng& rng) const {
  if (gaussian_) {
    std::normal_distribution<double> normal(0.0, std::sqrt(variance_));
    return normal(rng);
  }
  if (equal_masses_) return values_[uniform_below(rng, values_.size())];
  const double u = uniform01(rng);
  const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  return values_[static_cast<std::size_t>(
      std::min<std::ptrdiff_t>(it - cdf_.begin(), static_cast<std::ptrdiff_t>(values_.size()) - 1))];
}

}  // namespace condtree
