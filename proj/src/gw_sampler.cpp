#include "condtree/gw_sampler.hpp"

#include <algorithm>
#include <array>
#include <utility>

#include "condtree/error.hpp"

namespace condtree {

namespace {

constexpr std::array<std::pair<Measure, std::string_view>, 8> kMeasureNames{{
    {Measure::Pi, "Pi"},
    {Measure::PiN, "PiN"},
    {Measure::Px, "Px"},
    {Measure::PNx, "PNx"},
    {Measure::PBarNx, "PBarNx"},
    {Measure::Q, "Q"},
    {Measure::QN, "QN"},
    {Measure::QBarN, "QBarN"},
}};

// Whether n + 1 i.i.d. draws from a finite pmf can sum to n.
bool size_reachable(const OffspringDistribution& mu, std::size_t n) {
  if (mu.is_geometric_half()) return true;
  const std::size_t words = n / 64 + 1;
  std::vector<std::uint64_t> reach(words, 0), next(words);
  reach[0] = 1;
  std::vector<std::size_t> support;
  for (std::size_t k = 0; k <= std::min(*mu.max_support(), n); ++k) {
    if (mu.exact_pmf(k) > 0) support.push_back(k);
  }
  for (std::size_t step = 0; step <= n; ++step) {
    std::fill(next.begin(), next.end(), 0);
    for (std::size_t c : support) {
      const std::size_t word_shift = c / 64, bit_shift = c % 64;
      for (std::size_t w = words; w-- > word_shift;) {
        std::uint64_t v = reach[w - word_shift] << bit_shift;
        if (bit_shift && w > word_shift) v |= reach[w - word_shift - 1] >> (64 - bit_shift);
        next[w] |= v;
      }
    }
    if (n % 64 != 63) next.back() &= (std::uint64_t{1} << (n % 64 + 1)) - 1;
    reach.swap(next);
  }
  return (reach[n / 64] >> (n % 64)) & 1;
}

}  // namespace

std::string_view to_string(Measure m) {
  for (const auto& [value, name] : kMeasureNames) {
    if (value == m) return name;
  }
  return "?";
}

Measure parse_measure(std::string_view text) {
  for (const auto& [value, name] : kMeasureNames) {
    if (name == text) return value;
  }
  throw Error(ErrorCode::ParseError, "unknown measure '" + std::string(text) +
                                         "' (expected Pi, PiN, Px, PNx, PBarNx, Q, QN, QBarN)");
}

bool is_size_conditioned(Measure m) {
  return m == Measure::PiN || m == Measure::PNx || m == Measure::PBarNx || m == Measure::QN ||
         m == Measure::QBarN;
}

bool is_spatial(Measure m) { return m != Measure::Pi && m != Measure::PiN; }

void SampleConfig::validate() const {
  if (is_size_conditioned(measure) && !n) {
    throw Error(ErrorCode::InvalidArgument, std::string(to_string(measure)) + " requires n");
  }
  if ((measure == Measure::PBarNx || measure == Measure::QBarN) && x < 0.0) {
    throw Error(ErrorCode::InvalidArgument, "conditioned measures need x >= 0");
  }
  if ((measure == Measure::QN || measure == Measure::QBarN) && n && *n == 0) {
    throw Error(ErrorCode::InvalidArgument, "Q-trees have at least two vertices (n >= 1)");
  }
}

PlaneTree sample_gw(const OffspringDistribution& mu, Rng& rng, std::size_t size_cap) {
  std::vector<std::uint32_t> counts;
  std::size_t open = 1;
  while (open > 0) {
    if (counts.size() >= size_cap) {
      throw Error(ErrorCode::SizeOverflow, "tree exceeded " + std::to_string(size_cap) + " vertices");
    }
    const std::uint32_t c = mu.sample(rng);
    counts.push_back(c);
    open += c;
    --open;
  }
  return PlaneTree::from_preorder(std::move(counts));
}

std::vector<std::uint32_t> cycle_lemma_rotate(std::span<const std::uint32_t> counts) {
  const std::size_t len = counts.size();
  std::int64_t sum = 0, best = 0;
  std::size_t start = 0;
  // Partial sums S_0 .. S_{len-1}; the valid shift starts right after the
  // first index attaining their minimum.
  for (std::size_t j = 0; j + 1 < len; ++j) {
    sum += static_cast<std::int64_t>(counts[j]) - 1;
    if (sum < best) {
      best = sum;
      start = j + 1;
    }
  }
  sum += static_cast<std::int64_t>(counts[len - 1]) - 1;
  if (sum != -1) throw Error(ErrorCode::InvalidPreorder, "Lukasiewicz steps must sum to -1");
  std::vector<std::uint32_t> out;
  out.reserve(len);
  out.insert(out.end(), counts.begin() + static_cast<std::ptrdiff_t>(start), counts.end());
  out.insert(out.end(), counts.begin(), counts.begin() + static_cast<std::ptrdiff_t>(start));
  return out;
}

SizedTreeSampler::SizedTreeSampler(const OffspringDistribution& mu, std::size_t n) : mu_(&mu), n_(n) {
  if (!size_reachable(mu, n)) {
    throw Error(ErrorCode::UnreachableSize, "size " + std::to_string(n + 1) + " has probability 0");
  }
}

std::vector<std::uint32_t> SizedTreeSampler::sample_counts(Rng& rng) const {
  const std::size_t parts = n_ + 1;
  std::vector<std::uint32_t> counts(parts, 0);
  if (n_ == 0) return counts;
  if (mu_->is_geometric_half()) {
    // Stars and bars: n balls and n bars in 2n slots, uniformly arranged.
    std::vector<char> slots(2 * n_, 0);
    std::fill(slots.begin(), slots.begin() + static_cast<std::ptrdiff_t>(n_), 1);
    for (std::size_t i = slots.size() - 1; i > 0; --i) {
      std::swap(slots[i], slots[uniform_below(rng, i + 1)]);
    }
    std::size_t part = 0;
    for (char slot : slots) {
      if (slot) {
        ++counts[part];
      } else {
        ++part;
      }
    }
    return counts;
  }
  for (;;) {
    std::size_t total = 0;
    std::size_t i = 0;
    for (; i < parts && total <= n_; ++i) {
      counts[i] = mu_->sample(rng);
      total += counts[i];
    }
    if (i == parts && total == n_) return counts;
  }
}

PlaneTree SizedTreeSampler::operator()(Rng& rng) const {
  const auto counts = sample_counts(rng);
  return PlaneTree::from_preorder(cycle_lemma_rotate(counts));
}

PlaneTree sample_gw_sized(const OffspringDistribution& mu, std::size_t n, Rng& rng) {
  return SizedTreeSampler(mu, n)(rng);
}

namespace {

PlaneTree plant(const PlaneTree& t) {
  std::vector<std::uint32_t> counts{1};
  counts.insert(counts.end(), t.counts().begin(), t.counts().end());
  return PlaneTree::from_preorder(std::move(counts));
}

}  // namespace

PlaneTree sample_q_sized(const OffspringDistribution& mu, std::size_t n, Rng& rng) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "Q-trees have at least two vertices");
  return plant(sample_gw_sized(mu, n - 1, rng));
}

SpatialTree<double> sample_spatial(const PlaneTree& t, const StepDistribution& gamma, double x, Rng& rng) {
  std::vector<double> labels(t.size());
  labels[0] = x;
  for (std::size_t i = 1; i < t.size(); ++i) labels[i] = labels[t.parent(i)] + gamma.sample(rng);
  return {t, std::move(labels)};
}

std::optional<SpatialTree<double>> positivity_attempt(const SizedTreeSampler& trees, const StepDistribution& gamma,
                                                      double x, Rng& rng, bool strict, bool q_tree) {
  PlaneTree t = q_tree ? plant(trees(rng)) : trees(rng);
  std::vector<double> labels(t.size());
  labels[0] = x;
  for (std::size_t i = 1; i < t.size(); ++i) {
    const double u = labels[t.parent(i)] + gamma.sample(rng);
    if (strict ? !(u > 0.0) : u < 0.0) return std::nullopt;
    labels[i] = u;
  }
  return SpatialTree<double>(std::move(t), std::move(labels));
}

ConditionedSample sample_conditioned(const OffspringDistribution& mu, const StepDistribution& gamma, std::size_t n,
                                     double x, Rng& rng, std::uint64_t max_rejections, bool strict) {
  if (x < 0.0) throw Error(ErrorCode::InvalidArgument, "conditioned sampling needs x >= 0");
  const SizedTreeSampler trees(mu, n);
  for (std::uint64_t attempt = 1; attempt <= max_rejections; ++attempt) {
    if (auto s = positivity_attempt(trees, gamma, x, rng, strict)) return {std::move(*s), attempt};
  }
  throw Error(ErrorCode::RejectionBudgetExhausted,
              std::to_string(max_rejections) + " attempts at n = " + std::to_string(n));
}

ImportanceSample sample_reroot_importance(const OffspringDistribution& mu, const StepDistribution& gamma,
                                          std::size_t n, Rng& rng) {
  auto s = sample_spatial(sample_q_sized(mu, n, rng), gamma, 0.0, rng);
  const auto m = min_label(s, true);
  ImportanceSample out;
  out.weight = 1.0 / static_cast<double>(s.tree.leaf_count());
  out.valid = m.delta.size() == 1 && s.tree.is_leaf(m.first);
  out.tree = out.valid ? reroot_at(s, m.first) : std::move(s);
  return out;
}

SpatialTree<double> sample_measure(const SampleConfig& config, const OffspringDistribution& mu,
                                   const StepDistribution& gamma, Rng& rng) {
  config.validate();
  const std::size_t n = config.n.value_or(0);
  auto unlabelled = [&](PlaneTree t) {
    const std::size_t size = t.size();
    return SpatialTree<double>(std::move(t), std::vector<double>(size, config.x));
  };
  auto rejection = [&](bool q_tree) {
    const SizedTreeSampler trees(mu, q_tree ? n - 1 : n);
    for (std::uint64_t attempt = 0; attempt < config.max_rejections; ++attempt) {
      if (auto s = positivity_attempt(trees, gamma, config.x, rng, config.strict, q_tree)) return std::move(*s);
    }
    throw Error(ErrorCode::RejectionBudgetExhausted, std::to_string(config.max_rejections) + " attempts");
  };
  switch (config.measure) {
    case Measure::Pi: return unlabelled(sample_gw(mu, rng, config.size_cap));
    case Measure::PiN: return unlabelled(sample_gw_sized(mu, n, rng));
    case Measure::Px: return sample_spatial(sample_gw(mu, rng, config.size_cap), gamma, config.x, rng);
    case Measure::PNx: return sample_spatial(sample_gw_sized(mu, n, rng), gamma, config.x, rng);
    case Measure::PBarNx: return rejection(false);
    case Measure::Q: {
      // Root with one child carrying an independent Pi tree.
      std::vector<std::uint32_t> counts{1};
      const auto sub = sample_gw(mu, rng, config.size_cap);
      counts.insert(counts.end(), sub.counts().begin(), sub.counts().end());
      return sample_spatial(PlaneTree::from_preorder(std::move(counts)), gamma, config.x, rng);
    }
    case Measure::QN: return sample_spatial(sample_q_sized(mu, n, rng), gamma, config.x, rng);
    case Measure::QBarN: return rejection(true);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown measure");
}

}  // namespace condtree
