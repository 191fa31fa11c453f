#include "condtree/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "condtree/gw_sampler.hpp"
#include "condtree/quadmap.hpp"
#include "condtree/snake_limit.hpp"

namespace condtree {

void parallel_for(std::size_t count, std::size_t workers, const std::function<void(std::size_t)>& body) {
  if (workers <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_lock;
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < count;) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> guard(failure_lock);
        if (!failure) failure = std::current_exception();
        next = count;
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < std::min(workers, count); ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

std::vector<double> tree_range_samples(const OffspringDistribution& mu, const StepDistribution& gamma, std::size_t n,
                                       const SampleRun& run) {
  const SizedTreeSampler trees(mu, n);
  const double scale = std::pow(static_cast<double>(n), -0.25);
  std::vector<double> out(run.count);
  parallel_for(run.count, run.workers, [&](std::size_t i) {
    Rng rng = make_stream(run.seed, run.first_stream + i);
    const auto s = sample_spatial(trees(rng), gamma, 0.0, rng);
    const auto [lo, hi] = std::minmax_element(s.labels.begin(), s.labels.end());
    out[i] = (*hi - *lo) * scale;
  });
  return out;
}

QuadSamples quad_samples(std::size_t n, const SampleRun& run) {
  const double scale = std::pow(static_cast<double>(n), -0.25);
  QuadSamples out{std::vector<double>(run.count), std::vector<double>(run.count)};
  parallel_for(run.count, run.workers, [&](std::size_t i) {
    Rng rng = make_stream(run.seed, run.first_stream + i);
    const auto q = sample_uniform_quad(n, rng);
    const auto d = distances_from_root(q);
    out.radius[i] = static_cast<double>(*std::max_element(d.begin(), d.end())) * scale;
    // Tree vertices are 0..n; the root vertex of the map has id n + 1.
    out.distance[i] = static_cast<double>(d[uniform_below(rng, n + 1)]) * scale;
  });
  return out;
}

SnakeSamples snake_samples(std::size_t grid, bool conditioned, const SampleRun& run) {
  SnakeSamples out{std::vector<double>(run.count), std::vector<double>(run.count), std::vector<double>(run.count)};
  parallel_for(run.count, run.workers, [&](std::size_t i) {
    Rng rng = make_stream(run.seed, run.first_stream + i);
    const auto p = conditioned ? sample_conditioned_snake(grid, rng) : sample_snake(grid, 0.0, rng);
    const auto [lo, hi] = std::minmax_element(p.head.begin(), p.head.end());
    out.sup[i] = *hi;
    out.inf[i] = *lo;
    out.range[i] = *hi - *lo;
  });
  return out;
}

std::vector<double> lattice_jitter(std::vector<double> values, double spacing, std::uint64_t seed) {
  Rng rng = make_stream(seed, 0x6a17);
  for (double& x : values) x += (uniform01(rng) - 0.5) * spacing;
  return values;
}

}  // namespace condtree
