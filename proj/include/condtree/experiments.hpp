#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "condtree/distributions.hpp"

namespace condtree {

/// Runs body(i) for i in [0, count) on `workers` threads (0 or 1: inline).
/// Each index is handled exactly once; results must be written by index.
void parallel_for(std::size_t count, std::size_t workers, const std::function<void(std::size_t)>& body);

/// Sample i of a run always draws from make_stream(seed, first_stream + i),
/// so sample sets do not depend on the worker count.
struct SampleRun {
  std::size_t count = 0;
  std::uint64_t seed = 0;
  std::size_t workers = 1;
  std::uint64_t first_stream = 0;
};

/// n^{-1/4} (max V - min V) for the labelled tree under P^n_0.
std::vector<double> tree_range_samples(const OffspringDistribution& mu, const StepDistribution& gamma, std::size_t n,
                                       const SampleRun& run);

struct QuadSamples {
  std::vector<double> radius;    // n^{-1/4} max distance from the root vertex
  std::vector<double> distance;  // n^{-1/4} distance to a uniform vertex other than the root vertex
};
QuadSamples quad_samples(std::size_t n, const SampleRun& run);

struct SnakeSamples {
  std::vector<double> sup, inf, range;
};
/// Functionals of Z^0 (or of the re-rooted pair when `conditioned`).
SnakeSamples snake_samples(std::size_t grid, bool conditioned, const SampleRun& run);

/// Adds an independent uniform(-spacing/2, spacing/2) offset to each value.
std::vector<double> lattice_jitter(std::vector<double> values, double spacing, std::uint64_t seed);

}  // namespace condtree
