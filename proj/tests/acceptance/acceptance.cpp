// One line per acceptance criterion: "[PASS]" or "[FAIL]", the measured value
// and the pinned threshold. Exit status 1 if any criterion fails.
//
//   acceptance [--only 1,4,7] [--workers W]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "condtree/exact_enum.hpp"
#include "condtree/experiments.hpp"
#include "condtree/gw_sampler.hpp"
#include "condtree/quadmap.hpp"
#include "condtree/snake_limit.hpp"

using namespace condtree;

namespace {

// Pinned tolerances and sample sizes.
constexpr std::size_t kCountsMaxN = 6;
constexpr double kCountsSeconds = 60;
constexpr std::size_t kIdentityMaxN = 5;
constexpr double kIdentitySeconds = 300;
constexpr std::size_t kSizeLawMaxSize = 8;
constexpr std::size_t kMapMaxN = 5;
constexpr std::size_t kPositivityN = 50;
constexpr std::uint64_t kPositivityAttempts = 1'000'000;
constexpr std::uint64_t kPositivityScanAttempts = 200'000;
constexpr double kPositivitySe = 3.0;
constexpr double kPositivitySeconds = 300;
constexpr std::size_t kLeafN = 200;
constexpr std::size_t kLeafSamples = 10'000;
constexpr double kLeafTolerance = 0.02;
constexpr std::size_t kTreeRangeN = 2000;
constexpr std::size_t kSnakeGrid = 4096;
constexpr std::size_t kKsSamples = 10'000;
constexpr double kTreeRangeKs = 0.05;
constexpr std::size_t kQuadN = 500;
constexpr std::size_t kQuadSamples = 5'000;
constexpr double kQuadKs = 0.07;
constexpr std::size_t kImportanceN = 4;
constexpr std::size_t kImportanceSamples = 100'000;
constexpr double kImportanceSe = 3.0;

constexpr std::uint64_t kSeed = 20240611;

int failures = 0;

void report(int id, const char* name, bool pass, const std::string& detail, double seconds) {
  std::printf("criterion %2d %-40s [%s] %s (%.1fs)\n", id, name, pass ? "PASS" : "FAIL", detail.c_str(), seconds);
  std::fflush(stdout);
  if (!pass) ++failures;
}

void note(const std::string& text) {
  std::printf("  note: %s\n", text.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* pattern, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, pattern, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

BigInt pow3(std::size_t n) {
  BigInt out;
  mpz_ui_pow_ui(out.get_mpz_t(), 3, n);
  return out;
}

void exact_counts() {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::string detail;
  for (std::size_t n = 1; n <= kCountsMaxN; ++n) {
    const auto c = count_well_labelled(n);
    const bool all = c.count_all == pow3(n) * BigInt(static_cast<unsigned long>(catalan(n)));
    Rational target(2, static_cast<long>(n + 2));
    target.canonicalize();
    const bool ratio = c.ratio == target;
    const bool tutte = c.count_well_labelled == c.tutte;
    ok = ok && all && ratio && tutte;
    detail += fmt("n=%zu:%s ", n, c.count_well_labelled.get_str().c_str());
  }
  ok = ok && tutte_count(1) == 2 && tutte_count(2) == 9 && tutte_count(3) == 54;
  const double secs = seconds_since(t0);
  report(1, "exact well-labelled counts", ok && secs < kCountsSeconds, detail + fmt("limit %.0fs", kCountsSeconds), secs);
}

void reroot_identities() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto mu = OffspringDistribution::geometric_half();
  bool ok = true;
  std::size_t checks = 0, functionals = 0;
  for (const auto& gamma : {StepDistribution::uniform3(), StepDistribution::plus_minus_one()}) {
    for (std::size_t n = 1; n <= kIdentityMaxN; ++n) {
      for (bool closed : {false, true}) {
        const auto r = closed ? verify_reroot_identity_closed(n, mu, gamma) : verify_reroot_identity(n, mu, gamma);
        ok = ok && r.equal;
        ++checks;
        for (const auto& f : r.families) functionals += f.functionals;
        if (!r.equal) note(fmt("%s n=%zu gamma=%s differs", r.identity.c_str(), n, gamma.name().c_str()));
      }
    }
  }
  const double secs = seconds_since(t0);
  report(2, "re-rooting identities (exact)", ok && secs < kIdentitySeconds,
         fmt("%zu identities, %zu functionals, zero tolerance", checks, functionals), secs);
}

void size_law() {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::size_t rows = 0;
  for (const auto& mu : {OffspringDistribution::geometric_half(),
                         OffspringDistribution::from_pmf({Rational(1, 2), Rational(0), Rational(1, 2)})}) {
    for (const auto& row : verify_size_law(mu, kSizeLawMaxSize)) {
      ok = ok && row.equal && row.enumerated == row.walk;
      ++rows;
    }
  }
  report(3, "size law vs walk hitting time", ok, fmt("%zu sizes up to %zu, zero tolerance", rows, kSizeLawMaxSize),
         seconds_since(t0));
}

void bijection() {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::size_t maps = 0;
  for (std::size_t n = 1; n <= kMapMaxN; ++n) {
    for_each_well_labelled(n, [&](const SpatialTree<int>& t) {
      ++maps;
      try {
        const auto q = cvs_build(t);
        bool good = q.faces() == n && q.vertices() == n + 2;
        for (const auto& face : q.face_orbits()) good = good && face.size() == 4;
        const long euler = static_cast<long>(q.vertices()) - static_cast<long>(q.edges()) + static_cast<long>(q.faces());
        good = good && euler == 2;
        std::map<std::size_t, std::size_t> expected{{0, 1}};
        for (int l : t.labels) ++expected[static_cast<std::size_t>(l)];
        good = good && distance_profile(q).counts == expected;
        const auto back = cvs_inverse(q);
        good = good && back.tree == t.tree && back.labels == t.labels;
        ok = ok && good;
      } catch (const Error& e) {
        ok = false;
        note(e.what());
      }
    });
  }
  report(4, "tree-to-map bijection", ok, fmt("%zu trees, n <= %zu, zero tolerance", maps, kMapMaxN),
         seconds_since(t0));
}

// Fraction of positivity attempts accepted, on `workers` block streams.
double acceptance_rate(std::size_t n, std::uint64_t attempts, std::size_t workers, std::uint64_t stream) {
  const auto mu = OffspringDistribution::geometric_half();
  const auto gamma = StepDistribution::uniform3();
  const SizedTreeSampler trees(mu, n);
  constexpr std::uint64_t block = 10'000;
  const std::size_t blocks = (attempts + block - 1) / block;
  std::vector<std::uint64_t> hits(blocks, 0);
  parallel_for(blocks, workers, [&](std::size_t b) {
    Rng rng = make_stream(kSeed, stream + b);
    const std::uint64_t count = std::min(block, attempts - b * block);
    for (std::uint64_t i = 0; i < count; ++i) hits[b] += positivity_attempt(trees, gamma, 1.0, rng).has_value();
  });
  std::uint64_t total = 0;
  for (auto h : hits) total += h;
  return static_cast<double>(total) / static_cast<double>(attempts);
}

void positivity(std::size_t workers) {
  const auto t0 = std::chrono::steady_clock::now();
  const double p = 2.0 / (kPositivityN + 2.0);
  const double est = acceptance_rate(kPositivityN, kPositivityAttempts, workers, 1000);
  const double se = std::sqrt(p * (1 - p) / static_cast<double>(kPositivityAttempts));
  bool ok = std::abs(est - p) <= kPositivitySe * se;
  std::string detail = fmt("n=50 est=%.5f target=%.5f |diff|/se=%.2f (<=3);", est, p, std::abs(est - p) / se);
  std::uint64_t stream = 1u << 30;
  for (std::size_t n : {20u, 50u, 100u}) {
    const double e = n == kPositivityN ? est : acceptance_rate(n, kPositivityScanAttempts, workers, stream);
    stream += 1u << 20;
    const double scaled = static_cast<double>(n) * e;
    ok = ok && scaled >= 1.0 && scaled <= 3.0;
    detail += fmt(" n*est(%zu)=%.3f", n, scaled);
  }
  const double secs = seconds_since(t0);
  report(5, "positivity probability 2/(n+2)", ok && secs < kPositivitySeconds, detail, secs);
}

void leaf_proportion(std::size_t workers) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto mu = OffspringDistribution::geometric_half();
  const SizedTreeSampler trees(mu, kLeafN);
  std::vector<double> frac(kLeafSamples);
  parallel_for(kLeafSamples, workers, [&](std::size_t i) {
    Rng rng = make_stream(kSeed, (std::uint64_t{2} << 40) + i);
    frac[i] = static_cast<double>(trees(rng).leaf_count()) / static_cast<double>(kLeafN + 1);
  });
  double mean = 0;
  for (double f : frac) mean += f / static_cast<double>(kLeafSamples);
  report(6, "leaf proportion under Pi^n", std::abs(mean - 0.5) <= kLeafTolerance,
         fmt("n=200 mean=%.4f target=0.5 tol=%.2f", mean, kLeafTolerance), seconds_since(t0));
}


void tree_range(std::size_t workers, const SnakeSamples& z) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto mu = OffspringDistribution::geometric_half();
  const auto gamma = StepDistribution::uniform3();
  const double kappa = snake_kappa(mu.sigma(), gamma.rho());
  const auto a = tree_range_samples(mu, gamma, kTreeRangeN, {kKsSamples, kSeed, workers, std::uint64_t{3} << 40});
  std::vector<double> b = z.range;
  for (double& v : b) v /= kappa;
  const double ks = ks_two_sample(a, b);
  report(7, "tree label range vs snake range", ks <= kTreeRangeKs,
         fmt("n=2000 KS=%.4f threshold=%.2f kappa=%.4f", ks, kTreeRangeKs, kappa), seconds_since(t0));
  const double spacing = std::pow(static_cast<double>(kTreeRangeN), -0.25);
  note(fmt("discrete ranges lie on a lattice of spacing %.3f; after uniform jitter over one cell KS=%.4f", spacing,
           ks_two_sample(lattice_jitter(a, spacing, kSeed), b)));
}

void quadrangulations(std::size_t workers, const SnakeSamples& z) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto q = quad_samples(kQuadN, {kQuadSamples, kSeed, workers, std::uint64_t{4} << 40});
  const double secs = seconds_since(t0);
  const double c = std::pow(8.0 / 9.0, 0.25);
  std::vector<double> range = z.range, sup = z.sup;
  for (double& v : range) v *= c;
  for (double& v : sup) v *= c;
  const double spacing = std::pow(static_cast<double>(kQuadN), -0.25);
  const double ks_radius = ks_two_sample(q.radius, range);
  report(8, "map radius vs snake range", ks_radius <= kQuadKs,
         fmt("n=500 KS=%.4f threshold=%.2f", ks_radius, kQuadKs), secs);
  note(fmt("lattice spacing %.3f; after jitter KS=%.4f", spacing,
           ks_two_sample(lattice_jitter(q.radius, spacing, kSeed), range)));
  const double ks_distance = ks_two_sample(q.distance, sup);
  report(9, "distance to uniform vertex vs snake sup", ks_distance <= kQuadKs,
         fmt("n=500 KS=%.4f threshold=%.2f", ks_distance, kQuadKs), 0.0);
  note(fmt("after jitter KS=%.4f", ks_two_sample(lattice_jitter(q.distance, spacing, kSeed + 1), sup)));
}

void importance() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto mu = OffspringDistribution::geometric_half();
  const auto gamma = StepDistribution::uniform3();
  using F = std::function<double(const SpatialTree<double>&)>;
  const std::vector<std::pair<const char*, F>> fs{
      {"1", [](const SpatialTree<double>&) { return 1.0; }},
      {"leaves", [](const SpatialTree<double>& s) { return static_cast<double>(s.tree.leaf_count()); }},
      {"max label", [](const SpatialTree<double>& s) { return *std::max_element(s.labels.begin(), s.labels.end()); }},
      {"height", [](const SpatialTree<double>& s) {
         std::size_t h = 0;
         for (std::size_t v = 0; v < s.size(); ++v) h = std::max(h, s.tree.depth(v));
         return static_cast<double>(h);
       }},
      {"label sum", [](const SpatialTree<double>& s) {
         double t = 0;
         for (double u : s.labels) t += u;
         return t;
       }}};
  std::vector<double> sum(fs.size(), 0), sq(fs.size(), 0);
  Rng rng = make_stream(kSeed, std::uint64_t{5} << 40);
  for (std::size_t i = 0; i < kImportanceSamples; ++i) {
    const auto s = sample_reroot_importance(mu, gamma, kImportanceN, rng);
    for (std::size_t k = 0; k < fs.size(); ++k) {
      const double x = s.valid ? s.weight * fs[k].second(s.tree) : 0.0;
      sum[k] += x;
      sq[k] += x * x;
    }
  }
  bool ok = true;
  std::string detail;
  const double draws = static_cast<double>(kImportanceSamples);
  for (std::size_t k = 0; k < fs.size(); ++k) {
    const double exact = exact_q_positive_expectation(kImportanceN, mu, gamma, fs[k].second).get_d();
    const double mean = sum[k] / draws, se = std::sqrt((sq[k] / draws - mean * mean) / draws);
    const double z = se > 0 ? std::abs(mean - exact) / se : (std::abs(mean - exact) < 1e-12 ? 0.0 : INFINITY);
    ok = ok && z <= kImportanceSe;
    detail += fmt("%s:%.2fse ", fs[k].first, z);
  }
  report(10, "weighted re-rooting estimator", ok, detail + "(<=3)", seconds_since(t0));
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> only;
  std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
  for (int i = 1; i < argc; ++i) {
    if (!std::strcmp(argv[i], "--only") && i + 1 < argc) {
      std::string list = argv[++i];
      for (std::size_t pos = 0; pos < list.size();) {
        const auto comma = list.find(',', pos);
        only.insert(std::stoi(list.substr(pos, comma - pos)));
        pos = comma == std::string::npos ? list.size() : comma + 1;
      }
    } else if (!std::strcmp(argv[i], "--workers") && i + 1 < argc) {
      workers = std::max(1, std::stoi(argv[++i]));
    }
  }
  auto wanted = [&](int id) { return only.empty() || only.count(id) > 0; };

  if (wanted(1)) exact_counts();
  if (wanted(2)) reroot_identities();
  if (wanted(3)) size_law();
  if (wanted(4)) bijection();
  if (wanted(5)) positivity(workers);
  if (wanted(6)) leaf_proportion(workers);
  if (wanted(7) || wanted(8) || wanted(9)) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto z = snake_samples(kSnakeGrid, false, {kKsSamples, kSeed, workers, std::uint64_t{6} << 40});
    note(fmt("%zu snake paths on a %zu-grid in %.1fs", kKsSamples, kSnakeGrid, seconds_since(t0)));
    if (wanted(7)) tree_range(workers, z);
    if (wanted(8) || wanted(9)) quadrangulations(workers, z);
  }
  if (wanted(10)) importance();

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
