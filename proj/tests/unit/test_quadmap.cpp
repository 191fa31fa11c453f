#include <doctest.h>

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "condtree/error.hpp"
#include "condtree/exact_enum.hpp"
#include "condtree/quadmap.hpp"
#include "condtree/rng.hpp"

using namespace condtree;

namespace {

SpatialTree<int> wl(std::vector<std::uint32_t> counts, std::vector<int> labels) {
  return {PlaneTree::from_preorder(counts), std::move(labels)};
}

// Relabels darts by a random permutation; the rooted map is unchanged.
PlanarQuadrangulation shuffled(const PlanarQuadrangulation& q, Rng& rng) {
  const std::uint32_t m = static_cast<std::uint32_t>(q.darts());
  std::vector<std::uint32_t> perm(m);
  for (std::uint32_t i = 0; i < m; ++i) perm[i] = i;
  for (std::uint32_t i = m; i > 1; --i) std::swap(perm[i - 1], perm[uniform_below(rng, i)]);
  std::vector<std::uint32_t> sigma(m), alpha(m);
  for (std::uint32_t d = 0; d < m; ++d) {
    sigma[perm[d]] = perm[q.sigma(d)];
    alpha[perm[d]] = perm[q.alpha(d)];
  }
  return PlanarQuadrangulation::from_rotation(sigma, alpha, perm[q.root_dart()]);
}

// Independent BFS on an adjacency list rebuilt from the darts.
std::vector<std::size_t> bfs_oracle(const PlanarQuadrangulation& q) {
  std::vector<std::set<std::uint32_t>> adj(q.vertices());
  for (std::uint32_t d = 0; d < q.darts(); ++d) adj[q.origin(d)].insert(q.origin(q.alpha(d)));
  std::vector<std::size_t> dist(q.vertices(), 1u << 30);
  std::deque<std::uint32_t> queue{q.root_vertex()};
  dist[q.root_vertex()] = 0;
  while (!queue.empty()) {
    auto v = queue.front();
    queue.pop_front();
    for (auto w : adj[v]) {
      if (dist[w] > dist[v] + 1) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

}  // namespace

TEST_SUITE("quadmap") {
  TEST_CASE("single edge trees") {
    auto q = cvs_build(wl({1, 0}, {1, 2}));
    CHECK(q.faces() == 1);
    CHECK(q.vertices() == 3);
    CHECK(q.root_vertex() == 2);
    auto d = distances_from_root(q);
    CHECK(d == std::vector<std::size_t>{1, 2, 0});
    auto p = distance_profile(q);
    CHECK(p.radius == 2);
    CHECK(p.counts == std::map<std::size_t, std::size_t>{{0, 1}, {1, 1}, {2, 1}});

    auto flat = cvs_build(wl({1, 0}, {1, 1}));
    CHECK(distances_from_root(flat) == std::vector<std::size_t>{1, 1, 0});
    CHECK(distance_profile(flat).radius == 1);
    CHECK(canonical_code(q) != canonical_code(flat));
  }

  TEST_CASE("rescaled profile has unit mass") {
    auto q = cvs_build(wl({2, 0, 1, 0}, {1, 2, 1, 2}));
    auto atoms = distance_profile(q).rescaled(3);
    double mass = 0;
    for (auto [x, w] : atoms) {
      CHECK(x > 0);
      mass += w;
    }
    CHECK(mass == doctest::Approx(1.0));
  }

  TEST_CASE("bad labels") {
    CHECK_THROWS_AS(cvs_build(wl({1, 0}, {2, 3})), Error);
    CHECK_THROWS_AS(cvs_build(wl({1, 0}, {1, 0})), Error);
    CHECK_THROWS_AS(cvs_build(wl({1, 0}, {1, 3})), Error);
    CHECK_THROWS_AS(cvs_build(SpatialTree<int>(PlaneTree::from_preorder({0}), {1})), Error);
    SpatialTree<double> frac(PlaneTree::from_preorder({1, 0}), {1.0, 1.5});
    CHECK_THROWS_AS(cvs_build(frac), Error);
  }

  TEST_CASE("rotation validation") {
    // Single edge with two darts: one face of degree 2.
    CHECK_THROWS_AS(PlanarQuadrangulation::from_rotation({1, 0}, {1, 0}, 0), Error);
    CHECK_THROWS_AS(PlanarQuadrangulation::from_rotation({0, 0, 1, 2}, {1, 0, 3, 2}, 0), Error);
    CHECK_THROWS_AS(PlanarQuadrangulation::from_rotation({1, 2, 3, 0}, {0, 1, 2, 3}, 0), Error);
    auto q = cvs_build(wl({1, 0}, {1, 2}));
    CHECK_NOTHROW(PlanarQuadrangulation::from_rotation(
        [&] {
          std::vector<std::uint32_t> s;
          for (std::uint32_t d = 0; d < 4; ++d) s.push_back(q.sigma(d));
          return s;
        }(),
        {1, 0, 3, 2}, 1));
  }

  TEST_CASE("bijection properties for small n") {
    for (std::size_t n = 1; n <= 5; ++n) {
      std::set<std::string> codes;
      std::size_t trees = 0;
      for_each_well_labelled(n, [&](const SpatialTree<int>& t) {
        ++trees;
        auto q = cvs_build(t);
        REQUIRE(q.faces() == n);
        REQUIRE(q.vertices() == n + 2);
        auto d = distances_from_root(q);
        REQUIRE(d == bfs_oracle(q));
        for (std::size_t v = 0; v <= n; ++v) REQUIRE(d[v] == static_cast<std::size_t>(t.labels[v]));
        for (auto& face : q.face_orbits()) REQUIRE(face.size() == 4);
        auto back = cvs_inverse(q);
        REQUIRE(back.tree == t.tree);
        REQUIRE(back.labels == t.labels);
        codes.insert(canonical_code(q));
      });
      CHECK(trees == tutte_count(n));
      CHECK(codes.size() == tutte_count(n));
    }
  }

  TEST_CASE("code ignores dart numbering") {
    Rng rng = make_stream(7, 0);
    for_each_well_labelled(4, [&](const SpatialTree<int>& t) {
      auto q = cvs_build(t);
      auto r = shuffled(q, rng);
      REQUIRE(canonical_code(r) == canonical_code(q));
      auto back = cvs_inverse(r);
      REQUIRE(back.tree == t.tree);
      REQUIRE(back.labels == t.labels);
    });
  }

  TEST_CASE("re-rooting changes the code") {
    auto q = cvs_build(wl({1, 1, 0}, {1, 2, 3}));
    std::vector<std::uint32_t> s, a;
    for (std::uint32_t d = 0; d < q.darts(); ++d) {
      s.push_back(q.sigma(d));
      a.push_back(q.alpha(d));
    }
    std::set<std::string> codes;
    for (std::uint32_t r = 0; r < q.darts(); ++r) codes.insert(canonical_code(PlanarQuadrangulation::from_rotation(s, a, r)));
    CHECK(codes.size() > 1);
    CHECK(codes.count(canonical_code(q)) == 1);
  }

  TEST_CASE("uniform sampler") {
    Rng rng = make_stream(11, 0);
    std::map<std::string, std::size_t> freq;
    const std::size_t draws = 60000;
    for (std::size_t i = 0; i < draws; ++i) ++freq[canonical_code(sample_uniform_quad(2, rng))];
    CHECK(freq.size() == 9);
    const double p = 1.0 / 9, se = std::sqrt(p * (1 - p) / draws);
    for (auto& [code, c] : freq) CHECK(std::abs(static_cast<double>(c) / draws - p) < 4.5 * se);
    CHECK_THROWS_AS(sample_uniform_quad(0, rng), Error);
  }

  TEST_CASE("json round trip") {
    auto q = cvs_build(wl({2, 1, 0, 0}, {1, 2, 1, 1}));
    auto j = to_json(q);
    CHECK(j["n"] == 3);
    auto back = quad_from_json(j);
    CHECK(canonical_code(back) == canonical_code(q));
    CHECK(quad_from_json(nlohmann::json::parse(j.dump())) == back);
    auto broken = j;
    broken["alpha"][0] = {0, 0};
    CHECK_THROWS_AS(quad_from_json(broken), Error);
    CHECK_THROWS_AS(quad_from_json(nlohmann::json::object()), Error);
  }
}
