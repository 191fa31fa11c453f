#include <doctest.h>

#include <cmath>

#include "condtree/error.hpp"
#include "condtree/exact_enum.hpp"

using namespace condtree;

namespace {

const auto kGeom = OffspringDistribution::geometric_half();
const auto kUniform3 = StepDistribution::uniform3();
const auto kPm1 = StepDistribution::plus_minus_one();

Rational pow2_inv(unsigned k) {
  Rational q(1);
  mpz_mul_2exp(q.get_den_mpz_t(), q.get_den_mpz_t(), k);
  return q;
}

}  // namespace

TEST_SUITE("exact_enum") {
  TEST_CASE("tree weights") {
    CHECK(tree_weight(PlaneTree(), kGeom) == Rational(1, 2));
    CHECK(tree_weight(build_tree({1, 0}), kGeom) == Rational(1, 8));
    // sum of (N_v + 1) over the eight vertices is 15
    CHECK(tree_weight(build_tree({2, 3, 0, 2, 0, 0, 0, 0}), kGeom) == pow2_inv(15));
    CHECK(q_tree_weight(build_tree({1, 0}), kGeom) == Rational(1, 2));
    CHECK(q_tree_weight(build_tree({2, 0, 0}), kGeom) == 0);
    CHECK_THROWS_AS(for_each_labelling(PlaneTree(), StepDistribution::gaussian(1.0), 0,
                                       [](const std::vector<Rational>&, const Rational&) {}),
                    Error);
  }

  TEST_CASE("labellings carry the product step law") {
    const auto t = build_tree({2, 1, 0, 0});
    Rational total = 0;
    std::size_t count = 0;
    for_each_labelling(t, kUniform3, 1, [&](const std::vector<Rational>& labels, const Rational& w) {
      CHECK(labels[0] == 1);
      CHECK(w == Rational(1, 27));
      total += w;
      ++count;
    });
    CHECK(count == 27);
    CHECK(total == 1);
  }

  TEST_CASE("size law") {
    const auto rows = verify_size_law(kGeom, 8);
    REQUIRE(rows.size() == 8);
    CHECK(rows[0].enumerated == Rational(1, 2));
    CHECK(rows[0].walk == Rational(1, 2));
    CHECK(rows[1].enumerated == Rational(1, 8));
    CHECK(rows[1].walk == Rational(1, 8));
    for (const auto& r : rows) CHECK(r.equal);

    const auto binary = OffspringDistribution::from_pmf({Rational(1, 2), 0, Rational(1, 2)});
    for (const auto& r : verify_size_law(binary, 8)) {
      CHECK(r.equal);
      if (r.size % 2 == 0) CHECK(r.enumerated == 0);
    }
    const auto ternary = OffspringDistribution::from_pmf({Rational(2, 3), 0, 0, Rational(1, 3)});
    for (const auto& r : verify_size_law(ternary, 8)) CHECK(r.equal);
  }

  TEST_CASE("strict re-rooting identity") {
    for (std::size_t n = 1; n <= 5; ++n) {
      const auto r = verify_reroot_identity(n, kGeom, kUniform3);
      CHECK_MESSAGE(r.equal, "n=", n, " ", r.to_json().dump());
      CHECK(r.lhs == r.rhs);
      const auto p = verify_reroot_identity(n, kGeom, kPm1);
      CHECK_MESSAGE(p.equal, "n=", n, " ", p.to_json().dump());
    }
    const auto r3 = verify_reroot_identity(3, kGeom, kUniform3);
    CHECK(r3.terms == 54);
    CHECK(r3.families.size() == all_families().size());
  }

  TEST_CASE("closed re-rooting identity") {
    for (std::size_t n = 1; n <= 5; ++n) {
      CHECK(verify_reroot_identity_closed(n, kGeom, kUniform3).equal);
      CHECK(verify_reroot_identity_closed(n, kGeom, kPm1).equal);
    }
  }

  TEST_CASE("identities hold for a finite offspring law") {
    const auto mu = OffspringDistribution::from_pmf({Rational(1, 4), Rational(1, 2), Rational(1, 4)});
    const auto gamma = StepDistribution::from_atoms(
        {{-2, Rational(1, 6)}, {-1, Rational(1, 6)}, {0, Rational(1, 3)}, {1, Rational(1, 6)}, {2, Rational(1, 6)}});
    for (std::size_t n = 1; n <= 4; ++n) {
      CHECK(verify_reroot_identity(n, mu, gamma).equal);
      CHECK(verify_reroot_identity_closed(n, mu, gamma).equal);
    }
  }

  TEST_CASE("ties make the closed sum strictly larger") {
    for (std::size_t n = 2; n <= 4; ++n) {
      const auto strict = reroot_sides(n, kGeom, kUniform3, false);
      const auto closed = reroot_sides(n, kGeom, kUniform3, true);
      Rational a = 0, b = 0;
      for (const auto& [k, w] : strict.lhs) a += w;
      for (const auto& [k, w] : closed.lhs) b += w;
      CHECK(b > a);
    }
  }

  TEST_CASE("a perturbed measure is detected") {
    auto sides = reroot_sides(3, kGeom, kUniform3, false);
    REQUIRE(!sides.lhs.empty());
    sides.lhs.begin()->second += Rational(1, 1000);
    const auto r = compare_measures(sides.lhs, sides.rhs, all_families());
    CHECK_FALSE(r.equal);
    CHECK_FALSE(r.mismatches.empty());
  }

  TEST_CASE("well-labelled counts") {
    const auto c1 = count_well_labelled(1);
    CHECK(c1.count_all == 3);
    CHECK(c1.count_well_labelled == 2);
    CHECK(c1.ratio == Rational(2, 3));
    const auto c2 = count_well_labelled(2);
    CHECK(c2.count_all == 18);
    CHECK(c2.count_well_labelled == 9);
    CHECK(c2.ratio == Rational(1, 2));
    const auto c3 = count_well_labelled(3);
    CHECK(c3.count_all == 135);
    CHECK(c3.count_well_labelled == 54);
    CHECK(c3.ratio == Rational(2, 5));
    for (std::size_t n = 1; n <= 8; ++n) CHECK(count_well_labelled(n).matches_formulas);
    CHECK(tutte_count(1) == 2);
    CHECK(tutte_count(2) == 9);
    CHECK(tutte_count(3) == 54);
    std::size_t listed = 0;
    for_each_well_labelled(3, [&](const SpatialTree<int>& s) {
      ++listed;
      CHECK(s.root_label() == 1);
      for (int u : s.labels) CHECK(u >= 1);
    });
    CHECK(listed == 54);
  }

  TEST_CASE("leaf mean under the size-conditioned law") {
    for (std::size_t n = 4; n <= 8; ++n) {
      const Rational mean = exact_leaf_mean(n, kGeom);
      CHECK(std::abs(mean.get_d() / static_cast<double>(n + 1) - 0.5) <= 0.1);
    }
    // Uniform plane trees with n edges have (n + 1)/2 leaves on average.
    CHECK(exact_leaf_mean(6, kGeom) == Rational(7, 2));
  }

  TEST_CASE("conditioned law at n = 1") {
    const auto law = exact_conditioned_law(1, kGeom, kUniform3, 1);
    REQUIRE(law.size() == 2);
    for (const auto& [atom, w] : law) CHECK(w == Rational(1, 2));
  }

  TEST_CASE("positive expectation under Q^n") {
    // F = 1 gives Q^n(U-underbar > 0); at n = 1 the only edge must step up.
    CHECK(exact_q_positive_expectation(1, kGeom, kUniform3, [](const SpatialTree<double>&) { return 1.0; }) ==
          Rational(1, 3));
  }
}
