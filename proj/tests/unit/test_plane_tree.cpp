#include <doctest.h>

#include <set>

#include "condtree/error.hpp"
#include "condtree/plane_tree.hpp"

using namespace condtree;

namespace {

const std::vector<std::uint32_t> kEightVertex{2, 3, 0, 2, 0, 0, 0, 0};

// Independent contour: recursive walk over Vertex paths.
void walk(const PlaneTree& t, const Vertex& v, std::vector<std::int64_t>& out) {
  const std::size_t i = t.require(v);
  out.push_back(static_cast<std::int64_t>(v.depth()));
  for (std::uint32_t j = 1; j <= t.child_count(i); ++j) {
    walk(t, v.child(j), out);
    out.push_back(static_cast<std::int64_t>(v.depth()));
  }
}

}  // namespace

TEST_SUITE("plane_tree") {
  TEST_CASE("build_tree examples") {
    CHECK(build_tree({0}).size() == 1);
    const auto cherry = build_tree({2, 0, 0});
    CHECK(cherry.size() == 3);
    CHECK(cherry.index_of(Vertex{1}) == 1u);
    CHECK(cherry.index_of(Vertex{2}) == 2u);
    const auto eight = build_tree(kEightVertex);
    std::vector<std::string> names;
    for (std::size_t i = 0; i < eight.size(); ++i) names.push_back(eight.vertex_at(i).to_string());
    CHECK(names == std::vector<std::string>{"()", "(1)", "(1,1)", "(1,2)", "(1,2,1)", "(1,2,2)", "(1,3)", "(2)"});
  }

  TEST_CASE("build_tree rejects invalid preorder") {
    for (auto bad : std::vector<std::vector<std::uint32_t>>{{}, {1}, {0, 0}, {2, 0}, {1, 0, 0}}) {
      CHECK_THROWS_AS(build_tree(bad), Error);
    }
    try {
      build_tree({0, 0});
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::InvalidPreorder);
    }
  }

  TEST_CASE("contour examples") {
    CHECK(contour_of(PlaneTree()).values == std::vector<std::int64_t>{0});
    CHECK(contour_of(build_tree({2, 0, 0})).values == std::vector<std::int64_t>{0, 1, 0, 1, 0});
    CHECK(contour_of(build_tree(kEightVertex)).values ==
          std::vector<std::int64_t>{0, 1, 2, 1, 2, 3, 2, 3, 2, 1, 2, 1, 0, 1, 0});
    CHECK(tree_of_contour(ContourFunction{{0, 1, 2, 1, 2, 3, 2, 3, 2, 1, 2, 1, 0, 1, 0}}) == build_tree(kEightVertex));
    CHECK(tree_of_contour(ContourFunction{{0}}) == PlaneTree());
    CHECK(tree_of_contour(ContourFunction{{0, 1, 0, 1, 0}}) == build_tree({2, 0, 0}));
  }

  TEST_CASE("tree_of_contour rejects invalid contours") {
    for (auto bad : std::vector<std::vector<std::int64_t>>{{}, {1}, {0, 1}, {0, 2, 0}, {0, -1, 0}, {0, 1, 0, 0}}) {
      CHECK_THROWS_AS(tree_of_contour(ContourFunction{bad}), Error);
    }
  }

  TEST_CASE("visit times and leaves") {
    const auto eight = build_tree(kEightVertex);
    CHECK(visit_times(eight, Vertex{1, 2}) == VisitTimes{4, 8});
    CHECK(visit_times(eight, Vertex{1, 1}) == VisitTimes{2, 2});
    CHECK(visit_times(PlaneTree(), Vertex::root()) == VisitTimes{0, 0});
    CHECK_THROWS_AS(visit_times(eight, Vertex{3}), Error);

    std::vector<Vertex> expected{{1, 1}, {1, 2, 1}, {1, 2, 2}, {1, 3}, {2}};
    CHECK(leaves(eight) == expected);
    CHECK(eight.leaf_count() == 5);
    CHECK(leaves(PlaneTree()) == std::vector<Vertex>{Vertex::root()});
    CHECK(leaves(build_tree({2, 0, 0})) == std::vector<Vertex>{{1}, {2}});
  }

  TEST_CASE("subtree and truncation") {
    const auto eight = build_tree(kEightVertex);
    CHECK(subtree_from(eight, Vertex::root()) == eight);
    CHECK(subtree_from(eight, Vertex{1, 2}) == build_tree({2, 0, 0}));
    CHECK(subtree_from(eight, Vertex{2}) == PlaneTree());
    CHECK(truncate_at(eight, Vertex::root()) == PlaneTree());
    CHECK(truncate_at(eight, Vertex{1, 2}) == build_tree({2, 3, 0, 0, 0, 0}));
    CHECK(truncate_at(eight, Vertex{1, 3}) == eight);
    CHECK_THROWS_AS(subtree_from(eight, Vertex{1, 4}), Error);
    CHECK_THROWS_AS(truncate_at(eight, Vertex{7}), Error);
  }

  TEST_CASE("enumeration counts") {
    CHECK(enumerate_trees(1).size() == 1);
    CHECK(enumerate_trees(3).size() == 2);
    CHECK(enumerate_trees(4).size() == 5);
    for (std::size_t n = 1; n <= 9; ++n) {
      const auto trees = enumerate_trees(n);
      CHECK(trees.size() == catalan(n - 1));
      std::set<std::vector<std::uint32_t>> distinct;
      for (const auto& t : trees) {
        distinct.insert({t.counts().begin(), t.counts().end()});
        CHECK(build_tree({t.counts().begin(), t.counts().end()}) == t);
      }
      CHECK(distinct.size() == trees.size());
    }
    // Root of degree one: Catalan(n-2) trees.
    for (std::size_t n = 2; n <= 8; ++n) {
      const auto trees = enumerate_trees(n, true);
      CHECK(trees.size() == catalan(n - 2));
      for (const auto& t : trees) CHECK(t.child_count(0) == 1);
    }
  }

  TEST_CASE("structural properties over all trees up to 8 vertices") {
    for (std::size_t n = 1; n <= 8; ++n) {
      for_each_tree(n, false, [&](const PlaneTree& t) {
        const auto c = contour_of(t);
        CHECK(c.values.size() == 2 * t.size() - 1);
        CHECK(tree_of_contour(c) == t);
        std::vector<std::int64_t> oracle;
        walk(t, Vertex::root(), oracle);
        CHECK(oracle == c.values);

        std::size_t edges = 0;
        for (auto k : t.counts()) edges += k;
        CHECK(edges == t.size() - 1);

        std::size_t previous_first = 0;
        for (std::size_t i = 0; i < t.size(); ++i) {
          const auto vt = visit_times(t, i);
          CHECK(c.values[vt.first] == static_cast<std::int64_t>(t.depth(i)));
          CHECK(c.values[vt.last] == static_cast<std::int64_t>(t.depth(i)));
          CHECK((vt.first == vt.last) == t.is_leaf(i));
          if (i > 0) CHECK(vt.first > previous_first);
          previous_first = vt.first;
          CHECK(t.index_of(t.vertex_at(i)) == i);
          if (i > 0) CHECK(t.vertex_at(i - 1) < t.vertex_at(i));
        }
      });
    }
  }

  TEST_CASE("vertex helpers") {
    CHECK(Vertex::parse("()") == Vertex::root());
    CHECK(Vertex::parse("(1,2,3)") == Vertex{1, 2, 3});
    CHECK(Vertex{1, 2}.to_string() == "(1,2)");
    CHECK(Vertex::root() < Vertex{1});
    CHECK(Vertex{1} < Vertex{1, 1});
    CHECK(Vertex{1, 5} < Vertex{2});
    CHECK(Vertex{1}.is_ancestor_of(Vertex{1, 3}));
    CHECK_FALSE(Vertex{2}.is_ancestor_of(Vertex{1, 3}));
    CHECK(Vertex{1}.concat(Vertex{2, 3}) == Vertex{1, 2, 3});
    CHECK_THROWS_AS(Vertex::parse("(0)"), Error);
  }

  TEST_CASE("csv round trip") {
    const auto eight = build_tree(kEightVertex);
    CHECK(to_csv_line(eight) == "2,3,0,2,0,0,0,0");
    CHECK(parse_csv_line("2,3,0,2,0,0,0,0") == eight);
    CHECK_THROWS_AS(parse_csv_line("2,x"), Error);
  }

  TEST_CASE("catalan") {
    CHECK(catalan(0) == 1);
    CHECK(catalan(5) == 42);
    CHECK(catalan(10) == 16796);
  }
}
