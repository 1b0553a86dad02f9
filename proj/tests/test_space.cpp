// Copyright 2026 The Metgov Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "metgov/errors.hpp"
#include "metgov/space.hpp"
#include "oracles.hpp"
#include "properties.hpp"

using namespace metgov;

TEST_CASE("metric axioms hold across the roster") {
  props::PropReport r = props::metric_axioms(2026, 400);
  for (const auto& n : r.notes) INFO(n);
  CHECK(r.pass());
  CHECK(r.trials == 7 * 400);
}

TEST_CASE("swap distance matches breadth-first search") {
  PermutationSpace p4(4);
  std::vector<Point> all = p4.enumerate_all();
  REQUIRE(all.size() == 24);
  for (const Point& a : all)
    for (const Point& b : all) {
      std::vector<int> av(a.perm.begin(), a.perm.end());
      std::vector<int> bv(b.perm.begin(), b.perm.end());
      CHECK(p4.dist(a, b) == oracles::bfs_swap_distance(av, bv));
    }

  PermutationSpace p5(5);
  Rng rng(77);
  for (int t = 0; t < 200; ++t) {
    Point a = p5.sample(rng), b = p5.sample(rng);
    std::vector<int> av(a.perm.begin(), a.perm.end());
    std::vector<int> bv(b.perm.begin(), b.perm.end());
    CHECK(p5.dist(a, b) == oracles::bfs_swap_distance(av, bv));
  }
}

TEST_CASE("weighted edit distance matches Dijkstra") {
  StringSpace ab("ab", 3);
  std::vector<Point> all = ab.enumerate_all();
  REQUIRE(all.size() == 15);  // 1 + 2 + 4 + 8
  for (const Point& a : all)
    for (const Point& b : all) {
      double want = oracles::dijkstra_edit_distance(a.str, b.str, "ab", 3);
      CHECK(ab.dist(a, b) == doctest::Approx(want).epsilon(1e-12));
    }

  StringSpace abc("abc", 2);
  for (const Point& a : abc.enumerate_all())
    for (const Point& b : abc.enumerate_all()) {
      double want = oracles::dijkstra_edit_distance(a.str, b.str, "abc", 2);
      CHECK(abc.dist(a, b) == doctest::Approx(want).epsilon(1e-12));
    }
}

TEST_CASE("swap weight scales with the length cap") {
  CHECK(StringSpace("ab", 3).swap_weight() == doctest::Approx(1.0 / 9));
  CHECK(StringSpace("ab", 4).swap_weight() == doctest::Approx(1.0 / 16));
  // One adjacent transposition costs exactly the swap weight.
  StringSpace sp("ab", 3);
  CHECK(sp.dist(Point::text("ab"), Point::text("ba")) == doctest::Approx(1.0 / 9));
  CHECK(sp.dist(Point::text("aab"), Point::text("aba")) == doctest::Approx(1.0 / 9));
  // Never cheaper to delete + reinsert.
  CHECK(sp.dist(Point::text("abb"), Point::text("bba")) == doctest::Approx(2.0 / 9));
}

TEST_CASE("edit path realises the distance step by step") {
  StringSpace sp("ab", 3);
  Rng rng(404);
  for (int t = 0; t < 200; ++t) {
    Point a = sp.sample(rng), b = sp.sample(rng);
    std::vector<std::string> path = sp.edit_path(a.str, b.str);
    REQUIRE(!path.empty());
    CHECK(path.front() == a.str);
    CHECK(path.back() == b.str);
    double total = 0;
    for (size_t i = 0; i + 1 < path.size(); ++i)
      total += sp.dist(Point::text(path[i]), Point::text(path[i + 1]));
    CHECK(total == doctest::Approx(sp.dist(a, b)).epsilon(1e-9));
  }
}

TEST_CASE("bubble-sort geodesic is tight") {
  PermutationSpace p5(5);
  Rng rng(505);
  for (int t = 0; t < 200; ++t) {
    Point a = p5.sample(rng), b = p5.sample(rng);
    std::vector<Point> g = p5.geodesic(a, b);
    double d = p5.dist(a, b);
    REQUIRE(g.size() == static_cast<size_t>(d) + 1);
    CHECK(g.front() == a);
    CHECK(g.back() == b);
    for (size_t i = 0; i + 1 < g.size(); ++i)
      CHECK(p5.dist(g[i], g[i + 1]) == 1.0);  // one adjacent transposition
  }
}

TEST_CASE("permutation midpoints sit at the geodesic floor") {
  PermutationSpace p5(5);
  Rng rng(606);
  for (int t = 0; t < 200; ++t) {
    Point a = p5.sample(rng), b = p5.sample(rng);
    double d = p5.dist(a, b);
    std::vector<Point> mids = p5.midpoint_candidates(a, b, 8);
    if (d < 2) {
      CHECK(mids.empty());
      continue;
    }
    CHECK(!mids.empty());
    CHECK(mids.size() <= 2);
    for (const Point& c : mids) {
      double da = p5.dist(a, c), db = p5.dist(c, b);
      CHECK(da + db == d);  // on a geodesic
      CHECK(std::abs(da - db) <= 1.0);
    }
  }
}

TEST_CASE("subset midpoints stay inside the lattice interval") {
  SubsetSpace sp(std::vector<std::string>{"p", "q", "r", "t", "u"});
  Rng rng(707);
  for (int t = 0; t < 200; ++t) {
    Point a = sp.sample(rng), b = sp.sample(rng);
    double d = sp.dist(a, b);
    for (const Point& c : sp.midpoint_candidates(a, b, 8))
      CHECK(sp.dist(a, c) + sp.dist(c, b) == d);
  }
}

TEST_CASE("euclid2d and simplex offer the segment midpoint") {
  Euclid2DSpace e2;
  Point a = Point::vector({0.2, 0.4}), b = Point::vector({0.6, 0.8});
  std::vector<Point> mids = e2.midpoint_candidates(a, b, 8);
  REQUIRE(!mids.empty());
  bool found = false;
  for (const Point& c : mids)
    if (std::abs(c.vec[0] - 0.4) < 1e-12 && std::abs(c.vec[1] - 0.6) < 1e-12) found = true;
  CHECK(found);

  SimplexSpace s3(3);
  Point p = Point::vector({0.5, 0.3, 0.2}), q = Point::vector({0.1, 0.5, 0.4});
  for (const Point& c : s3.midpoint_candidates(p, q, 8)) {
    CHECK(s3.validate(c).empty());
    CHECK(s3.dist(p, c) + s3.dist(c, q) == doctest::Approx(s3.dist(p, q)).epsilon(1e-9));
  }
}

TEST_CASE("enumerations are complete, canonical, and duplicate-free") {
  auto check_sorted = [](const std::vector<Point>& v) {
    for (size_t i = 0; i + 1 < v.size(); ++i) {
      CHECK(v[i] < v[i + 1]);
    }
  };

  PluralitySpace pl(std::vector<std::string>{"a", "b", "c", "d"});
  std::vector<Point> all = pl.enumerate_all();
  CHECK(all.size() == 5);  // vacancy + four candidates
  CHECK(all.front().is_vacancy());
  check_sorted(all);

  CHECK(PermutationSpace(4).enumerate_all().size() == 24);
  check_sorted(PermutationSpace(4).enumerate_all());

  SubsetSpace su(std::vector<std::string>{"p", "q", "r", "t", "u"});
  CHECK(su.enumerate_all().size() == 32);
  check_sorted(su.enumerate_all());

  CHECK(StringSpace("ab", 3).enumerate_all().size() == 15);
  check_sorted(StringSpace("ab", 3).enumerate_all());

  FiniteTableSpace tb({"x", "y"}, {{0, 1}, {1, 0}});
  CHECK(tb.enumerate_all().size() == 2);

  CHECK_FALSE(Euclid2DSpace().enumerable());
  CHECK_THROWS_AS(Euclid2DSpace().enumerate_all(), ConfigError);
}

TEST_CASE("validation rejects malformed points") {
  // The euclid2d box scopes the sampler only; any finite plane point is legal.
  CHECK(Euclid2DSpace(0, 1).validate(Point::vector({1.5, 0.5})).empty());
  CHECK_FALSE(Euclid2DSpace().validate(Point::vector({0.1, 1.0 / 0.0})).empty());
  CHECK_FALSE(Euclid2DSpace().validate(Point::scalar(0.5)).empty());
  CHECK_FALSE(SimplexSpace(3).validate(Point::vector({0.5, 0.6, -0.1})).empty());
  CHECK_FALSE(SimplexSpace(3).validate(Point::vector({0.3, 0.3, 0.3})).empty());
  CHECK_FALSE(PermutationSpace(4).validate(Point::permutation({0, 1, 1, 2})).empty());
  CHECK_FALSE(PermutationSpace(4).validate(Point::permutation({0, 1, 2})).empty());
  CHECK_FALSE(StringSpace("ab", 3).validate(Point::text("abab")).empty());
  CHECK_FALSE(StringSpace("ab", 3).validate(Point::text("abc")).empty());
  CHECK_FALSE(Scalar1DSpace(0, 1).validate(Point::scalar(1.2)).empty());
  CHECK_FALSE(SubsetSpace({"p", "q"}).validate(Point::subset(5)).empty());
  CHECK_FALSE(PluralitySpace({"a", "b"}).validate(Point::index(2)).empty());
  CHECK(PluralitySpace({"a", "b"}).validate(Point::index(-1)).empty());  // the vacancy
  CHECK(StringSpace("ab", 3).validate(Point::text("")).empty());        // empty text is a point
}

TEST_CASE("table constructor enforces the axioms") {
  CHECK_THROWS_AS(FiniteTableSpace({"x", "y"}, {{0, 1}, {2, 0}}), ConfigError);   // asymmetric
  CHECK_THROWS_AS(FiniteTableSpace({"x", "y"}, {{0, -1}, {-1, 0}}), ConfigError); // negative
  CHECK_THROWS_AS(FiniteTableSpace({"x", "y"}, {{1, 1}, {1, 0}}), ConfigError);   // diagonal
  CHECK_THROWS_AS(FiniteTableSpace({"x", "y"}, {{0, 0}, {0, 0}}), ConfigError);   // indiscrete
  // Triangle violation: d(x,z) = 5 > 1 + 1.
  CHECK_THROWS_AS(
      FiniteTableSpace({"x", "y", "z"}, {{0, 1, 5}, {1, 0, 1}, {5, 1, 0}}),
      ConfigError);
  CHECK(FiniteTableSpace::check_table({{0, 1, 5}, {1, 0, 1}, {5, 1, 0}}).size() >= 1);
  CHECK(FiniteTableSpace::check_table({{0, 1}, {1, 0}}).empty());
}

TEST_CASE("score epsilon reflects the value domain") {
  CHECK(PluralitySpace({"a", "b"}).score_epsilon() == 0.0);
  CHECK(PermutationSpace(4).score_epsilon() == 0.0);
  CHECK(SubsetSpace({"p", "q"}).score_epsilon() == 0.0);
  CHECK(Scalar1DSpace(0, 1).score_epsilon() == 1e-12);
  CHECK(Euclid2DSpace().score_epsilon() == 1e-12);
  CHECK(SimplexSpace(3).score_epsilon() == 1e-12);
  CHECK(StringSpace("ab", 3).score_epsilon() == 1e-12);
}

TEST_CASE("space constructors reject bad shapes") {
  CHECK_THROWS_AS(Scalar1DSpace(1, 0), ConfigError);
  CHECK_THROWS_AS(SimplexSpace(1), ConfigError);
  CHECK_THROWS_AS(PermutationSpace(1), ConfigError);
  CHECK_THROWS_AS(StringSpace("", 3), ConfigError);
  CHECK_THROWS_AS(StringSpace("ab", 0), ConfigError);
  CHECK_THROWS_AS(PluralitySpace(std::vector<std::string>{}), ConfigError);
  CHECK_THROWS_AS(SubsetSpace(std::vector<std::string>{}), ConfigError);
}

TEST_CASE("show renders human-readable points") {
  PluralitySpace pl(std::vector<std::string>{"ada", "bo"});
  CHECK(pl.show(pl.vacancy()) == "_");
  CHECK(pl.show(Point::index(1)) == "bo");
  CHECK(PermutationSpace(3).show(Point::permutation({2, 0, 1})).size() > 0);
  SubsetSpace su(std::vector<std::string>{"p", "q"});
  CHECK(su.show(Point::subset(3)).find("p") != std::string::npos);
}
