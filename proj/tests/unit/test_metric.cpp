#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "accrit/metric.hpp"
#include "support/oracles.hpp"

using accrit::AxiomReport;
using accrit::GraphEdge;
using accrit::MetricKind;
using accrit::MetricSpace;
using accrit::Point;
using accrit::TableValidation;
using accrit::check_metric_axioms;
using accrit::index_point;

TEST_CASE("euclidean distances and point validation") {
  auto plane = MetricSpace::euclidean(2);
  CHECK(plane.kind() == MetricKind::Euclidean);
  CHECK(plane.dimension() == 2);
  CHECK(plane.point_count() == 0);
  CHECK(plane.distance({0.0, 0.0}, {3.0, 4.0}) == doctest::Approx(5.0));
  CHECK(plane.distance({1.5, -2.0}, {1.5, -2.0}) == 0.0);

  CHECK_THROWS_AS(plane.distance({0.0}, {1.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(plane.validate_point({0.0, 1.0, 2.0}), std::invalid_argument);
  CHECK_THROWS_AS(
      plane.validate_point({0.0, std::numeric_limits<double>::infinity()}),
      std::invalid_argument);
  CHECK_NOTHROW(plane.validate_point({-7.0, 0.25}));

  CHECK_THROWS_AS(MetricSpace::euclidean(0), std::invalid_argument);

  auto line = MetricSpace::euclidean(1);
  CHECK(line.distance({-1.0}, {2.5}) == doctest::Approx(3.5));
}

TEST_CASE("snowflake raises base distances to a power") {
  auto base = MetricSpace::euclidean(1);
  auto half = MetricSpace::snowflake(base, 0.5);
  CHECK(half.kind() == MetricKind::Snowflake);
  CHECK(half.snowflake_alpha() == 0.5);
  CHECK(half.distance({0.0}, {0.25}) == doctest::Approx(0.5));
  CHECK(half.distance({0.0}, {1.0}) == doctest::Approx(1.0));
  CHECK(half.snowflake_base().kind() == MetricKind::Euclidean);

  // alpha = 1 leaves the base metric untouched.
  auto same = MetricSpace::snowflake(base, 1.0);
  CHECK(same.distance({0.0}, {0.3}) == doctest::Approx(0.3));

  CHECK_THROWS_AS(MetricSpace::snowflake(base, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(MetricSpace::snowflake(base, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(MetricSpace::snowflake(base, -0.3), std::invalid_argument);

  // Snowflaking a snowflake composes the exponents.
  auto quarter = MetricSpace::snowflake(half, 0.5);
  CHECK(quarter.distance({0.0}, {1.0 / 16.0}) == doctest::Approx(0.5));

  // The triangle inequality survives the concave distortion.
  std::vector<Point> pts = {{0.0}, {0.1}, {0.45}, {0.8}, {1.3}};
  CHECK(check_metric_axioms(half, pts).pass);
}

TEST_CASE("discrete space separates distinct indices by one") {
  auto five = MetricSpace::discrete(5);
  CHECK(five.point_count() == 5);
  CHECK(five.distance(index_point(2), index_point(2)) == 0.0);
  CHECK(five.distance(index_point(0), index_point(4)) == 1.0);
  CHECK_THROWS_AS(five.distance(index_point(0), index_point(5)),
                  std::invalid_argument);
  CHECK_THROWS_AS(five.validate_point({1.5}), std::invalid_argument);
  CHECK_THROWS_AS(five.validate_point({0.0, 0.0}), std::invalid_argument);
  CHECK_NOTHROW(five.validate_point({4.0}));
}

TEST_CASE("graph distances match exhaustive shortest paths") {
  // Hand-checked path graph: 0 -1.0- 1 -0.5- 2, plus a 2.0 chord 0-2.
  auto path = MetricSpace::graph(
      3, {{0, 1, 1.0}, {1, 2, 0.5}, {0, 2, 2.0}});
  CHECK(path.distance(index_point(0), index_point(2)) == doctest::Approx(1.5));
  CHECK(path.distance(index_point(2), index_point(0)) == doctest::Approx(1.5));
  CHECK(path.distance(index_point(0), index_point(1)) == doctest::Approx(1.0));

  // Random connected graphs against the brute-force simple-path oracle.
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> weight(0.1, 2.0);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t n = 2 + rng() % 5;
    std::vector<GraphEdge> edges;
    std::vector<std::tuple<std::size_t, std::size_t, double>> raw;
    for (std::size_t v = 1; v < n; ++v) {
      std::size_t u = rng() % v;
      double w = weight(rng);
      edges.push_back({u, v, w});
      raw.emplace_back(u, v, w);
    }
    for (std::size_t extra = rng() % 3; extra > 0; --extra) {
      std::size_t u = rng() % n;
      std::size_t v = rng() % n;
      if (u == v) continue;
      double w = weight(rng);
      edges.push_back({u, v, w});
      raw.emplace_back(u, v, w);
    }
    auto space = MetricSpace::graph(n, edges);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        double want =
            i == j ? 0.0 : oracle::exhaustive_shortest_path(n, raw, i, j);
        double got = space.distance(index_point(i), index_point(j));
        CHECK(std::abs(got - want) <= 1e-12);
      }
    }
  }
}

TEST_CASE("graph construction rejects bad input") {
  CHECK_THROWS_AS(MetricSpace::graph(2, {{0, 0, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(MetricSpace::graph(2, {{0, 2, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(MetricSpace::graph(2, {{0, 1, -1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(MetricSpace::graph(2, {{0, 1, 0.0}}), std::invalid_argument);
  // Disconnected: node 2 unreachable.
  CHECK_THROWS_AS(MetricSpace::graph(3, {{0, 1, 1.0}}), std::invalid_argument);
  // Parallel edges keep only the lighter one.
  auto multi = MetricSpace::graph(2, {{0, 1, 3.0}, {1, 0, 1.0}});
  CHECK(multi.distance(index_point(0), index_point(1)) == doctest::Approx(1.0));
}

TEST_CASE("strict tables reject violations and name the failing axiom") {
  std::vector<std::vector<double>> good = {
      {0.0, 1.0, 0.7}, {1.0, 0.0, 0.8}, {0.7, 0.8, 0.0}};
  auto space = MetricSpace::table(good);
  CHECK(space.kind() == MetricKind::Table);
  CHECK(space.distance(index_point(0), index_point(2)) == doctest::Approx(0.7));
  CHECK(space.distance_matrix() == good);

  auto message_of = [](std::vector<std::vector<double>> m) {
    try {
      MetricSpace::table(std::move(m));
      return std::string();
    } catch (const std::invalid_argument& e) {
      return std::string(e.what());
    }
  };

  auto bad = good;
  bad[1][2] += 0.5;
  CHECK(message_of(bad).find("symmetry") != std::string::npos);

  bad = good;
  bad[2][2] = 0.1;
  CHECK(message_of(bad).find("nonzero") != std::string::npos);

  bad = good;
  bad[0][1] = bad[1][0] = 0.0;
  CHECK(message_of(bad).find("not positive") != std::string::npos);

  bad = good;
  bad[0][2] = bad[2][0] = 5.0;
  CHECK(message_of(bad).find("triangle") != std::string::npos);

  CHECK_THROWS_AS(MetricSpace::table({{0.0, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(MetricSpace::table({}), std::invalid_argument);
  std::vector<std::vector<double>> nan_matrix = {
      {0.0, std::nan("")}, {std::nan(""), 0.0}};
  CHECK_THROWS_AS(MetricSpace::table(nan_matrix), std::invalid_argument);
}

TEST_CASE("axiom report localizes the worst violation") {
  std::vector<std::vector<double>> good = {
      {0.0, 1.0, 0.7, 1.2},
      {1.0, 0.0, 0.8, 0.9},
      {0.7, 0.8, 0.0, 1.1},
      {1.2, 0.9, 1.1, 0.0}};
  AxiomReport clean = check_metric_axioms(good);
  CHECK(clean.pass);
  CHECK(clean.max_identity_gap == 0.0);
  CHECK(clean.max_symmetry_gap == 0.0);
  CHECK(clean.max_triangle_excess <= 0.0);
  CHECK(clean.min_offdiagonal == doctest::Approx(0.7));

  auto broken = good;
  broken[1][2] = 1.3;  // asymmetric against broken[2][1] = 0.8
  AxiomReport rep = check_metric_axioms(broken);
  CHECK(!rep.pass);
  CHECK(rep.max_symmetry_gap == doctest::Approx(0.5));
  CHECK(rep.symmetry_pair == std::array<std::size_t, 2>{1, 2});

  broken = good;
  broken[3][3] = 0.25;
  rep = check_metric_axioms(broken);
  CHECK(!rep.pass);
  CHECK(rep.max_identity_gap == doctest::Approx(0.25));
  CHECK(rep.identity_index == 3);

  broken = good;
  broken[0][3] = broken[3][0] = 4.0;
  rep = check_metric_axioms(broken);
  CHECK(!rep.pass);
  // d(0,3) = 4 against the cheapest detour, through 2: 4 - 0.7 - 1.1 = 2.2.
  // Both scan directions see that excess; evaluated from node 3 it comes out
  // one rounding ulp larger, so that orientation is the one reported.
  CHECK(rep.max_triangle_excess == doctest::Approx(2.2));
  CHECK(rep.triangle_triple == std::array<std::size_t, 3>{3, 2, 0});

  broken = good;
  broken[0][1] = broken[1][0] = 0.0;
  rep = check_metric_axioms(broken);
  CHECK(!rep.pass);
  CHECK(rep.min_offdiagonal == 0.0);
  CHECK(rep.min_pair == std::array<std::size_t, 2>{0, 1});

  // A 1x1 matrix has no off-diagonal entries to fail on.
  CHECK(check_metric_axioms({{0.0}}).pass);
}

TEST_CASE("relaxation closure of a random symmetric matrix is a metric") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> dist(0.5, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::size_t n = 3 + rng() % 4;
    std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) m[i][j] = m[j][i] = dist(rng);
    auto closed = oracle::relaxation_closure(m);
    AxiomReport rep = check_metric_axioms(closed);
    CHECK(rep.pass);
    CHECK_NOTHROW(MetricSpace::table(closed));
  }
}

TEST_CASE("sampled axiom check treats point identity positionally") {
  auto plane = MetricSpace::euclidean(2);
  std::vector<Point> distinct = {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}};
  CHECK(check_metric_axioms(plane, distinct).pass);

  // The same point twice reads as a positivity failure between two indices.
  std::vector<Point> duplicated = {{0.0, 0.0}, {1.0, 0.0}, {0.0, 0.0}};
  AxiomReport rep = check_metric_axioms(plane, duplicated);
  CHECK(!rep.pass);
  CHECK(rep.min_offdiagonal == 0.0);
  CHECK(rep.min_pair == std::array<std::size_t, 2>{0, 2});

  CHECK_THROWS_AS(check_metric_axioms(plane, {}), std::invalid_argument);
}
