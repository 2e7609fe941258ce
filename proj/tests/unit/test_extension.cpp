#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include "accrit/errors.hpp"
#include "accrit/extension.hpp"
#include "accrit/metric.hpp"
#include "support/oracles.hpp"

using accrit::ExtensionField;
using accrit::MetricSpace;
using accrit::PartialLipschitzFunction;
using accrit::Point;
using accrit::SupportTooCloseError;
using accrit::index_point;
using accrit::infer_constant;

namespace {

// Random valid metric tables for the oracle comparisons.
std::vector<std::vector<double>> random_table(std::mt19937_64& rng,
                                              std::size_t n) {
  std::uniform_real_distribution<double> dist(0.5, 2.0);
  std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) m[i][j] = m[j][i] = dist(rng);
  return oracle::relaxation_closure(m);
}

}  // namespace

TEST_CASE("partial functions reject conflicting coincident support") {
  auto line = MetricSpace::euclidean(1);
  CHECK_THROWS_AS(
      PartialLipschitzFunction(line, {{0.0}, {0.0}}, {0.0, 1.0}),
      SupportTooCloseError);
  // Coincident points carrying equal values are allowed and kept as given.
  PartialLipschitzFunction dup(line, {{0.0}, {0.0}}, {0.3, 0.3});
  CHECK(dup.size() == 2);

  PartialLipschitzFunction f(line, {{0.0}}, {0.5});
  f.add({0.0}, 0.5);
  CHECK(f.size() == 1);  // coincident with equal value: dropped
  f.add({0.0 + 1e-13}, 0.5);
  CHECK(f.size() == 1);  // within the preimage tolerance: still coincident
  CHECK_THROWS_AS(f.add({0.0}, 0.9), SupportTooCloseError);
  f.add({1.0}, 0.9);
  CHECK(f.size() == 2);
  CHECK_THROWS_AS(f.add({0.5}, std::nan("")), std::invalid_argument);

  CHECK(PartialLipschitzFunction::empty(line).is_empty());
  CHECK(f.support_distance({0.25}) == doctest::Approx(0.25));
  CHECK(PartialLipschitzFunction::empty(line).support_distance({0.25}) ==
        std::numeric_limits<double>::infinity());
}

TEST_CASE("infer_constant is the largest sampled slope") {
  auto line = MetricSpace::euclidean(1);
  PartialLipschitzFunction f(line, {{0.0}, {1.0}}, {0.0, 2.0});
  CHECK(infer_constant(f) == doctest::Approx(2.0));

  PartialLipschitzFunction single(line, {{3.0}}, {7.0});
  CHECK(infer_constant(single) == 0.0);

  CHECK_THROWS_AS(infer_constant(PartialLipschitzFunction::empty(line)),
                  std::invalid_argument);

  // Coincident equal-valued pairs contribute no slope.
  PartialLipschitzFunction dup(line, {{0.0}, {0.0}, {2.0}}, {1.0, 1.0, 0.0});
  CHECK(infer_constant(dup) == doctest::Approx(0.5));

  // Against the pairwise oracle on random tables.
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> val(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::size_t n = 2 + rng() % 5;
    auto space = MetricSpace::table(random_table(rng, n));
    std::vector<Point> pts;
    std::vector<double> vals;
    for (std::size_t i = 0; i < n; ++i) {
      pts.push_back(index_point(i));
      vals.push_back(val(rng));
    }
    PartialLipschitzFunction f2(space, pts, vals);
    CHECK(infer_constant(f2) ==
          doctest::Approx(oracle::max_pairwise_slope(space, pts, vals)));
  }
}

TEST_CASE("extension field construction checks the constant") {
  auto line = MetricSpace::euclidean(1);
  PartialLipschitzFunction f(line, {{0.0}, {1.0}}, {0.0, 2.0});
  CHECK_THROWS_AS(ExtensionField(f, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(ExtensionField(f, -0.5), std::invalid_argument);
  ExtensionField tight(f, 2.0);
  CHECK(tight.support_constant() == doctest::Approx(2.0));
  ExtensionField roomy(f, 3.0);
  CHECK(roomy.constant() == 3.0);

  ExtensionField empty(PartialLipschitzFunction::empty(line), 1.0);
  CHECK(empty.upper({0.0}) == std::numeric_limits<double>::infinity());
  CHECK(empty.lower({0.0}) == -std::numeric_limits<double>::infinity());
  CHECK(empty.support_constant() == 0.0);
  CHECK_THROWS_AS(empty.gap_slack({0.0}), std::invalid_argument);
}

TEST_CASE("envelopes agree with the feasibility-scan oracle") {
  std::mt19937_64 rng(314);
  std::uniform_real_distribution<double> val(-1.0, 1.0);
  std::uniform_real_distribution<double> scale(1.0, 2.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::size_t n = 2 + rng() % 5;
    auto space = MetricSpace::table(random_table(rng, n));
    std::size_t support_size = 1 + rng() % n;
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);

    std::vector<Point> pts;
    std::vector<double> vals;
    for (std::size_t k = 0; k < support_size; ++k) {
      pts.push_back(index_point(order[k]));
      vals.push_back(val(rng));
    }
    PartialLipschitzFunction f(space, pts, vals);
    double constant = pts.size() >= 2 ? infer_constant(f) * scale(rng)
                                      : scale(rng);
    ExtensionField field(f, constant);

    for (std::size_t q = 0; q < n; ++q) {
      Point query = index_point(q);
      std::vector<double> dists;
      for (const Point& s : pts) dists.push_back(space.distance(query, s));
      auto hi = oracle::max_feasible_value(dists, vals, constant);
      auto lo = oracle::min_feasible_value(dists, vals, constant);
      REQUIRE(hi.has_value());
      REQUIRE(lo.has_value());
      CHECK(std::abs(field.upper(query) - *hi) <= 1e-9);
      CHECK(std::abs(field.lower(query) - *lo) <= 1e-9);
      CHECK(field.upper(query) >= field.lower(query) - 1e-9);
      CHECK(field.gap_slack(query) >= -1e-9);
    }
  }
}

TEST_CASE("gap slack measures the excess over the guaranteed floor") {
  // Single support point: the envelope gap equals the floor exactly.
  auto line = MetricSpace::euclidean(1);
  PartialLipschitzFunction f(line, {{0.0}}, {0.0});
  ExtensionField field(f, 1.0);
  CHECK(field.upper({0.37}) == doctest::Approx(0.37));
  CHECK(field.lower({0.37}) == doctest::Approx(-0.37));
  CHECK(field.gap_slack({0.37}) == doctest::Approx(0.0));

  // Two support points with slope 0.6 under constant 1, worked by hand:
  // upper = min(0 + 0.7, 0.6 + 0.8) = 0.7, lower = max(-0.7, -0.2) = -0.2,
  // floor = 2 (1 - 0.6) 0.7 = 0.56, slack = 0.9 - 0.56 = 0.34.
  auto space = MetricSpace::table(
      {{0.0, 1.0, 0.7}, {1.0, 0.0, 0.8}, {0.7, 0.8, 0.0}});
  PartialLipschitzFunction g(space, {index_point(0), index_point(1)},
                             {0.0, 0.6});
  ExtensionField gf(g, 1.0);
  CHECK(gf.support_constant() == doctest::Approx(0.6));
  CHECK(gf.upper(index_point(2)) == doctest::Approx(0.7));
  CHECK(gf.lower(index_point(2)) == doctest::Approx(-0.2));
  CHECK(gf.gap_slack(index_point(2)) == doctest::Approx(0.34));
}

TEST_CASE("extend_at accepts exactly the envelope interval") {
  auto line = MetricSpace::euclidean(1);
  PartialLipschitzFunction f(line, {{0.0}, {1.0}}, {0.0, 0.5});
  ExtensionField field(f, 1.0);

  double up = field.upper({2.0});   // 0.5 + 1.0 = 1.5
  double lo = field.lower({2.0});   // 0.5 - 1.0 = -0.5
  CHECK(up == doctest::Approx(1.5));
  CHECK(lo == doctest::Approx(-0.5));

  auto grown = field.extend_at({2.0}, up);
  CHECK(grown.size() == 3);
  CHECK(infer_constant(grown) <= 1.0 + 1e-9);
  CHECK_THROWS_AS(field.extend_at({2.0}, up + 0.001), std::invalid_argument);
  CHECK_THROWS_AS(field.extend_at({2.0}, lo - 0.001), std::invalid_argument);

  // Repeatedly extending inside the interval never raises the constant.
  auto plane = MetricSpace::euclidean(2);
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> coord(-2.0, 2.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto pf = PartialLipschitzFunction(plane, {{0.0, 0.0}}, {0.0});
  for (int step = 0; step < 15; ++step) {
    ExtensionField ef(pf, 1.0);
    Point x = {coord(rng), coord(rng)};
    double a = ef.lower(x);
    double b = ef.upper(x);
    REQUIRE(b >= a);
    pf = ef.extend_at(x, a + unit(rng) * (b - a));
  }
  CHECK(oracle::max_pairwise_slope(plane, pf.support(), pf.values()) <=
        1.0 + 1e-9);
}
