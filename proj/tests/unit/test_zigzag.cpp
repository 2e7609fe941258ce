#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "accrit/errors.hpp"
#include "accrit/extension.hpp"
#include "accrit/generators.hpp"
#include "accrit/metric.hpp"
#include "accrit/zigzag.hpp"
#include "support/oracles.hpp"

using namespace accrit;

TEST_CASE("zigzag with empty support sweeps straight to the far end") {
  auto curve = identity_curve(101);
  auto support = PartialLipschitzFunction::empty(curve.space());
  auto res = zigzag(curve, support, 1.0);

  CHECK(res.partition == std::vector<std::size_t>{0, 100});
  CHECK(res.values == std::vector<double>{0.0, 1.0});
  CHECK(res.target == doctest::Approx(1.0));
  CHECK(res.achieved_variation == doctest::Approx(1.0));
  CHECK(res.total_slack == doctest::Approx(0.0));
  REQUIRE(res.steps.size() == 1);
  CHECK(res.steps[0].ascending);
  CHECK(!res.steps[0].stalled);
  CHECK(res.steps[0].final_step);
  CHECK(infer_constant(res.extended) == doctest::Approx(1.0));
}

TEST_CASE("a single support point seeds the walk at its lower envelope") {
  auto curve = identity_curve(101);
  PartialLipschitzFunction support(curve.space(), {{0.5}}, {0.0});
  auto res = zigzag(curve, support, 1.0);

  // Start value is 0 - 1 * 0.5; the sweep condition holds all the way to the
  // far end, whose upper envelope is exactly reachable.
  CHECK(res.partition == std::vector<std::size_t>{0, 100});
  CHECK(res.values[0] == doctest::Approx(-0.5));
  CHECK(res.values[1] == doctest::Approx(0.5));
  CHECK(res.achieved_variation == doctest::Approx(1.0));
  CHECK(res.total_slack == doctest::Approx(0.0));
}

TEST_CASE("two support points force a direction change") {
  auto curve = identity_curve(101);
  PartialLipschitzFunction support(curve.space(), {{0.25}, {0.75}},
                                   {0.0, 0.0});
  auto res = zigzag(curve, support, 1.0);

  // Worked by hand: up from -0.25 at 0 to +0.25 at the midpoint (the upper
  // envelope blocks anything beyond), then down to -0.25 at the end.
  CHECK(res.partition == std::vector<std::size_t>{0, 50, 100});
  CHECK(res.values[0] == doctest::Approx(-0.25));
  CHECK(res.values[1] == doctest::Approx(0.25));
  CHECK(res.values[2] == doctest::Approx(-0.25));
  CHECK(res.achieved_variation == doctest::Approx(1.0));
  CHECK(res.total_slack == doctest::Approx(0.0));
  CHECK(res.target == doctest::Approx(1.0));
  CHECK(oracle::max_pairwise_slope(curve.space(), res.extended.support(),
                                   res.extended.values()) <= 1.0 + 1e-9);
}

TEST_CASE("zigzag rejects a constant at or below the support constant") {
  auto curve = identity_curve(11);
  PartialLipschitzFunction support(curve.space(), {{0.0}, {1.0}}, {0.0, 0.8});
  CHECK_THROWS_AS(zigzag(curve, support, 0.8), std::invalid_argument);
  CHECK_THROWS_AS(zigzag(curve, support, 0.5), std::invalid_argument);
}

TEST_CASE("a blocked walk stalls one sample and keeps its guarantee") {
  // Support 0 -> 0.0, 1 -> 0.8 under constant 0.81: the ascent must stop at
  // 0.9, and no further sample admits the descent condition either, so the
  // last step is a stall that climbs onto the pinched envelope at the end.
  auto curve = identity_curve(11);
  PartialLipschitzFunction support(curve.space(), {{0.0}, {1.0}}, {0.0, 0.8});
  auto res = zigzag(curve, support, 0.81);

  CHECK(res.partition == std::vector<std::size_t>{0, 9, 10});
  CHECK(res.values[0] == doctest::Approx(0.0));
  CHECK(res.values[1] == doctest::Approx(0.729));
  CHECK(res.values[2] == doctest::Approx(0.8));
  REQUIRE(res.steps.size() == 2);
  CHECK(!res.steps[0].stalled);
  CHECK(res.steps[1].stalled);
  CHECK(res.achieved_variation >= res.target - res.total_slack - 1e-9);
  CHECK(res.total_slack == doctest::Approx(0.01));
  CHECK(oracle::max_pairwise_slope(curve.space(), res.extended.support(),
                                   res.extended.values()) <= 0.81 + 1e-9);
}

TEST_CASE("zigzag variation bound holds on random table curves") {
  std::mt19937_64 rng(2718);
  std::uniform_real_distribution<double> dist(0.5, 2.0);
  std::uniform_real_distribution<double> coef(-0.3, 0.3);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t n = 6 + rng() % 3;
    std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) m[i][j] = m[j][i] = dist(rng);
    auto space = MetricSpace::table(oracle::relaxation_closure(m));

    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);
    std::size_t walk_len = 4 + rng() % (n - 3);
    std::vector<double> params;
    std::vector<Point> pts;
    for (std::size_t k = 0; k < walk_len; ++k) {
      params.push_back(double(k));
      pts.push_back(index_point(order[k]));
    }
    SampledCurve curve(space, params, pts);

    // Support on the unused indices, with values from a small distance mix so
    // the inferred constant stays below the zigzag constant.
    auto support = PartialLipschitzFunction::empty(space);
    double c0 = coef(rng), c1 = coef(rng);
    for (std::size_t k = walk_len; k < n; ++k) {
      const Point p = index_point(order[k]);
      support.add(p, c0 * space.distance(p, index_point(order[0])) +
                         c1 * space.distance(p, index_point(order[1])));
    }
    auto res = zigzag(curve, support, 1.0);
    CHECK(res.achieved_variation >= res.target - res.total_slack - 1e-9);
    CHECK(res.total_slack >= -1e-9);
    CHECK(oracle::max_pairwise_slope(space, res.extended.support(),
                                     res.extended.values()) <= 1.0 + 1e-9);
    CHECK(oracle::total_variation(res.values) ==
          doctest::Approx(res.achieved_variation));
  }
}

TEST_CASE("inner segment selection avoids support preimages only") {
  auto curve = identity_curve(101);

  // Support away from the curve: both ends are free, the whole span works.
  PartialLipschitzFunction none = PartialLipschitzFunction::empty(curve.space());
  auto plain = select_inner_segments(curve, none, 0.81);
  REQUIRE(plain.size() == 1);
  CHECK(plain[0].outer_begin == 0);
  CHECK(plain[0].outer_end == 100);
  CHECK(plain[0].begin == 0);
  CHECK(plain[0].end == 100);
  CHECK(plain[0].ratio == doctest::Approx(1.0));
  CHECK(plain[0].selected);

  // Support sitting on the start sample: the inner pair must step off it.
  PartialLipschitzFunction at_start(curve.space(), {{0.0}}, {0.0});
  auto pinned = select_inner_segments(curve, at_start, 0.81);
  REQUIRE(pinned.size() == 1);
  CHECK(pinned[0].begin == 1);
  CHECK(pinned[0].end == 100);
  CHECK(pinned[0].ratio == doctest::Approx(0.99));
  CHECK(pinned[0].selected);

  // Support on an interior sample splits the curve into two segments.
  PartialLipschitzFunction mid(curve.space(), {{0.5}}, {0.0});
  auto split = select_inner_segments(curve, mid, 0.81);
  REQUIRE(split.size() == 2);
  CHECK(split[0].outer_begin == 0);
  CHECK(split[0].outer_end == 50);
  CHECK(split[0].begin == 0);
  CHECK(split[0].end == 49);
  CHECK(split[0].ratio == doctest::Approx(0.98));
  CHECK(split[1].begin == 51);
  CHECK(split[1].end == 100);
  CHECK(split[1].ratio == doctest::Approx(0.98));
  CHECK(split[0].selected);
  CHECK(split[1].selected);
}

TEST_CASE("segments with coinciding ends are marked zero gap") {
  auto loop = polyline_curve({{0.0}, {1.0}, {0.0}}, 101);
  auto none = PartialLipschitzFunction::empty(loop.space());
  auto segs = select_inner_segments(loop, none, 0.5);
  REQUIRE(segs.size() == 1);
  CHECK(segs[0].zero_gap);
  CHECK(!segs[0].selected);
}

TEST_CASE("constant ladder sits between the floor and the target") {
  auto one = constant_ladder(0.0, 1.0, 0.81, 1);
  REQUIRE(one.size() == 1);
  CHECK(one[0] == doctest::Approx(0.95));

  auto three = constant_ladder(1.0, 2.0, 0.25, 3);
  REQUIRE(three.size() == 3);
  CHECK(three[0] == doctest::Approx(1.25));
  CHECK(three[1] == doctest::Approx(1.5));
  CHECK(three[2] == doctest::Approx(1.75));
  for (std::size_t i = 0; i + 1 < three.size(); ++i)
    CHECK(three[i] < three[i + 1]);

  CHECK_THROWS_AS(constant_ladder(0.0, 1.0, 0.81, 0), std::invalid_argument);
  CHECK_THROWS_AS(constant_ladder(2.0, 1.0, 0.5, 1), std::invalid_argument);
  CHECK_THROWS_AS(constant_ladder(0.0, 1.0, 1.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(constant_ladder(0.0, 1.0, 0.0, 1), std::invalid_argument);
}

TEST_CASE("staged construction on the identity keeps most of the variation") {
  auto curve = identity_curve(101);
  auto none = PartialLipschitzFunction::empty(curve.space());
  auto res = staged_witness(curve, none, 1.0, 0.81);

  REQUIRE(res.ladder.size() == 1);
  CHECK(res.ladder[0] == doctest::Approx(0.95));
  CHECK(res.target == doctest::Approx(0.81));
  CHECK(res.achieved_variation == doctest::Approx(0.95));
  CHECK(res.total_slack == doctest::Approx(0.0));
  REQUIRE(res.runs.size() == 1);
  CHECK(!res.runs[0].skipped);
  CHECK(res.runs[0].constant == doctest::Approx(0.95));
  CHECK(infer_constant(res.extended) <= 1.0 + 1e-9);
}

TEST_CASE("a grid too coarse to host an inner pair is reported or skipped") {
  // Three samples with both ends pinned by support leave no inner pair.
  std::vector<Point> pts = {{0.0}, {0.5}, {1.0}};
  SampledCurve curve(MetricSpace::euclidean(1), {0.0, 0.5, 1.0}, pts);
  PartialLipschitzFunction support(curve.space(), {{0.0}, {1.0}}, {0.0, 0.9});

  try {
    staged_witness(curve, support, 1.0, 0.81);
    FAIL("expected GridTooCoarseError");
  } catch (const GridTooCoarseError& e) {
    CHECK(e.gap_index == 0);
    CHECK(e.best_ratio == 0.0);
    CHECK(e.required == doctest::Approx(0.9));
  }

  auto skipped = staged_witness(curve, support, 1.0, 0.81, true);
  REQUIRE(skipped.runs.size() == 1);
  CHECK(skipped.runs[0].skipped);
  CHECK(skipped.runs[0].slack_charge == doctest::Approx(0.81));
  CHECK(skipped.total_slack == doctest::Approx(0.81));
  CHECK(skipped.achieved_variation == 0.0);
}

TEST_CASE("staged witness over a curve with a loop removes it first") {
  auto curve = polyline_curve({{0.0}, {1.0}, {0.0}, {2.0}}, 301);
  auto none = PartialLipschitzFunction::empty(curve.space());
  auto res = staged_witness_general(curve, none, 1.0, 0.5);

  CHECK(res.modification.removed_count == 199);
  CHECK(res.staged.target == doctest::Approx(1.0));  // 0.5 * 1 * 2
  CHECK(res.staged.achieved_variation >=
        res.staged.target - res.staged.total_slack - 1e-9);
  CHECK(res.staged.achieved_variation > 1.2);
  CHECK(oracle::max_pairwise_slope(curve.space(),
                                   res.staged.extended.support(),
                                   res.staged.extended.values()) <=
        1.0 + 1e-9);
}

TEST_CASE("carrier zigzag spans the widest kept pair") {
  auto curve = polyline_curve({{0.0}, {1.0}, {0.0}, {2.0}}, 301);
  auto mod = piecewise_injective_modification(curve);
  auto none = PartialLipschitzFunction::empty(curve.space());
  auto cz = zigzag_on_carrier(curve, mod.carrier, none, 1.0);

  CHECK(cz.diameter == doctest::Approx(2.0));
  CHECK(cz.diameter_i == 0);
  CHECK(cz.diameter_j == 300);
  CHECK(cz.run.target == doctest::Approx(2.0));
  CHECK(cz.run.achieved_variation >= cz.run.target - cz.run.total_slack - 1e-9);
  // Partition parameters are original-curve parameters.
  CHECK(cz.run.partition_params.front() == doctest::Approx(0.0));
  CHECK(cz.run.partition_params.back() == doctest::Approx(3.0));
}
