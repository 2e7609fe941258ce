#include "accrit/zigzag.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "accrit/errors.hpp"

namespace accrit {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double support_constant_of(const PartialLipschitzFunction& f) {
  return f.size() >= 2 ? infer_constant(f) : 0.0;
}

void check_theta(double theta) {
  if (!std::isfinite(theta) || theta <= 0.0 || theta >= 1.0)
    throw std::invalid_argument("theta must lie strictly between 0 and 1");
}

}  // namespace

ZigzagResult zigzag(const SampledCurve& curve,
                    const PartialLipschitzFunction& support_fn,
                    double constant) {
  const MetricSpace& space = curve.space();
  for (const Point& p : support_fn.support()) space.validate_point(p);
  const double support_L = support_constant_of(support_fn);
  if (!std::isfinite(constant) || constant <= support_L) {
    std::ostringstream os;
    os << "zigzag constant " << constant
       << " must strictly exceed the support constant " << support_L;
    throw std::invalid_argument(os.str());
  }
  const double L = constant;
  const std::size_t n = curve.size();

  // Envelopes of the original support at every sample. These stay fixed; the
  // step conditions below are evaluated against them.
  std::vector<double> up0(n, kInf), lo0(n, -kInf);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < support_fn.size(); ++k) {
      double d = space.distance(curve.point(i), support_fn.support()[k]);
      up0[i] = std::min(up0[i], support_fn.values()[k] + L * d);
      lo0[i] = std::max(lo0[i], support_fn.values()[k] - L * d);
    }

  // Working support: original support plus every assignment made so far.
  // Values are always placed inside the working envelopes, which keeps the
  // whole assignment consistent with constant L at every step.
  std::vector<Point> wpts = support_fn.support();
  std::vector<double> wvals = support_fn.values();
  auto up_w = [&](const Point& x) {
    double b = kInf;
    for (std::size_t k = 0; k < wpts.size(); ++k)
      b = std::min(b, wvals[k] + L * space.distance(x, wpts[k]));
    return b;
  };
  auto lo_w = [&](const Point& x) {
    double b = -kInf;
    for (std::size_t k = 0; k < wpts.size(); ++k)
      b = std::max(b, wvals[k] - L * space.distance(x, wpts[k]));
    return b;
  };
  auto add_w = [&](const Point& x, double) -> bool {
    for (std::size_t k = 0; k < wpts.size(); ++k)
      if (space.distance(x, wpts[k]) <= kPreimageTol) return false;
    return true;
  };

  ZigzagResult res{{},
                   {},
                   {},
                   PartialLipschitzFunction(space, support_fn.support(),
                                            support_fn.values()),
                   L,
                   L * curve.point_distance(0, n - 1),
                   0.0,
                   0.0,
                   {}};

  double v0 = wpts.empty() ? 0.0 : lo0[0];
  res.partition.push_back(0);
  res.partition_params.push_back(curve.param(0));
  res.values.push_back(v0);
  if (add_w(curve.point(0), v0)) {
    wpts.push_back(curve.point(0));
    wvals.push_back(v0);
  }

  bool ascending_phase = true;
  std::size_t cur = 0;
  double vcur = v0;
  while (cur + 1 < n) {
    std::size_t found = 0;
    bool have = false;
    for (std::size_t m = n - 1; m > cur; --m) {
      double d = curve.point_distance(cur, m);
      bool ok = ascending_phase ? vcur + L * d <= up0[m] + kEqTol
                                : vcur - L * d >= lo0[m] - kEqTol;
      if (ok) {
        found = m;
        have = true;
        break;
      }
    }
    const bool stalled = !have;
    const std::size_t m = stalled ? cur + 1 : found;
    const Point& x = curve.point(m);
    double lo = lo_w(x);
    double up = up_w(x);
    double value = stalled == ascending_phase ? lo : up;
    value = std::clamp(value, lo, up);
    double dstep = curve.point_distance(cur, m);
    double delta = value - vcur;
    ZigzagStep step;
    step.from_param = curve.param(cur);
    step.to_param = curve.param(m);
    step.step_distance = dstep;
    step.delta = delta;
    step.slack = std::abs(L * dstep - std::abs(delta));
    step.ascending = delta >= 0.0;
    step.stalled = stalled;
    step.final_step = m + 1 == n;
    res.steps.push_back(step);
    res.partition.push_back(m);
    res.partition_params.push_back(curve.param(m));
    res.values.push_back(value);
    res.achieved_variation += std::abs(delta);
    res.total_slack += step.slack;
    if (add_w(x, value)) {
      wpts.push_back(x);
      wvals.push_back(value);
    }
    if (!stalled) ascending_phase = !ascending_phase;
    cur = m;
    vcur = value;
  }

  for (std::size_t k = 0; k < res.partition.size(); ++k)
    res.extended.add(curve.point(res.partition[k]), res.values[k]);
  return res;
}

std::vector<SegmentChoice> select_inner_segments(
    const SampledCurve& curve, const PartialLipschitzFunction& support_fn,
    double theta, double preimage_tol) {
  check_theta(theta);
  const std::size_t n = curve.size();
  std::vector<char> pinned(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    pinned[i] = support_fn.support_distance(curve.point(i)) <= preimage_tol;

  std::vector<std::size_t> chain;
  chain.push_back(0);
  for (std::size_t i = 1; i + 1 < n; ++i)
    if (pinned[i]) chain.push_back(i);
  chain.push_back(n - 1);

  const double required = std::sqrt(theta);
  std::vector<SegmentChoice> out;
  for (std::size_t j = 0; j + 1 < chain.size(); ++j) {
    SegmentChoice ch;
    ch.outer_begin = chain[j];
    ch.outer_end = chain[j + 1];
    ch.outer_gap = curve.point_distance(ch.outer_begin, ch.outer_end);
    if (ch.outer_gap <= kEqTol) {
      ch.zero_gap = true;
      out.push_back(ch);
      continue;
    }
    std::size_t lo = pinned[ch.outer_begin] ? ch.outer_begin + 1 : ch.outer_begin;
    std::size_t hi = pinned[ch.outer_end] ? ch.outer_end - 1 : ch.outer_end;
    double best = -1.0;
    for (std::size_t a = lo; a < hi; ++a)
      for (std::size_t b = a + 1; b <= hi; ++b) {
        double g = curve.point_distance(a, b);
        if (g > best) {
          best = g;
          ch.begin = a;
          ch.end = b;
        }
      }
    if (best >= 0.0) {
      ch.inner_gap = best;
      ch.ratio = best / ch.outer_gap;
      ch.selected = ch.ratio >= required - kEqTol;
    }
    out.push_back(ch);
  }
  return out;
}

std::vector<double> constant_ladder(double support_constant, double constant,
                                    double theta, std::size_t rungs) {
  check_theta(theta);
  if (!std::isfinite(support_constant) || support_constant < 0.0)
    throw std::invalid_argument("support constant must be nonnegative");
  if (rungs == 0) throw std::invalid_argument("ladder needs at least one rung");
  double lb = std::max(support_constant, std::sqrt(theta) * constant);
  if (!std::isfinite(constant) || lb >= constant) {
    std::ostringstream os;
    os << "no room for a ladder between " << lb << " and " << constant;
    throw std::invalid_argument(os.str());
  }
  std::vector<double> out(rungs);
  for (std::size_t k = 0; k < rungs; ++k)
    out[k] = lb + (constant - lb) * static_cast<double>(k + 1) /
                      static_cast<double>(rungs + 1);
  return out;
}

StagedResult staged_witness(const SampledCurve& curve,
                            const PartialLipschitzFunction& support_fn,
                            double constant, double theta, bool skip_coarse) {
  check_theta(theta);
  const double support_L = support_constant_of(support_fn);
  if (!std::isfinite(constant) || constant <= support_L)
    throw std::invalid_argument(
        "staged constant must strictly exceed the support constant");

  auto selection = select_inner_segments(curve, support_fn, theta);
  std::size_t selected = 0;
  for (const auto& ch : selection) selected += ch.selected ? 1 : 0;

  StagedResult res{PartialLipschitzFunction(curve.space(),
                                            support_fn.support(),
                                            support_fn.values()),
                   constant,
                   theta,
                   {},
                   {},
                   theta * constant * curve.point_distance(0, curve.size() - 1),
                   0.0,
                   0.0};
  if (selected > 0)
    res.ladder = constant_ladder(support_L, constant, theta, selected);

  std::size_t rung_index = 0;
  for (std::size_t j = 0; j < selection.size(); ++j) {
    const SegmentChoice& ch = selection[j];
    StagedSegmentRun rec;
    rec.segment = ch;
    if (!ch.selected) {
      if (!ch.zero_gap && !skip_coarse) {
        std::ostringstream os;
        os << "segment " << j << " spans gap " << ch.outer_gap
           << " but its best inner pair covers only a fraction " << ch.ratio
           << " of it, below the required " << std::sqrt(theta);
        throw GridTooCoarseError(os.str(), j, ch.ratio, std::sqrt(theta));
      }
      rec.skipped = true;
      rec.slack_charge = theta * constant * ch.outer_gap;
      res.total_slack += rec.slack_charge;
      res.runs.push_back(std::move(rec));
      continue;
    }
    rec.constant = res.ladder[rung_index++];
    ZigzagResult run =
        zigzag(curve.slice(ch.begin, ch.end), res.extended, rec.constant);
    res.extended = run.extended;
    res.achieved_variation += run.achieved_variation;
    res.total_slack += run.total_slack;
    rec.run = std::move(run);
    res.runs.push_back(std::move(rec));
  }
  return res;
}

CarrierZigzag zigzag_on_carrier(const SampledCurve& curve,
                                const CarrierSet& carrier,
                                const PartialLipschitzFunction& support_fn,
                                double constant) {
  if (carrier.grid_size() != curve.size())
    throw std::invalid_argument("carrier grid size does not match the curve");
  std::vector<std::size_t> kept = carrier.indices();
  std::size_t bi = 0, bj = 1;
  double best = -1.0;
  for (std::size_t a = 0; a < kept.size(); ++a)
    for (std::size_t b = a + 1; b < kept.size(); ++b) {
      double g = curve.point_distance(kept[a], kept[b]);
      if (g > best) {
        best = g;
        bi = a;
        bj = b;
      }
    }
  std::vector<std::size_t> span(kept.begin() + bi, kept.begin() + bj + 1);
  CarrierZigzag out{kept[bi], kept[bj], best,
                    zigzag(subsample(curve, span), support_fn, constant)};
  return out;
}

GeneralStagedResult staged_witness_general(
    const SampledCurve& curve, const PartialLipschitzFunction& support_fn,
    double constant, double theta, double eq_tol, bool skip_coarse) {
  ModificationResult mod = piecewise_injective_modification(curve, eq_tol);
  SampledCurve sub = subsample(curve, mod.carrier.indices());
  StagedResult staged =
      staged_witness(sub, support_fn, constant, theta, skip_coarse);
  return GeneralStagedResult{std::move(mod), std::move(staged)};
}

}  // namespace accrit
