#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "accrit/curve.hpp"
#include "accrit/extension.hpp"
#include "accrit/modification.hpp"
#include "accrit/tolerances.hpp"

namespace accrit {

struct ZigzagStep {
  double from_param = 0;
  double to_param = 0;
  // Distance between the two chosen sample points.
  double step_distance = 0;
  // Change of the assigned value across the step.
  double delta = 0;
  // How far the step falls short of the ideal |delta| = L * step_distance.
  double slack = 0;
  bool ascending = false;
  // No sample ahead admitted the envelope condition; the walk advanced one
  // sample and took the opposite envelope value instead.
  bool stalled = false;
  bool final_step = false;
};

struct ZigzagResult {
  // Sample indices of the chosen partition, relative to the curve that was
  // walked. The first entry is 0 and the last is curve.size() - 1.
  std::vector<std::size_t> partition;
  std::vector<double> partition_params;
  std::vector<double> values;
  // Input support plus the partition assignments, consistent with `constant`.
  PartialLipschitzFunction extended;
  double constant = 0;
  // constant * distance(curve start, curve end).
  double target = 0;
  double achieved_variation = 0;
  double total_slack = 0;
  std::vector<ZigzagStep> steps;
};

// Walks the curve from start to end, alternating between the upper and lower
// extremal extensions of the support function, so that each step changes the
// assigned value by as close to `constant` times the step distance as the
// sampling grid allows. The resulting variation is at least
// target - total_slack, and the extended function keeps `constant` as a
// Lipschitz bound. Requires constant strictly above the support's own
// Lipschitz constant.
ZigzagResult zigzag(const SampledCurve& curve,
                    const PartialLipschitzFunction& support_fn,
                    double constant);

// One consecutive pair of the chain formed by the curve ends and every sample
// coinciding with a support point, together with the best strictly inner
// working pair found for it. Samples at support points are unusable as
// working endpoints because the envelopes pinch there, so a chain end only
// restricts the search when it is such a sample.
struct SegmentChoice {
  std::size_t outer_begin = 0;
  std::size_t outer_end = 0;
  double outer_gap = 0;
  // Endpoint gap negligible; the segment contributes nothing and is skipped.
  bool zero_gap = false;
  // An inner pair with gap ratio at least sqrt(theta) exists.
  bool selected = false;
  std::size_t begin = 0;
  std::size_t end = 0;
  double inner_gap = 0;
  double ratio = 0;
};

std::vector<SegmentChoice> select_inner_segments(
    const SampledCurve& curve, const PartialLipschitzFunction& support_fn,
    double theta, double preimage_tol = kPreimageTol);

// Strictly increasing constants placed uniformly in the open interval between
// max(support_constant, sqrt(theta) * constant) and constant. Each rung is
// large enough that a zigzag at that rung over a sqrt(theta) fraction of a
// segment still retains a theta fraction of the ideal variation.
std::vector<double> constant_ladder(double support_constant, double constant,
                                    double theta, std::size_t rungs);

struct StagedSegmentRun {
  SegmentChoice segment;
  bool skipped = false;
  // Ladder rung used for the zigzag; zero for skipped segments.
  double constant = 0;
  // theta * L * outer_gap charged to the slack budget when skipped.
  double slack_charge = 0;
  std::optional<ZigzagResult> run;
};

struct StagedResult {
  PartialLipschitzFunction extended;
  double constant = 0;
  double theta = 0;
  std::vector<double> ladder;
  std::vector<StagedSegmentRun> runs;
  // theta * L * distance(curve start, curve end).
  double target = 0;
  double achieved_variation = 0;
  double total_slack = 0;
};

// Splits the curve at support preimages, picks an inner working pair in each
// piece, and runs one zigzag per piece at increasing ladder rungs, each
// extending the function accumulated so far. The combined variation is at
// least target - total_slack. Positive-gap pieces with no admissible inner
// pair raise GridTooCoarseError unless skip_coarse is set, in which case they
// are skipped and charged to the slack.
StagedResult staged_witness(const SampledCurve& curve,
                            const PartialLipschitzFunction& support_fn,
                            double constant, double theta,
                            bool skip_coarse = false);

struct CarrierZigzag {
  // Original curve indices realizing the widest sample pair of the carrier.
  std::size_t diameter_i = 0;
  std::size_t diameter_j = 0;
  double diameter = 0;
  ZigzagResult run;
};

// Zigzag over the carrier subsample between the two kept samples that are
// farthest apart. Partition indices in the result refer to that subsample;
// parameters are original.
CarrierZigzag zigzag_on_carrier(const SampledCurve& curve,
                                const CarrierSet& carrier,
                                const PartialLipschitzFunction& support_fn,
                                double constant);

struct GeneralStagedResult {
  ModificationResult modification;
  // Staged construction over the carrier subsample.
  StagedResult staged;
};

// staged_witness for curves that may revisit points: loops are first removed
// by the piecewise injective modification, then the staged construction runs
// on the kept samples.
GeneralStagedResult staged_witness_general(
    const SampledCurve& curve, const PartialLipschitzFunction& support_fn,
    double constant, double theta, double eq_tol = kEqTol,
    bool skip_coarse = false);

}  // namespace accrit
