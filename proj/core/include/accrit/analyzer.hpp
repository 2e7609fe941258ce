#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "accrit/curve.hpp"
#include "accrit/extension.hpp"
#include "accrit/tolerances.hpp"

namespace accrit {

enum class SearchMode { Exact, Greedy };

// A finite collection of sample-index intervals with pairwise disjoint
// interiors (shared endpoints allowed), with its total parameter length and
// the sum of distances between interval endpoint images.
struct IntervalFamily {
  std::vector<std::array<std::size_t, 2>> intervals;
  double total_length = 0;
  double total_gap = 0;
};

struct ModulusResult {
  double delta = 0;
  SearchMode mode = SearchMode::Exact;
  IntervalFamily family;
};

// Largest total endpoint gap over families of total length at most
// delta (plus rounding grace). Exact mode optimizes over all interval
// families via dynamic programming; it requires uniformly spaced parameters
// and throws BudgetGuardError when the table would be too large. Greedy mode
// works on any grid, considering candidate intervals up to a width cap and
// taking them in order of gap per unit length.
ModulusResult ac_modulus(const SampledCurve& curve, double delta,
                         SearchMode mode);

// Sorts intervals and fuses ones sharing an endpoint, recomputing each fused
// interval's gap from its endpoints. Fusing can lower the total gap, but the
// result has strictly separated intervals, as the witness builder needs.
IntervalFamily merge_touching_intervals(const SampledCurve& curve,
                                        IntervalFamily family);

struct ACEntry {
  double delta = 0;
  double best_gap = 0;
  double budget_used = 0;
  IntervalFamily family;
};

struct ACReport {
  double epsilon = 0;
  // True when the best gap at the smallest examined delta still exceeds
  // epsilon, i.e. shrinking the length budget did not shrink the gained gap.
  bool violation = false;
  std::vector<ACEntry> entries;
};

ACReport analyze(const SampledCurve& curve, double epsilon,
                 const std::vector<double>& deltas, SearchMode mode);

struct FamilySearchEntry {
  std::size_t n = 0;
  bool found = false;
  double best_gap = 0;
  // The search was width-capped and may have missed better families.
  bool capped = false;
  IntervalFamily family;
};

// For n = 1..n_cap, a family of total length at most 1/n whose merged total
// gap exceeds epsilon, when one was found. all_found means every n produced
// one, which is the evidence pattern that the curve is not absolutely
// continuous at level epsilon.
struct FamilySearchResult {
  std::vector<FamilySearchEntry> entries;
  bool all_found = false;
  std::size_t n_cap = 0;
};

FamilySearchResult find_violating_families(const SampledCurve& curve,
                                           double epsilon, std::size_t n_cap,
                                           SearchMode mode);

struct CertInterval {
  // Parameter span [t_begin, t_end] of the processed (possibly padded)
  // interval.
  std::array<double, 2> span{0, 0};
  double gap = 0;
  double length = 0;
  // Ladder constant the interval was processed at.
  double constant = 0;
  bool skipped = false;
  std::string note;
  // One parameter list per zigzag run inside the interval; empty when
  // skipped. Values are not stored: they are resolved through the witness.
  std::vector<std::vector<double>> partitions;
  double variation = 0;
  double slack = 0;
};

struct CertFamily {
  std::size_t n = 0;
  double total_length = 0;
  double total_gap = 0;
  double variation_sum = 0;
  double slack = 0;
  std::vector<CertInterval> intervals;
};

// Self-contained evidence that a curve is not absolutely continuous: a
// Lipschitz witness function together with, for every n, an interval family
// of length under 1/n on which the composition with the witness retains
// variation above theta * epsilon (minus the recorded slack).
struct WitnessCertificate {
  int version = 1;
  double epsilon = 0;
  double theta = 0;
  // Constants of the distinct processed intervals, in processing order.
  std::vector<double> ladder;
  double witness_constant = 2.0;
  PartialLipschitzFunction witness;
  std::vector<CertFamily> families;
  std::vector<std::string> log;
};

// Builds one witness function covering every family of the search result.
// Distinct intervals (after padding each side by at most one sample where
// that preserves the endpoint gap) are processed once, left to right, at
// constants 2 - 1/i, and families that share an interval share its partition
// and variation. Intervals whose construction fails are skipped, logged, and
// charged to the family slack. Requires search.all_found.
WitnessCertificate build_global_witness(const SampledCurve& curve,
                                        const FamilySearchResult& search,
                                        double epsilon, double theta);

struct VerifyFailure {
  std::string check;
  std::string detail;
};

struct VerifyResult {
  bool pass = false;
  std::vector<VerifyFailure> failures;
};

// Recomputes everything the certificate claims against the curve: structural
// integrity ("structure"), the witness Lipschitz bound ("lipschitz"), family
// length budgets ("family-length"), interval disjointness
// ("family-disjoint"), stored versus recomputed variation
// ("variation-mismatch"), and the retained variation margin
// ("variation-bound"). All failures are collected, not just the first.
VerifyResult verify_certificate(const SampledCurve& curve,
                                const WitnessCertificate& cert);

struct ProbeTrial {
  std::uint64_t seed = 0;
  double support_constant = 0;
  // Largest slope of the composition between consecutive samples.
  double composite_constant = 0;
  std::vector<double> best_gaps;
};

struct ProbeReport {
  std::vector<double> deltas;
  std::vector<ProbeTrial> trials;
  std::vector<double> max_gap_per_delta;
};

// Samples random Lipschitz functions on the curve's space, composes each with
// the curve, and measures the composition's modulus at the given length
// budgets. For an absolutely continuous curve the modulus stays within the
// function's constant times the budget. Passing `injected` replaces the
// random functions with a fixed extension field.
ProbeReport composition_probe(const SampledCurve& curve, std::size_t trials,
                              std::uint64_t seed,
                              const std::vector<double>& deltas,
                              SearchMode mode,
                              const ExtensionField* injected = nullptr);

}  // namespace accrit
