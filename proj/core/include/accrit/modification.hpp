#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "accrit/curve.hpp"
#include "accrit/tolerances.hpp"

namespace accrit {

// The index set a curve is restricted to after loop removal. `ranges` are the
// kept closed index ranges in ascending order. `holes` records, in removal
// order, each pair (c, d) of kept indices whose sample points coincide and
// whose strictly interior indices were removed. A hole with d = c + 1 removes
// nothing but still separates two kept ranges, which is how loops between
// adjacent equal samples are retired.
class CarrierSet {
 public:
  static CarrierSet full(std::size_t grid_size);

  std::size_t grid_size() const { return grid_size_; }
  const std::vector<std::array<std::size_t, 2>>& ranges() const {
    return ranges_;
  }
  const std::vector<std::array<std::size_t, 2>>& holes() const {
    return holes_;
  }

  bool contains(std::size_t i) const;
  bool is_hole_pair(std::size_t i, std::size_t j) const;
  // All kept indices in ascending order.
  std::vector<std::size_t> indices() const;
  std::size_t kept_count() const;
  // Index of the kept range containing i, if any.
  bool same_range(std::size_t i, std::size_t j) const;

  // Removes the open index interval (c, d) and records it as a hole. Both c
  // and d must be kept and lie in one range.
  void puncture(std::size_t c, std::size_t d);

 private:
  std::size_t grid_size_ = 0;
  std::vector<std::array<std::size_t, 2>> ranges_;
  std::vector<std::array<std::size_t, 2>> holes_;
};

struct ModificationResult {
  CarrierSet carrier;
  // Holes in the order they were punched, same pairs as carrier.holes().
  std::vector<std::array<std::size_t, 2>> removal_log;
  std::size_t removed_count = 0;
};

// Repeatedly finds the widest pair of kept indices within one range whose
// sample points coincide (distance <= eq_tol), preferring the leftmost pair
// on ties, and removes everything strictly between them. The result restricts
// the curve to a set on which every value is taken at most twice, and then
// only at the two ends of a hole.
ModificationResult piecewise_injective_modification(const SampledCurve& curve,
                                                    double eq_tol = kEqTol);

// Continues the same removal process from an existing carrier. Running it on
// the output of piecewise_injective_modification changes nothing.
ModificationResult refine_modification(const SampledCurve& curve,
                                       const CarrierSet& carrier,
                                       double eq_tol = kEqTol);

struct InjectivityReport {
  bool pass = false;
  // Kept index pairs with coinciding sample points that are not hole ends.
  std::vector<std::array<std::size_t, 2>> violations;
  // Largest number of kept indices sharing one sample point.
  std::size_t max_multiplicity = 0;
  // Largest distance between consecutive kept samples. Crossing a hole joins
  // two coinciding points, so this should not exceed the curve oscillation
  // plus eq_tol.
  double max_jump = 0.0;
};

InjectivityReport verify_piecewise_injective(const SampledCurve& curve,
                                             const CarrierSet& carrier,
                                             double eq_tol = kEqTol);

}  // namespace accrit
