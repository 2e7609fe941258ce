#pragma once

#include <stdexcept>
#include <string>

namespace accrit {

// Two support points are at (numerically) zero distance but carry different
// values, so no Lipschitz function can interpolate them.
class SupportTooCloseError : public std::runtime_error {
 public:
  explicit SupportTooCloseError(const std::string& what)
      : std::runtime_error(what) {}
};

// A staged construction needed an inner segment covering a given fraction of
// an interval's endpoint gap, and the sampling grid is too coarse to provide
// one. Carries enough context to tell the caller which gap failed and by how
// much.
class GridTooCoarseError : public std::runtime_error {
 public:
  GridTooCoarseError(const std::string& what, std::size_t gap_index,
                     double best_ratio, double required)
      : std::runtime_error(what),
        gap_index(gap_index),
        best_ratio(best_ratio),
        required(required) {}

  std::size_t gap_index;
  double best_ratio;
  double required;
};

// An exhaustive search would exceed its configured work budget. Callers that
// can fall back to a heuristic catch this; others let it propagate.
class BudgetGuardError : public std::runtime_error {
 public:
  explicit BudgetGuardError(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace accrit
