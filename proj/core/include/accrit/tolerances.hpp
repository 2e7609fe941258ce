#pragma once

// Central numeric tolerances. Everything that compares floating-point
// quantities for equality or feasibility goes through one of these, so the
// behaviour of the whole library can be audited in one place.

namespace accrit {

// Slack allowed when checking Lipschitz conditions, envelope membership and
// value equality on supports.
inline constexpr double kEqTol = 1e-9;

// Two curve samples closer than this are treated as the same point of the
// underlying space (preimage tests, carrier membership).
inline constexpr double kPreimageTol = 1e-12;

// Default fraction of the ideal variation bound that staged constructions
// must retain.
inline constexpr double kDefaultTheta = 0.9;

}  // namespace accrit
