#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "accrit/curve.hpp"

namespace accrit {

// The segment [0, 1] traversed at unit speed on the real line.
SampledCurve identity_curve(std::size_t samples);

// Piecewise linear path through the vertices, one parameter unit per piece,
// sampled uniformly over [0, pieces]. Samples landing exactly on a vertex
// reproduce it bit for bit, so revisited vertices coincide exactly.
SampledCurve polyline_curve(const std::vector<Point>& vertices,
                            std::size_t samples);

// Staircase function that climbs from 0 to 1 while rising only on 2^level
// cells of total width (2/3)^level, with steps_per_cell samples per ternary
// cell. Plateau values are exact dyadics, so equal plateaus compare equal.
SampledCurve cantor_curve(unsigned level, std::size_t steps_per_cell);

// Arc covering the given fraction of the unit circle; injective for
// fraction < 1.
SampledCurve circle_curve(double fraction, std::size_t samples);

// The segment [0, 1] measured in the snowflake metric |x - y|^alpha. For
// alpha < 1 the curve has finite length nowhere, a standard negative case.
SampledCurve snowflaked_curve(double alpha, std::size_t samples);

// Cumulative sum of uniform increments in [-1, 1]^dim, scaled by
// 1/sqrt(samples). Deterministic in the seed.
SampledCurve random_walk_curve(std::uint64_t seed, std::size_t samples,
                               std::size_t dim = 2);

}  // namespace accrit
