#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "accrit/metric.hpp"

namespace accrit {

// A curve known through finitely many samples: strictly increasing parameter
// values t_0 < ... < t_{n-1} and the corresponding points of a metric space.
// All constructions in this library operate on such samples; statements about
// the underlying curve hold up to the sampling oscillation.
class SampledCurve {
 public:
  SampledCurve(MetricSpace space, std::vector<double> params,
               std::vector<Point> points);

  const MetricSpace& space() const { return space_; }
  const std::vector<double>& params() const { return params_; }
  const std::vector<Point>& points() const { return points_; }
  std::size_t size() const { return params_.size(); }

  double param_start() const { return params_.front(); }
  double param_end() const { return params_.back(); }
  const Point& point(std::size_t i) const;
  double param(std::size_t i) const;

  // Distance between the i-th and j-th sample points.
  double point_distance(std::size_t i, std::size_t j) const;

  // Largest distance between consecutive samples. Bounds how far the curve
  // is known to move between grid points.
  double oscillation() const { return oscillation_; }

  // Subcurve over the inclusive index range [i, j], j > i.
  SampledCurve slice(std::size_t i, std::size_t j) const;

  // Index of the sample whose parameter equals t within tol, if any.
  std::optional<std::size_t> locate_param(double t, double tol) const;

  // Largest and smallest spacing between consecutive parameters.
  double max_param_step() const;
  double min_param_step() const;

 private:
  MetricSpace space_;
  std::vector<double> params_;
  std::vector<Point> points_;
  double oscillation_;
};

// Curve through the given sample indices only (strictly increasing, at least
// two). Parameters are kept, so variation statements transfer to the original
// parameter interval.
SampledCurve subsample(const SampledCurve& curve,
                       const std::vector<std::size_t>& indices);

}  // namespace accrit
