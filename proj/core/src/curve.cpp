#include "accrit/curve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace accrit {

SampledCurve::SampledCurve(MetricSpace space, std::vector<double> params,
                           std::vector<Point> points)
    : space_(std::move(space)),
      params_(std::move(params)),
      points_(std::move(points)),
      oscillation_(0.0) {
  if (params_.size() < 2)
    throw std::invalid_argument("curve needs at least two samples");
  if (points_.size() != params_.size())
    throw std::invalid_argument("curve has " + std::to_string(params_.size()) +
                                " parameters but " +
                                std::to_string(points_.size()) + " points");
  for (std::size_t i = 0; i < params_.size(); ++i) {
    if (!std::isfinite(params_[i]))
      throw std::invalid_argument("curve parameters must be finite");
    if (i > 0 && !(params_[i] > params_[i - 1]))
      throw std::invalid_argument(
          "curve parameters must be strictly increasing (violated at index " +
          std::to_string(i) + ")");
    space_.validate_point(points_[i]);
  }
  for (std::size_t i = 0; i + 1 < points_.size(); ++i)
    oscillation_ =
        std::max(oscillation_, space_.distance(points_[i], points_[i + 1]));
}

const Point& SampledCurve::point(std::size_t i) const {
  if (i >= points_.size())
    throw std::out_of_range("curve point index " + std::to_string(i) +
                            " out of range");
  return points_[i];
}

double SampledCurve::param(std::size_t i) const {
  if (i >= params_.size())
    throw std::out_of_range("curve parameter index " + std::to_string(i) +
                            " out of range");
  return params_[i];
}

double SampledCurve::point_distance(std::size_t i, std::size_t j) const {
  return space_.distance(point(i), point(j));
}

SampledCurve SampledCurve::slice(std::size_t i, std::size_t j) const {
  if (j >= params_.size() || i >= j)
    throw std::invalid_argument("curve slice [" + std::to_string(i) + ", " +
                                std::to_string(j) + "] is not a valid range");
  return SampledCurve(
      space_, std::vector<double>(params_.begin() + i, params_.begin() + j + 1),
      std::vector<Point>(points_.begin() + i, points_.begin() + j + 1));
}

std::optional<std::size_t> SampledCurve::locate_param(double t,
                                                      double tol) const {
  auto it = std::lower_bound(params_.begin(), params_.end(), t - tol);
  if (it == params_.end() || std::abs(*it - t) > tol) return std::nullopt;
  return static_cast<std::size_t>(it - params_.begin());
}

double SampledCurve::max_param_step() const {
  double m = 0.0;
  for (std::size_t i = 0; i + 1 < params_.size(); ++i)
    m = std::max(m, params_[i + 1] - params_[i]);
  return m;
}

double SampledCurve::min_param_step() const {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < params_.size(); ++i)
    m = std::min(m, params_[i + 1] - params_[i]);
  return m;
}

SampledCurve subsample(const SampledCurve& curve,
                       const std::vector<std::size_t>& indices) {
  if (indices.size() < 2)
    throw std::invalid_argument("subsample needs at least two indices");
  std::vector<double> params;
  std::vector<Point> points;
  params.reserve(indices.size());
  points.reserve(indices.size());
  for (std::size_t k = 0; k < indices.size(); ++k) {
    if (k > 0 && indices[k] <= indices[k - 1])
      throw std::invalid_argument(
          "subsample indices must be strictly increasing");
    params.push_back(curve.param(indices[k]));
    points.push_back(curve.point(indices[k]));
  }
  return SampledCurve(curve.space(), std::move(params), std::move(points));
}

}  // namespace accrit
