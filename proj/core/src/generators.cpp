#include "accrit/generators.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace accrit {
namespace {

void require_samples(std::size_t samples) {
  if (samples < 2) {
    throw std::invalid_argument("curve generators need at least two samples");
  }
}

std::vector<double> unit_params(std::size_t samples) {
  std::vector<double> t(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    t[i] = double(i) / double(samples - 1);
  }
  return t;
}

// Value of the level-k staircase at the rational point num/den. den must be
// divisible by 3^k, which keeps every branch decision exact.
double staircase_value(std::size_t num, std::size_t den, unsigned level) {
  if (level == 0) return double(num) / double(den);
  const std::size_t third = den / 3;
  if (num <= third) return 0.5 * staircase_value(num, third, level - 1);
  if (num >= 2 * third) {
    return 0.5 + 0.5 * staircase_value(num - 2 * third, third, level - 1);
  }
  return 0.5;
}

}  // namespace

SampledCurve identity_curve(std::size_t samples) {
  require_samples(samples);
  auto t = unit_params(samples);
  std::vector<Point> pts(samples);
  for (std::size_t i = 0; i < samples; ++i) pts[i] = {t[i]};
  return SampledCurve(MetricSpace::euclidean(1), std::move(t), std::move(pts));
}

SampledCurve polyline_curve(const std::vector<Point>& vertices,
                            std::size_t samples) {
  require_samples(samples);
  if (vertices.size() < 2) {
    throw std::invalid_argument("polyline_curve: need at least two vertices");
  }
  const std::size_t dim = vertices.front().size();
  if (dim == 0) {
    throw std::invalid_argument("polyline_curve: vertices must have positive "
                                "dimension");
  }
  for (const auto& v : vertices) {
    if (v.size() != dim) {
      throw std::invalid_argument(
          "polyline_curve: vertices must share one dimension");
    }
  }

  const std::size_t pieces = vertices.size() - 1;
  std::vector<double> t(samples);
  std::vector<Point> pts(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    t[i] = double(i * pieces) / double(samples - 1);
    std::size_t seg = std::min(static_cast<std::size_t>(t[i]), pieces - 1);
    const double local = t[i] - double(seg);
    if (local == 0.0) {
      pts[i] = vertices[seg];
    } else if (local == 1.0) {
      pts[i] = vertices[seg + 1];
    } else {
      Point p(dim);
      for (std::size_t c = 0; c < dim; ++c) {
        p[c] = vertices[seg][c] + local * (vertices[seg + 1][c] -
                                           vertices[seg][c]);
      }
      pts[i] = std::move(p);
    }
  }
  return SampledCurve(MetricSpace::euclidean(dim), std::move(t),
                      std::move(pts));
}

SampledCurve cantor_curve(unsigned level, std::size_t steps_per_cell) {
  if (steps_per_cell == 0) {
    throw std::invalid_argument("cantor_curve: steps_per_cell must be "
                                "positive");
  }
  std::size_t cells = 1;
  for (unsigned k = 0; k < level; ++k) {
    if (cells > (std::size_t(1) << 40) / 3) {
      throw std::invalid_argument("cantor_curve: level too deep");
    }
    cells *= 3;
  }
  const std::size_t den = cells * steps_per_cell;
  const std::size_t samples = den + 1;
  auto t = unit_params(samples);
  std::vector<Point> pts(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    pts[i] = {staircase_value(i, den, level)};
  }
  return SampledCurve(MetricSpace::euclidean(1), std::move(t), std::move(pts));
}

SampledCurve circle_curve(double fraction, std::size_t samples) {
  require_samples(samples);
  if (!(fraction > 0) || !std::isfinite(fraction)) {
    throw std::invalid_argument("circle_curve: fraction must be positive");
  }
  auto t = unit_params(samples);
  std::vector<Point> pts(samples);
  const double turn = 2.0 * std::acos(-1.0) * fraction;
  for (std::size_t i = 0; i < samples; ++i) {
    pts[i] = {std::cos(turn * t[i]), std::sin(turn * t[i])};
  }
  return SampledCurve(MetricSpace::euclidean(2), std::move(t), std::move(pts));
}

SampledCurve snowflaked_curve(double alpha, std::size_t samples) {
  require_samples(samples);
  auto t = unit_params(samples);
  std::vector<Point> pts(samples);
  for (std::size_t i = 0; i < samples; ++i) pts[i] = {t[i]};
  return SampledCurve(MetricSpace::snowflake(MetricSpace::euclidean(1), alpha),
                      std::move(t), std::move(pts));
}

SampledCurve random_walk_curve(std::uint64_t seed, std::size_t samples,
                               std::size_t dim) {
  require_samples(samples);
  if (dim == 0) {
    throw std::invalid_argument("random_walk_curve: dimension must be "
                                "positive");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> step(-1.0, 1.0);
  const double scale = 1.0 / std::sqrt(double(samples));
  auto t = unit_params(samples);
  std::vector<Point> pts(samples);
  Point cur(dim, 0.0);
  pts[0] = cur;
  for (std::size_t i = 1; i < samples; ++i) {
    for (std::size_t c = 0; c < dim; ++c) cur[c] += scale * step(rng);
    pts[i] = cur;
  }
  return SampledCurve(MetricSpace::euclidean(dim), std::move(t),
                      std::move(pts));
}

}  // namespace accrit
