#include "accrit/extension.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "accrit/errors.hpp"
#include "accrit/tolerances.hpp"

namespace accrit {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void reject_close_conflict(double dist, double va, double vb, std::size_t i,
                           std::size_t j) {
  if (dist <= kPreimageTol && std::abs(va - vb) > kEqTol) {
    std::ostringstream os;
    os << "support points " << i << " and " << j << " coincide (distance "
       << dist << ") but carry values " << va << " and " << vb;
    throw SupportTooCloseError(os.str());
  }
}

}  // namespace

PartialLipschitzFunction::PartialLipschitzFunction(MetricSpace space,
                                                   std::vector<Point> support,
                                                   std::vector<double> values)
    : space_(std::move(space)),
      support_(std::move(support)),
      values_(std::move(values)) {
  if (support_.size() != values_.size())
    throw std::invalid_argument("support and value counts differ");
  for (std::size_t i = 0; i < support_.size(); ++i) {
    space_.validate_point(support_[i]);
    if (!std::isfinite(values_[i]))
      throw std::invalid_argument("support values must be finite");
  }
  for (std::size_t i = 0; i < support_.size(); ++i)
    for (std::size_t j = i + 1; j < support_.size(); ++j)
      reject_close_conflict(space_.distance(support_[i], support_[j]),
                            values_[i], values_[j], i, j);
}

PartialLipschitzFunction PartialLipschitzFunction::empty(MetricSpace space) {
  return PartialLipschitzFunction(std::move(space), {}, {});
}

void PartialLipschitzFunction::add(Point x, double value) {
  space_.validate_point(x);
  if (!std::isfinite(value))
    throw std::invalid_argument("support values must be finite");
  for (std::size_t i = 0; i < support_.size(); ++i) {
    double d = space_.distance(support_[i], x);
    reject_close_conflict(d, values_[i], value, i, support_.size());
    if (d <= kPreimageTol) return;
  }
  support_.push_back(std::move(x));
  values_.push_back(value);
}

double PartialLipschitzFunction::support_distance(const Point& x) const {
  double best = kInf;
  for (const Point& s : support_) best = std::min(best, space_.distance(s, x));
  return best;
}

double infer_constant(const PartialLipschitzFunction& f) {
  if (f.is_empty())
    throw std::invalid_argument(
        "cannot infer a Lipschitz constant from an empty support");
  const auto& xs = f.support();
  const auto& vs = f.values();
  double best = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = i + 1; j < xs.size(); ++j) {
      double d = f.space().distance(xs[i], xs[j]);
      reject_close_conflict(d, vs[i], vs[j], i, j);
      if (d <= kPreimageTol) continue;
      best = std::max(best, std::abs(vs[i] - vs[j]) / d);
    }
  return best;
}

ExtensionField::ExtensionField(PartialLipschitzFunction f, double constant)
    : f_(std::move(f)), constant_(constant) {
  if (!std::isfinite(constant_) || constant_ < 0.0)
    throw std::invalid_argument(
        "extension constant must be finite and nonnegative");
  support_constant_ = f_.size() >= 2 ? infer_constant(f_) : 0.0;
  if (constant_ < support_constant_ - kEqTol) {
    std::ostringstream os;
    os << "extension constant " << constant_
       << " is below the constant inferred from the support ("
       << support_constant_ << ")";
    throw std::invalid_argument(os.str());
  }
}

double ExtensionField::upper(const Point& x) const {
  double best = kInf;
  const auto& xs = f_.support();
  const auto& vs = f_.values();
  for (std::size_t i = 0; i < xs.size(); ++i)
    best = std::min(best, vs[i] + constant_ * f_.space().distance(x, xs[i]));
  return best;
}

double ExtensionField::lower(const Point& x) const {
  double best = -kInf;
  const auto& xs = f_.support();
  const auto& vs = f_.values();
  for (std::size_t i = 0; i < xs.size(); ++i)
    best = std::max(best, vs[i] - constant_ * f_.space().distance(x, xs[i]));
  return best;
}

double ExtensionField::gap_slack(const Point& x) const {
  if (f_.is_empty())
    throw std::invalid_argument("gap_slack is undefined on an empty support");
  double floor = 2.0 * (constant_ - support_constant_) * f_.support_distance(x);
  return (upper(x) - lower(x)) - floor;
}

PartialLipschitzFunction ExtensionField::extend_at(const Point& x,
                                                   double value) const {
  double lo = lower(x);
  double up = upper(x);
  if (value < lo - kEqTol || value > up + kEqTol) {
    std::ostringstream os;
    os << "value " << value << " lies outside the admissible interval ["
       << lo << ", " << up << "] at the given point";
    throw std::invalid_argument(os.str());
  }
  PartialLipschitzFunction out = f_;
  out.add(x, value);
  return out;
}

}  // namespace accrit
