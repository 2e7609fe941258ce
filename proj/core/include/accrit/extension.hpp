#pragma once

#include <cstddef>
#include <vector>

#include "accrit/metric.hpp"

namespace accrit {

// A real-valued function given on finitely many points of a metric space.
// Two support points at numerically zero distance must carry equal values;
// otherwise no Lipschitz extension exists and construction throws
// SupportTooCloseError.
class PartialLipschitzFunction {
 public:
  PartialLipschitzFunction(MetricSpace space, std::vector<Point> support,
                           std::vector<double> values);
  static PartialLipschitzFunction empty(MetricSpace space);

  const MetricSpace& space() const { return space_; }
  const std::vector<Point>& support() const { return support_; }
  const std::vector<double>& values() const { return values_; }
  std::size_t size() const { return support_.size(); }
  bool is_empty() const { return support_.empty(); }

  // Appends a support point. A point coinciding with an existing one (within
  // the preimage tolerance) is silently dropped when the values agree and
  // rejected when they do not. The constructor, by contrast, keeps coincident
  // duplicates as given.
  void add(Point x, double value);

  // Distance from x to the nearest support point; +inf on empty support.
  double support_distance(const Point& x) const;

 private:
  MetricSpace space_;
  std::vector<Point> support_;
  std::vector<double> values_;
};

// Smallest Lipschitz constant consistent with the sampled values: the largest
// ratio |f(x) - f(y)| / d(x, y) over support pairs. Zero-distance pairs with
// equal values are skipped; an empty support has no inferable constant and
// throws.
double infer_constant(const PartialLipschitzFunction& f);

// The two extremal L-Lipschitz extensions of a partial function. Every
// L-Lipschitz extension lies between lower() and upper(), and conversely any
// value in that interval at a new point extends the function with the same
// constant.
class ExtensionField {
 public:
  // Throws std::invalid_argument when the requested constant is smaller than
  // the constant inferred from the support.
  ExtensionField(PartialLipschitzFunction f, double constant);

  double constant() const { return constant_; }
  double support_constant() const { return support_constant_; }
  const PartialLipschitzFunction& function() const { return f_; }

  // min over support of f(x_i) + L d(x, x_i); +inf on empty support.
  double upper(const Point& x) const;
  // max over support of f(x_i) - L d(x, x_i); -inf on empty support.
  double lower(const Point& x) const;

  // Amount by which the envelope gap at x exceeds its guaranteed floor of
  // 2 (L - L') d(x, support), where L' is the inferred support constant.
  // Nonnegative up to rounding.
  double gap_slack(const Point& x) const;

  // The partial function enlarged by the pair (x, value). The value must lie
  // within [lower(x), upper(x)] up to tolerance.
  PartialLipschitzFunction extend_at(const Point& x, double value) const;

 private:
  PartialLipschitzFunction f_;
  double constant_;
  double support_constant_;
};

}  // namespace accrit
