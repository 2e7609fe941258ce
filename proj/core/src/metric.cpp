#include "accrit/metric.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "accrit/tolerances.hpp"

namespace accrit {
namespace {

constexpr std::size_t kMaxMatrixEntries = 10000;
constexpr std::size_t kMaxAxiomCheckSize = 256;

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

std::size_t to_index(const Point& p, std::size_t count, const char* context) {
  if (p.size() != 1) {
    std::ostringstream os;
    os << context << ": index point must have exactly one coordinate, got "
       << p.size();
    throw std::invalid_argument(os.str());
  }
  double v = p[0];
  if (!std::isfinite(v) || std::abs(v - std::round(v)) > 1e-9) {
    std::ostringstream os;
    os << context << ": point coordinate " << v << " is not an integer index";
    throw std::invalid_argument(os.str());
  }
  double r = std::round(v);
  if (r < 0.0 || r >= static_cast<double>(count)) {
    std::ostringstream os;
    os << context << ": index " << r << " out of range [0, " << count << ")";
    throw std::invalid_argument(os.str());
  }
  return static_cast<std::size_t>(r);
}

void validate_matrix_shape(const std::vector<std::vector<double>>& m,
                           std::size_t max_entries) {
  std::size_t n = m.size();
  require(n >= 1, "distance matrix must be non-empty");
  require(n * n <= max_entries,
          "distance matrix exceeds the " + std::to_string(max_entries) +
              "-entry limit");
  for (std::size_t i = 0; i < n; ++i) {
    require(m[i].size() == n, "distance matrix must be square");
    for (double v : m[i])
      require(std::isfinite(v), "distance matrix entries must be finite");
  }
}

}  // namespace

struct MetricSpace::Impl {
  MetricKind kind;
  std::size_t dim = 1;
  std::size_t count = 0;
  double alpha = 1.0;
  std::optional<MetricSpace> base;
  std::vector<GraphEdge> edges;
  std::vector<std::vector<double>> matrix;
};

MetricSpace::MetricSpace(std::shared_ptr<const Impl> impl)
    : impl_(std::move(impl)) {}

MetricSpace MetricSpace::euclidean(std::size_t dim) {
  require(dim >= 1, "euclidean dimension must be at least 1");
  auto impl = std::make_shared<Impl>();
  impl->kind = MetricKind::Euclidean;
  impl->dim = dim;
  return MetricSpace(impl);
}

MetricSpace MetricSpace::snowflake(MetricSpace base, double alpha) {
  require(std::isfinite(alpha) && alpha > 0.0 && alpha <= 1.0,
          "snowflake exponent must lie in (0, 1]");
  auto impl = std::make_shared<Impl>();
  impl->kind = MetricKind::Snowflake;
  impl->dim = base.dimension();
  impl->count = base.point_count();
  impl->alpha = alpha;
  impl->base = std::move(base);
  return MetricSpace(impl);
}

MetricSpace MetricSpace::graph(std::size_t n, std::vector<GraphEdge> edges) {
  require(n >= 1, "graph must have at least one node");
  require(n * n <= kMaxMatrixEntries,
          "graph closure would exceed the matrix entry limit");
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> d(n, std::vector<double>(n, inf));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = 0.0;
  for (const GraphEdge& e : edges) {
    require(e.u < n && e.v < n, "graph edge endpoint out of range");
    require(e.u != e.v, "graph edge must join distinct nodes");
    require(std::isfinite(e.weight) && e.weight > 0.0,
            "graph edge weight must be positive and finite");
    d[e.u][e.v] = std::min(d[e.u][e.v], e.weight);
    d[e.v][e.u] = d[e.u][e.v];
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      require(std::isfinite(d[i][j]), "graph is not connected");
  auto impl = std::make_shared<Impl>();
  impl->kind = MetricKind::Graph;
  impl->count = n;
  impl->edges = std::move(edges);
  impl->matrix = std::move(d);
  return MetricSpace(impl);
}

MetricSpace MetricSpace::discrete(std::size_t n) {
  require(n >= 1, "discrete space must have at least one point");
  auto impl = std::make_shared<Impl>();
  impl->kind = MetricKind::Discrete;
  impl->count = n;
  return MetricSpace(impl);
}

MetricSpace MetricSpace::table(std::vector<std::vector<double>> matrix,
                               TableValidation mode) {
  validate_matrix_shape(matrix, kMaxMatrixEntries);
  if (mode == TableValidation::Strict) {
    AxiomReport rep = check_metric_axioms(matrix);
    if (!rep.pass) {
      std::ostringstream os;
      os << "table is not a metric:";
      if (rep.max_identity_gap > kEqTol)
        os << " d(" << rep.identity_index << "," << rep.identity_index
           << ") = " << rep.max_identity_gap << " is nonzero;";
      if (rep.max_symmetry_gap > kEqTol)
        os << " symmetry gap " << rep.max_symmetry_gap << " at ("
           << rep.symmetry_pair[0] << "," << rep.symmetry_pair[1] << ");";
      if (!(rep.min_offdiagonal > 0.0))
        os << " d(" << rep.min_pair[0] << "," << rep.min_pair[1]
           << ") = " << rep.min_offdiagonal << " is not positive;";
      if (rep.max_triangle_excess > kEqTol)
        os << " triangle excess " << rep.max_triangle_excess << " at ("
           << rep.triangle_triple[0] << "," << rep.triangle_triple[1] << ","
           << rep.triangle_triple[2] << ");";
      throw std::invalid_argument(os.str());
    }
  }
  auto impl = std::make_shared<Impl>();
  impl->kind = MetricKind::Table;
  impl->count = matrix.size();
  impl->matrix = std::move(matrix);
  return MetricSpace(impl);
}

double MetricSpace::distance(const Point& a, const Point& b) const {
  const Impl& im = *impl_;
  switch (im.kind) {
    case MetricKind::Euclidean: {
      if (a.size() != im.dim || b.size() != im.dim)
        throw std::invalid_argument(
            "distance: point dimension does not match the space");
      double s = 0.0;
      for (std::size_t i = 0; i < im.dim; ++i) {
        double d = a[i] - b[i];
        s += d * d;
      }
      return std::sqrt(s);
    }
    case MetricKind::Snowflake:
      return std::pow(im.base->distance(a, b), im.alpha);
    case MetricKind::Graph:
    case MetricKind::Table: {
      std::size_t i = to_index(a, im.count, "distance");
      std::size_t j = to_index(b, im.count, "distance");
      return im.matrix[i][j];
    }
    case MetricKind::Discrete: {
      std::size_t i = to_index(a, im.count, "distance");
      std::size_t j = to_index(b, im.count, "distance");
      return i == j ? 0.0 : 1.0;
    }
  }
  throw std::logic_error("distance: unknown metric kind");
}

void MetricSpace::validate_point(const Point& p) const {
  const Impl& im = *impl_;
  switch (im.kind) {
    case MetricKind::Euclidean:
      if (p.size() != im.dim)
        throw std::invalid_argument(
            "point has " + std::to_string(p.size()) +
            " coordinates, space expects " + std::to_string(im.dim));
      for (double v : p)
        if (!std::isfinite(v))
          throw std::invalid_argument("point coordinates must be finite");
      return;
    case MetricKind::Snowflake:
      im.base->validate_point(p);
      return;
    case MetricKind::Graph:
    case MetricKind::Discrete:
    case MetricKind::Table:
      to_index(p, im.count, "validate_point");
      return;
  }
}

MetricKind MetricSpace::kind() const { return impl_->kind; }

std::size_t MetricSpace::dimension() const { return impl_->dim; }

std::size_t MetricSpace::point_count() const { return impl_->count; }

double MetricSpace::snowflake_alpha() const {
  if (impl_->kind != MetricKind::Snowflake)
    throw std::logic_error("snowflake_alpha: not a snowflake space");
  return impl_->alpha;
}

const MetricSpace& MetricSpace::snowflake_base() const {
  if (impl_->kind != MetricKind::Snowflake)
    throw std::logic_error("snowflake_base: not a snowflake space");
  return *impl_->base;
}

const std::vector<GraphEdge>& MetricSpace::graph_edges() const {
  if (impl_->kind != MetricKind::Graph)
    throw std::logic_error("graph_edges: not a graph space");
  return impl_->edges;
}

const std::vector<std::vector<double>>& MetricSpace::distance_matrix() const {
  if (impl_->kind != MetricKind::Graph && impl_->kind != MetricKind::Table)
    throw std::logic_error("distance_matrix: space has no stored matrix");
  return impl_->matrix;
}

AxiomReport check_metric_axioms(const std::vector<std::vector<double>>& m) {
  validate_matrix_shape(m, kMaxAxiomCheckSize * kMaxAxiomCheckSize);
  std::size_t n = m.size();
  AxiomReport rep;
  for (std::size_t i = 0; i < n; ++i) {
    double g = std::abs(m[i][i]);
    if (g > rep.max_identity_gap) {
      rep.max_identity_gap = g;
      rep.identity_index = i;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double g = std::abs(m[i][j] - m[j][i]);
      if (g > rep.max_symmetry_gap) {
        rep.max_symmetry_gap = g;
        rep.symmetry_pair = {i, j};
      }
      double lo = std::min(m[i][j], m[j][i]);
      if (lo < rep.min_offdiagonal) {
        rep.min_offdiagonal = lo;
        rep.min_pair = {i, j};
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      for (std::size_t k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        double excess = m[i][k] - m[i][j] - m[j][k];
        if (excess > rep.max_triangle_excess) {
          rep.max_triangle_excess = excess;
          rep.triangle_triple = {i, j, k};
        }
      }
    }
  rep.pass = rep.max_identity_gap <= kEqTol && rep.max_symmetry_gap <= kEqTol &&
             rep.max_triangle_excess <= kEqTol &&
             (n == 1 || rep.min_offdiagonal > 0.0);
  return rep;
}

AxiomReport check_metric_axioms(const MetricSpace& space,
                                const std::vector<Point>& sample) {
  require(!sample.empty(), "axiom check needs at least one sample point");
  require(sample.size() <= kMaxAxiomCheckSize,
          "axiom check sample exceeds " + std::to_string(kMaxAxiomCheckSize) +
              " points");
  std::size_t n = sample.size();
  std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m[i][j] = space.distance(sample[i], sample[j]);
  return check_metric_axioms(m);
}

}  // namespace accrit
