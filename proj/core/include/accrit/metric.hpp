#pragma once

#include <array>
#include <cstddef>
#include <limits>
#include <memory>
#include <vector>

namespace accrit {

// A point is a coordinate vector. Continuous spaces interpret it as
// coordinates; index-backed spaces (graph, discrete, table) expect a single
// entry holding an integer index.
using Point = std::vector<double>;

inline Point index_point(std::size_t i) { return Point{static_cast<double>(i)}; }

enum class MetricKind { Euclidean, Snowflake, Graph, Discrete, Table };

enum class TableValidation { Strict, Permissive };

struct GraphEdge {
  std::size_t u;
  std::size_t v;
  double weight;
};

// Worst-case violations of the metric axioms over a finite distance matrix.
// A permissively constructed table space can be run through
// check_metric_axioms to locate exactly where and how badly it fails.
struct AxiomReport {
  double max_symmetry_gap = 0.0;
  std::array<std::size_t, 2> symmetry_pair{0, 0};
  // Largest value of d(i,k) - d(i,j) - d(j,k); positive means the triangle
  // inequality fails for that triple.
  double max_triangle_excess = -std::numeric_limits<double>::infinity();
  std::array<std::size_t, 3> triangle_triple{0, 0, 0};
  double max_identity_gap = 0.0;
  std::size_t identity_index = 0;
  double min_offdiagonal = std::numeric_limits<double>::infinity();
  std::array<std::size_t, 2> min_pair{0, 0};
  bool pass = false;
};

// Immutable metric space handle. Copies share the underlying definition.
class MetricSpace {
 public:
  static MetricSpace euclidean(std::size_t dim);
  // distance(a, b) = base.distance(a, b)^alpha with alpha in (0, 1].
  static MetricSpace snowflake(MetricSpace base, double alpha);
  // Undirected weighted graph on nodes 0..n-1 with shortest-path distances.
  // Weights must be positive and the graph connected.
  static MetricSpace graph(std::size_t n, std::vector<GraphEdge> edges);
  // n points, distance 1 between distinct points.
  static MetricSpace discrete(std::size_t n);
  // Explicit distance matrix. Strict mode rejects any axiom violation;
  // permissive mode accepts any finite square matrix so the result can be
  // examined with check_metric_axioms.
  static MetricSpace table(std::vector<std::vector<double>> matrix,
                           TableValidation mode = TableValidation::Strict);

  double distance(const Point& a, const Point& b) const;
  // Throws std::invalid_argument with a description of what is wrong.
  void validate_point(const Point& p) const;

  MetricKind kind() const;
  // Number of coordinates a valid point must have.
  std::size_t dimension() const;
  // Number of points of an index-backed space; 0 for continuous spaces.
  std::size_t point_count() const;

  double snowflake_alpha() const;
  const MetricSpace& snowflake_base() const;
  const std::vector<GraphEdge>& graph_edges() const;
  // Table: the stored matrix. Graph: the shortest-path closure.
  const std::vector<std::vector<double>>& distance_matrix() const;

 private:
  struct Impl;
  explicit MetricSpace(std::shared_ptr<const Impl> impl);
  std::shared_ptr<const Impl> impl_;
};

AxiomReport check_metric_axioms(const std::vector<std::vector<double>>& matrix);
// Samples pairwise distances and checks the same axioms on the induced
// matrix. Point identity is positional, so duplicated sample points will be
// reported as positivity failures.
AxiomReport check_metric_axioms(const MetricSpace& space,
                                const std::vector<Point>& sample);

}  // namespace accrit
