#pragma once

#include "laakso/funcspace.hpp"
#include "laakso/graph.hpp"
#include "laakso/rng.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace laakso {

struct PathSegment {
  int edge = 0;
  double s_from = 0, s_to = 0;  // traversal direction preserved
};

struct GeodesicPath {
  double length = 0;
  std::vector<PathSegment> segments;
};

/// Exact single-source distances to every vertex (Dijkstra over edge lengths;
/// identification points cost nothing beyond reaching them).
std::vector<Rat> vertex_distances(const QuantumGraph& g, const ExactPoint& src);

double geodesic_distance(const QuantumGraph& g, const GraphPoint& p, const GraphPoint& q);
Rat geodesic_distance_exact(const QuantumGraph& g, const ExactPoint& p, const ExactPoint& q);

/// A realizing path for the geodesic distance, as traversed edge intervals.
GeodesicPath shortest_path(const QuantumGraph& g, const GraphPoint& p, const GraphPoint& q);

/// Closed metric ball; content lists the exact covered sub-interval per edge.
struct Ball {
  GraphPoint center;
  double radius = 0;
  std::vector<EdgeSegment> content;
};

Ball ball(const QuantumGraph& g, const GraphPoint& center, const Rat& radius);
Rat ball_measure(const QuantumGraph& g, const Ball& b);

/// Upper bound on the diameter: vertex eccentricity plus one edge length.
double graph_diameter_upper(const QuantumGraph& g);

struct AhlforsFit {
  double exponent = 0;
  double residual = 0;  // RMS residual of the log-log fit
  struct Row {
    double r = 0;
    double mu = 0;
  };
  std::vector<Row> rows;
};

/// Pooled log-log regression of ball measure against radius over random
/// mass-weighted centers. Ball cuts are exact, so any r_lo > 0 is admissible;
/// r_hi must stay within a quarter of the diameter bound.
AhlforsFit ahlfors_exponent(const QuantumGraph& g, int samples, double r_lo, double r_hi,
                            int radii, std::uint64_t seed);

struct PoincareRow {
  int function = 0;
  int ball = 0;
  double numerator = 0;    // int_B |u - u_B| dmu
  double denominator = 0;  // diam(B) * int_{CB} p_u dmu, diam(B) taken as 2r
  double ratio = 0;
};

struct PoincareResult {
  double constant = 0;  // max ratio over non-degenerate pairs
  int evaluated = 0;
  int skipped = 0;     // 0/0 pairs
  int violations = 0;  // zero denominator against nonzero numerator
  std::vector<PoincareRow> rows;
};

PoincareResult poincare_check(const QuantumGraph& g,
                              std::span<const PiecewiseFunction> functions,
                              std::span<const Ball> balls, double c_geom);

/// Mass-weighted random location on the graph.
GraphPoint random_point(const QuantumGraph& g, SplitStream& rng);

}  // namespace laakso
