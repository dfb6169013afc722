#pragma once

#include "laakso/construction.hpp"
#include "laakso/rational.hpp"

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace laakso {

struct Vertex {
  Rat x;
  CantorAddress sheet;  // canonical (smallest) address of the identified class
};

struct Edge {
  int lo = 0, hi = 0;  // vertex ids, x(lo) < x(hi)
  Rat length;
  Rat weight;          // measure carried by the edge; density weight/length
  CantorAddress sheet; // strip the edge lies in; present on built graphs only
};

/// Level-n quantum graph of the iterated gluing: 2^n unit-interval sheets cut
/// at every identification location of level <= n, with paired sheets fused at
/// those cuts. Immutable after construction; share freely across threads.
struct QuantumGraph {
  int level = 0;
  std::vector<Vertex> vertices;
  std::vector<Edge> edges;
  std::optional<ContractionParams> params;  // absent on graphs loaded from JSON

  std::vector<std::vector<int>> incident;  // edge ids per vertex

  bool has_sheet_info() const {
    return level == 0 ||
           (!edges.empty() && static_cast<int>(edges.front().sheet.size()) == level);
  }
  Rat total_weight() const;
  Rat min_edge_length() const;
  int degree(int vertex) const { return static_cast<int>(incident[vertex].size()); }
  const Rat& edge_x_lo(int e) const { return vertices[edges[e].lo].x; }
  Rat density(int e) const { return edges[e].weight / edges[e].length; }

  /// Recomputes incidence lists; called by builders and loaders.
  void index();
};

using GraphPtr = std::shared_ptr<const QuantumGraph>;

/// A location on the graph: edge id plus arclength offset from the lo end.
struct GraphPoint {
  int edge = 0;
  double offset = 0;
};

/// Exact-offset variant used where rational arithmetic must be preserved.
struct ExactPoint {
  int edge = 0;
  Rat offset;
  GraphPoint approx() const { return {edge, rat_to_double(offset)}; }
};

/// Vertex points collapse to the lowest incident edge id, offset at an endpoint.
GraphPoint canonical_point(const QuantumGraph& g, GraphPoint p);

/// Vertex id at p when p sits on a vertex (within tol), else -1.
int vertex_at_point(const QuantumGraph& g, const GraphPoint& p, double tol = 1e-12);

struct EdgeSegment {
  int edge = 0;
  Rat a, b;  // 0 <= a < b <= length(edge)
};

/// Level-to-level projection; drops sheet bits beyond the target level.
/// Every source edge lands isometrically inside one target edge.
struct Projection {
  GraphPtr source;  // level n
  GraphPtr target;  // level m < n
  struct EdgeImage {
    int edge = 0;  // target edge
    Rat shift;     // target offset = source offset + shift
  };
  std::vector<EdgeImage> edge_map;      // by source edge id
  std::vector<ExactPoint> vertex_map;   // by source vertex id

  ExactPoint apply(const ExactPoint& p) const;
  GraphPoint apply(const GraphPoint& p) const;
};

GraphPtr build_graph(const ContractionParams& params, int n);

Projection build_projection(const ContractionParams& params, int n, int m);
Projection build_projection(GraphPtr source, GraphPtr target);

/// Exact measure of a union of per-edge sub-intervals. The segments of any one
/// edge must not overlap.
Rat measure_of(const QuantumGraph& g, std::span<const EdgeSegment> segments);

/// Preimage of target-graph segments under the projection, as source segments.
std::vector<EdgeSegment> preimage_segments(const Projection& proj,
                                           std::span<const EdgeSegment> target_segments);

/// Breadth-first reachability from vertex 0.
bool is_connected(const QuantumGraph& g);

}  // namespace laakso
