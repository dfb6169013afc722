#include "laakso/graph.hpp"

#include "laakso/errors.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <stdexcept>
#include <utility>

namespace laakso {

namespace {

// Canonical class representative at a cut point: a level-l wormhole fuses the
// two sheets differing at bit l, so zeroing that bit picks the smaller address.
CantorAddress canonical_sheet(const CantorAddress& sheet, int wormhole_lvl) {
  CantorAddress c = sheet;
  if (wormhole_lvl >= 1) c[wormhole_lvl - 1] = '0';
  return c;
}

}  // namespace

void QuantumGraph::index() {
  incident.assign(vertices.size(), {});
  for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
    incident[edges[e].lo].push_back(e);
    if (edges[e].hi != edges[e].lo) incident[edges[e].hi].push_back(e);
  }
}

Rat QuantumGraph::total_weight() const {
  Rat s = 0;
  for (const auto& e : edges) s += e.weight;
  return s;
}

Rat QuantumGraph::min_edge_length() const {
  if (edges.empty()) throw std::domain_error("min_edge_length: empty graph");
  Rat m = edges.front().length;
  for (const auto& e : edges) m = std::min(m, e.length);
  return m;
}

GraphPoint canonical_point(const QuantumGraph& g, GraphPoint p) {
  int v = vertex_at_point(g, p);
  if (v < 0) return p;
  int best = g.incident[v].front();
  const Edge& e = g.edges[best];
  return {best, e.lo == v ? 0.0 : rat_to_double(e.length)};
}

int vertex_at_point(const QuantumGraph& g, const GraphPoint& p, double tol) {
  if (p.edge < 0 || p.edge >= static_cast<int>(g.edges.size()))
    throw std::out_of_range("vertex_at_point: edge id out of range");
  const Edge& e = g.edges[p.edge];
  const double len = rat_to_double(e.length);
  if (p.offset <= tol) return e.lo;
  if (p.offset >= len - tol) return e.hi;
  return -1;
}

GraphPtr build_graph(const ContractionParams& params, int n) {
  if (n < 0 || n > params.depth_limit)
    throw std::out_of_range("build_graph: level outside [0, depth_limit]");

  auto g = std::make_shared<QuantumGraph>();
  g->level = n;
  g->params = params;

  const Int cuts = params.level_denominator(n);  // D_n intervals per sheet
  const long num_cuts = cuts.convert_to<long>();
  const long num_sheets = 1L << n;
  const Rat seg_len(1, cuts);
  const Rat seg_weight = seg_len / Rat(Int(1) << n);

  std::vector<CantorAddress> sheets;
  sheets.reserve(num_sheets);
  for (long s = 0; s < num_sheets; ++s) {
    CantorAddress a(n, '0');
    for (int b = 0; b < n; ++b)
      if (s & (1L << (n - 1 - b))) a[b] = '1';
    sheets.push_back(std::move(a));
  }

  // Wormhole level per cut point (0 at the endpoints x = 0, 1).
  std::vector<int> cut_level(num_cuts + 1, 0);
  for (long k = 1; k < num_cuts; ++k)
    cut_level[k] = wormhole_level(params, Rat(k, cuts), n);

  // Vertex ids ordered by (cut index, canonical sheet class).
  std::map<std::pair<long, CantorAddress>, int> vertex_id;
  for (long k = 0; k <= num_cuts; ++k) {
    for (const auto& a : sheets) {
      auto key = std::make_pair(k, canonical_sheet(a, cut_level[k]));
      if (!vertex_id.count(key)) {
        int id = static_cast<int>(vertex_id.size());
        vertex_id.emplace(std::move(key), id);
      }
    }
  }
  g->vertices.resize(vertex_id.size());
  for (const auto& [key, id] : vertex_id)
    g->vertices[id] = Vertex{Rat(key.first, cuts), key.second};

  for (const auto& a : sheets) {
    for (long k = 0; k < num_cuts; ++k) {
      Edge e;
      e.lo = vertex_id.at({k, canonical_sheet(a, cut_level[k])});
      e.hi = vertex_id.at({k + 1, canonical_sheet(a, cut_level[k + 1])});
      e.length = seg_len;
      e.weight = seg_weight;
      e.sheet = a;
      g->edges.push_back(std::move(e));
    }
  }

  g->index();
  return g;
}

ExactPoint Projection::apply(const ExactPoint& p) const {
  const auto& im = edge_map.at(p.edge);
  return {im.edge, p.offset + im.shift};
}

GraphPoint Projection::apply(const GraphPoint& p) const {
  const auto& im = edge_map.at(p.edge);
  return {im.edge, p.offset + rat_to_double(im.shift)};
}

Projection build_projection(GraphPtr source, GraphPtr target) {
  if (!source || !target) throw std::domain_error("build_projection: null graph");
  if (source->level <= target->level)
    throw std::domain_error("build_projection: source level must exceed target level");
  if (!source->has_sheet_info() || !target->has_sheet_info())
    throw std::domain_error("build_projection: graphs loaded without sheet data "
                            "cannot be projected; rebuild from parameters");

  const int m = target->level;
  Projection proj;
  proj.source = source;
  proj.target = std::move(target);

  // Target edge lookup by (sheet, x_lo).
  std::map<std::pair<CantorAddress, Rat>, int> target_edge;
  for (int e = 0; e < static_cast<int>(proj.target->edges.size()); ++e)
    target_edge[{proj.target->edges[e].sheet, proj.target->edge_x_lo(e)}] = e;

  proj.edge_map.resize(source->edges.size());
  for (int e = 0; e < static_cast<int>(source->edges.size()); ++e) {
    const Edge& se = source->edges[e];
    const Rat x_lo = source->edge_x_lo(e);
    const CantorAddress prefix = se.sheet.substr(0, m);
    // Cut spacings are uniform per level, so the source edge sits inside the
    // target cell found by integer division of x_lo by the target spacing.
    const Rat len_m = proj.target->edges.front().length;
    const Rat ratio = x_lo / len_m;
    const Rat target_x_lo = Rat(Int(numerator(ratio)) / Int(denominator(ratio))) * len_m;
    auto it = target_edge.find({prefix, target_x_lo});
    if (it == target_edge.end())
      throw construction_error("build_projection: missing target edge");
    proj.edge_map[e] = {it->second, x_lo - target_x_lo};
  }

  proj.vertex_map.resize(source->vertices.size());
  for (int v = 0; v < static_cast<int>(source->vertices.size()); ++v) {
    int e = source->incident[v].front();
    const Edge& se = source->edges[e];
    Rat off = se.lo == v ? Rat(0) : se.length;
    proj.vertex_map[v] = proj.apply(ExactPoint{e, off});
  }
  return proj;
}

Projection build_projection(const ContractionParams& params, int n, int m) {
  if (m >= n) throw std::domain_error("build_projection: need m < n");
  if (n > params.depth_limit)
    throw std::out_of_range("build_projection: level exceeds depth_limit");
  return build_projection(build_graph(params, n), build_graph(params, m));
}

Rat measure_of(const QuantumGraph& g, std::span<const EdgeSegment> segments) {
  std::vector<EdgeSegment> sorted(segments.begin(), segments.end());
  std::sort(sorted.begin(), sorted.end(), [](const EdgeSegment& u, const EdgeSegment& v) {
    return u.edge != v.edge ? u.edge < v.edge : u.a < v.a;
  });
  Rat total = 0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const auto& s = sorted[i];
    if (s.edge < 0 || s.edge >= static_cast<int>(g.edges.size()))
      throw std::out_of_range("measure_of: edge id out of range");
    const Edge& e = g.edges[s.edge];
    if (s.a < 0 || s.b > e.length || s.a > s.b)
      throw std::domain_error("measure_of: segment outside edge");
    if (i > 0 && sorted[i - 1].edge == s.edge && sorted[i - 1].b > s.a)
      throw std::domain_error("measure_of: overlapping segments on one edge");
    total += (s.b - s.a) * e.weight / e.length;
  }
  return total;
}

std::vector<EdgeSegment> preimage_segments(const Projection& proj,
                                           std::span<const EdgeSegment> target_segments) {
  std::vector<EdgeSegment> out;
  for (int e = 0; e < static_cast<int>(proj.source->edges.size()); ++e) {
    const auto& im = proj.edge_map[e];
    const Rat len = proj.source->edges[e].length;
    for (const auto& seg : target_segments) {
      if (seg.edge != im.edge) continue;
      Rat a = std::max(Rat(seg.a - im.shift), Rat(0));
      Rat b = std::min(Rat(seg.b - im.shift), len);
      if (a < b) out.push_back({e, a, b});
    }
  }
  return out;
}

bool is_connected(const QuantumGraph& g) {
  if (g.vertices.empty()) return true;
  std::vector<char> seen(g.vertices.size(), 0);
  std::queue<int> q;
  q.push(0);
  seen[0] = 1;
  std::size_t reached = 1;
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int e : g.incident[v]) {
      for (int w : {g.edges[e].lo, g.edges[e].hi}) {
        if (!seen[w]) {
          seen[w] = 1;
          ++reached;
          q.push(w);
        }
      }
    }
  }
  return reached == g.vertices.size();
}

}  // namespace laakso
