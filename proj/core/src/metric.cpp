#include "laakso/metric.hpp"

#include "laakso/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

namespace laakso {

namespace {

struct QueueEntry {
  Rat dist;
  int vertex;
  bool operator>(const QueueEntry& o) const {
    return dist != o.dist ? dist > o.dist : vertex > o.vertex;
  }
};

constexpr int kNoVertex = -1;

ExactPoint exact_of(const GraphPoint& p) { return {p.edge, rat_from_double(p.offset)}; }

// Dijkstra seeded from the two endpoints of the source edge; pred tracking
// optional. Distances are exact rationals; ties are broken by vertex id.
struct DistanceField {
  std::vector<Rat> dist;
  std::vector<int> pred_vertex;  // previous vertex on the shortest path
  std::vector<int> pred_edge;    // edge used to reach this vertex
};

DistanceField run_dijkstra(const QuantumGraph& g, const ExactPoint& src) {
  const std::size_t n = g.vertices.size();
  DistanceField f;
  f.dist.assign(n, Rat(-1));  // -1 marks unreached
  f.pred_vertex.assign(n, kNoVertex);
  f.pred_edge.assign(n, kNoVertex);

  std::priority_queue<QueueEntry, std::vector<QueueEntry>, std::greater<>> pq;
  auto offer = [&](int v, const Rat& d, int pv, int pe) {
    if (f.dist[v] >= 0 && f.dist[v] <= d) return;
    f.dist[v] = d;
    f.pred_vertex[v] = pv;
    f.pred_edge[v] = pe;
    pq.push({d, v});
  };

  const Edge& e0 = g.edges.at(src.edge);
  if (src.offset < 0 || src.offset > e0.length)
    throw std::domain_error("distance: offset outside the edge");
  offer(e0.lo, src.offset, kNoVertex, src.edge);
  offer(e0.hi, e0.length - src.offset, kNoVertex, src.edge);

  while (!pq.empty()) {
    auto [d, v] = pq.top();
    pq.pop();
    if (d != f.dist[v]) continue;
    for (int e : g.incident[v]) {
      const Edge& ed = g.edges[e];
      int w = ed.lo == v ? ed.hi : ed.lo;
      offer(w, d + ed.length, v, e);
    }
  }
  return f;
}

Rat point_distance(const QuantumGraph& g, const DistanceField& f, const ExactPoint& src,
                   const ExactPoint& dst) {
  const Edge& ed = g.edges.at(dst.edge);
  Rat best(-1);
  auto consider = [&](const Rat& d) {
    if (best < 0 || d < best) best = d;
  };
  if (f.dist[ed.lo] >= 0) consider(f.dist[ed.lo] + dst.offset);
  if (f.dist[ed.hi] >= 0) consider(f.dist[ed.hi] + ed.length - dst.offset);
  if (src.edge == dst.edge) consider(abs(Rat(src.offset - dst.offset)));
  if (best < 0) throw numeric_error("distance: target unreachable");
  return best;
}

}  // namespace

std::vector<Rat> vertex_distances(const QuantumGraph& g, const ExactPoint& src) {
  return run_dijkstra(g, src).dist;
}

Rat geodesic_distance_exact(const QuantumGraph& g, const ExactPoint& p,
                            const ExactPoint& q) {
  auto f = run_dijkstra(g, p);
  return point_distance(g, f, p, q);
}

double geodesic_distance(const QuantumGraph& g, const GraphPoint& p, const GraphPoint& q) {
  return rat_to_double(geodesic_distance_exact(g, exact_of(p), exact_of(q)));
}

GeodesicPath shortest_path(const QuantumGraph& g, const GraphPoint& p, const GraphPoint& q) {
  const ExactPoint ps = exact_of(p), qs = exact_of(q);
  auto f = run_dijkstra(g, ps);
  const Edge& eq = g.edges.at(qs.edge);
  const Edge& ep = g.edges.at(ps.edge);

  // Route choices into q's edge, plus the direct same-edge run.
  Rat best(-1);
  int enter = kNoVertex;  // vertex through which we enter q's edge; -1 = direct
  auto consider = [&](const Rat& d, int via) {
    if (best < 0 || d < best) {
      best = d;
      enter = via;
    }
  };
  if (f.dist[eq.lo] >= 0) consider(f.dist[eq.lo] + qs.offset, eq.lo);
  if (f.dist[eq.hi] >= 0) consider(f.dist[eq.hi] + eq.length - qs.offset, eq.hi);
  if (ps.edge == qs.edge) consider(abs(Rat(ps.offset - qs.offset)), kNoVertex);
  if (best < 0) throw numeric_error("shortest_path: target unreachable");

  GeodesicPath path;
  path.length = rat_to_double(best);
  if (enter == kNoVertex) {
    path.segments.push_back({ps.edge, rat_to_double(ps.offset), rat_to_double(qs.offset)});
    return path;
  }

  // Walk predecessors back to one of the seeded endpoints of p's edge.
  std::vector<std::pair<int, int>> hops;  // (vertex, edge used to reach it)
  int v = enter;
  while (v != kNoVertex) {
    hops.push_back({v, f.pred_edge[v]});
    v = f.pred_vertex[v];
  }
  std::reverse(hops.begin(), hops.end());

  // First hop leaves p's edge through hops.front().first.
  {
    int first_vertex = hops.front().first;
    double start = rat_to_double(ps.offset);
    double stop = ep.lo == first_vertex ? 0.0 : rat_to_double(ep.length);
    if (std::abs(start - stop) > 0) path.segments.push_back({ps.edge, start, stop});
  }
  for (std::size_t i = 1; i < hops.size(); ++i) {
    int e = hops[i].second;
    const Edge& ed = g.edges[e];
    const double len = rat_to_double(ed.length);
    bool forward = hops[i - 1].first == ed.lo;  // traverse lo -> hi
    path.segments.push_back({e, forward ? 0.0 : len, forward ? len : 0.0});
  }
  {
    const double len = rat_to_double(eq.length);
    double start = enter == eq.lo ? 0.0 : len;
    double stop = rat_to_double(qs.offset);
    if (std::abs(start - stop) > 0) path.segments.push_back({qs.edge, start, stop});
  }
  return path;
}

namespace {

// Exact covered sub-intervals at distance <= radius, given the center's
// distance field: reach from each endpoint plus the direct run on the
// center's own edge, merged per edge.
std::vector<EdgeSegment> ball_content(const QuantumGraph& g, const DistanceField& f,
                                      const ExactPoint& c, const Rat& radius) {
  std::vector<EdgeSegment> content;
  for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
    const Edge& ed = g.edges[e];
    const Rat len = ed.length;
    std::vector<std::pair<Rat, Rat>> covered;
    if (f.dist[ed.lo] >= 0 && f.dist[ed.lo] <= radius)
      covered.push_back({Rat(0), std::min(len, Rat(radius - f.dist[ed.lo]))});
    if (f.dist[ed.hi] >= 0 && f.dist[ed.hi] <= radius)
      covered.push_back({std::max(Rat(0), Rat(len - (radius - f.dist[ed.hi]))), len});
    if (e == c.edge) {
      covered.push_back({std::max(Rat(0), Rat(c.offset - radius)),
                         std::min(len, Rat(c.offset + radius))});
    }
    if (covered.empty()) continue;
    std::sort(covered.begin(), covered.end());
    Rat lo = covered[0].first, hi = covered[0].second;
    for (std::size_t i = 1; i < covered.size(); ++i) {
      if (covered[i].first <= hi) {
        hi = std::max(hi, covered[i].second);
      } else {
        if (lo < hi) content.push_back({e, lo, hi});
        lo = covered[i].first;
        hi = covered[i].second;
      }
    }
    if (lo < hi) content.push_back({e, lo, hi});
  }
  return content;
}

}  // namespace

Ball ball(const QuantumGraph& g, const GraphPoint& center, const Rat& radius) {
  if (radius < 0) throw std::domain_error("ball: radius must be nonnegative");
  const ExactPoint c = exact_of(center);
  auto f = run_dijkstra(g, c);
  Ball b;
  b.center = center;
  b.radius = rat_to_double(radius);
  b.content = ball_content(g, f, c, radius);
  return b;
}

Rat ball_measure(const QuantumGraph& g, const Ball& b) {
  return measure_of(g, b.content);
}

double graph_diameter_upper(const QuantumGraph& g) {
  Rat ecc(0), max_len(0);
  for (const auto& e : g.edges) max_len = std::max(max_len, e.length);
  for (int v = 0; v < static_cast<int>(g.vertices.size()); ++v) {
    int e = g.incident[v].front();
    Rat off = g.edges[e].lo == v ? Rat(0) : g.edges[e].length;
    auto d = vertex_distances(g, {e, off});
    for (const auto& dv : d) ecc = std::max(ecc, dv);
  }
  return rat_to_double(ecc + max_len);
}

GraphPoint random_point(const QuantumGraph& g, SplitStream& rng) {
  // Mass-weighted edge pick via the cumulative weights, then a uniform offset.
  double u = rng.next_unit_open();
  double acc = 0;
  int pick = static_cast<int>(g.edges.size()) - 1;
  for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
    acc += rat_to_double(g.edges[e].weight);
    if (u < acc) {
      pick = e;
      break;
    }
  }
  return {pick, rng.next_unit_open() * rat_to_double(g.edges[pick].length)};
}

AhlforsFit ahlfors_exponent(const QuantumGraph& g, int samples, double r_lo, double r_hi,
                            int radii, std::uint64_t seed) {
  if (!(r_lo > 0) || !(r_hi > r_lo) || samples < 2 || radii < 2)
    throw std::domain_error("ahlfors_exponent: degenerate radius range");
  // Ball cuts are exact rationals, so there is no grid resolution floor; only
  // the upper end needs to stay well inside the space.
  const double diam = graph_diameter_upper(g);
  if (r_hi > diam / 4 + 1e-12)
    throw std::domain_error("ahlfors_exponent: r_hi must stay within diameter/4");

  SplitStream rng(seed, 0xba11);
  AhlforsFit fit;
  std::vector<double> xs, ys;
  for (int s = 0; s < samples; ++s) {
    GraphPoint c = random_point(g, rng);
    const ExactPoint ce = exact_of(c);
    auto field = run_dijkstra(g, ce);  // one Dijkstra per center, shared by all radii
    for (int k = 0; k < radii; ++k) {
      const double r =
          r_lo * std::pow(r_hi / r_lo, radii == 1 ? 0.0 : double(k) / (radii - 1));
      auto content = ball_content(g, field, ce, rat_from_double(r));
      const Rat total = measure_of(g, content);
      fit.rows.push_back({r, rat_to_double(total)});
      xs.push_back(std::log(r));
      ys.push_back(std::log(rat_to_double(total)));
    }
  }

  const std::size_t n = xs.size();
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  fit.exponent = sxy / sxx;
  double ss = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = ys[i] - (my + fit.exponent * (xs[i] - mx));
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / n);
  return fit;
}

PoincareResult poincare_check(const QuantumGraph& g,
                              std::span<const PiecewiseFunction> functions,
                              std::span<const Ball> balls, double c_geom) {
  if (c_geom < 1) throw std::domain_error("poincare_check: expansion factor below 1");
  PoincareResult res;
  constexpr double kZero = 1e-13;
  for (int bi = 0; bi < static_cast<int>(balls.size()); ++bi) {
    const Ball& B = balls[bi];
    const Rat muB = ball_measure(g, B);
    if (muB == 0) continue;
    const Ball CB = ball(g, B.center, rat_from_double(B.radius * c_geom));
    const double diamB = 2 * B.radius;
    for (int fi = 0; fi < static_cast<int>(functions.size()); ++fi) {
      const PiecewiseFunction& u = functions[fi];
      if (!u.is_polynomial())
        throw std::domain_error("poincare_check expects polynomial-mode functions");
      const PiecewiseFunction grad = upper_gradient(u);

      // u_B and the mean deviation over the ball content.
      const Rat mean = integrate_measure_exact(u, B.content) / muB;
      double num = 0;
      for (const auto& seg : B.content) {
        Poly shifted = poly_add(u.edges[seg.edge].coeffs, Poly{-mean});
        const double rho = rat_to_double(g.density(seg.edge));
        num += rho * poly_abs_integral(shifted, seg.a, seg.b);
      }
      const double den = diamB * integrate_measure(grad, CB.content);

      PoincareRow row{fi, bi, num, den, 0};
      if (num <= kZero && den <= kZero) {
        ++res.skipped;
      } else if (den <= kZero) {
        ++res.violations;
        row.ratio = std::numeric_limits<double>::infinity();
        res.rows.push_back(row);
      } else {
        row.ratio = num / den;
        res.constant = std::max(res.constant, row.ratio);
        ++res.evaluated;
        res.rows.push_back(row);
      }
    }
  }
  return res;
}

}  // namespace laakso
