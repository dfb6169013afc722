#include "laakso/funcspace.hpp"

#include "laakso/errors.hpp"
#include "laakso/metric.hpp"
#include "laakso/rng.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace laakso {

namespace {

Poly normalized(Poly p) {
  if (p.empty()) p.push_back(Rat(0));
  return p;
}

double samples_interp(const std::vector<double>& v, double len, double s) {
  const int n = static_cast<int>(v.size());
  if (n == 1) return v[0];
  const double h = len / (n - 1);
  double u = std::clamp(s / h, 0.0, double(n - 1));
  int i = std::min(n - 2, static_cast<int>(u));
  double w = u - i;
  return v[i] * (1 - w) + v[i + 1] * w;
}

double step_value(const std::vector<double>& v, double len, double s) {
  const int n = static_cast<int>(v.size());
  const double h = len / n;
  int i = std::clamp(static_cast<int>(s / h), 0, n - 1);
  return v[i];
}

// Piecewise-linear integral of sampled values over [a, b] in arclength.
double samples_integral(const std::vector<double>& v, double len, double a, double b) {
  const int n = static_cast<int>(v.size());
  if (n == 1) return v[0] * (b - a);
  const double h = len / (n - 1);
  double total = 0;
  for (int i = 0; i + 1 < n; ++i) {
    double lo = std::max(a, i * h), hi = std::min(b, (i + 1) * h);
    if (lo >= hi) continue;
    auto line = [&](double s) {
      double w = (s - i * h) / h;
      return v[i] * (1 - w) + v[i + 1] * w;
    };
    total += 0.5 * (line(lo) + line(hi)) * (hi - lo);
  }
  return total;
}

void require_same_graph(const PiecewiseFunction& f, const PiecewiseFunction& g) {
  if (f.graph != g.graph &&
      (f.graph->level != g.graph->level || f.edges.size() != g.edges.size()))
    throw std::domain_error("functions live on different graphs");
}

}  // namespace

bool PiecewiseFunction::is_polynomial() const {
  return std::all_of(edges.begin(), edges.end(),
                     [](const EdgeFunc& e) { return e.kind == FuncKind::Poly; });
}

double PiecewiseFunction::eval(int edge, double s) const {
  const EdgeFunc& ef = edges.at(edge);
  const double len = rat_to_double(graph->edges[edge].length);
  switch (ef.kind) {
    case FuncKind::Poly:
      return poly_eval_d(ef.coeffs, s);
    case FuncKind::AbsPoly:
      return std::abs(poly_eval_d(ef.coeffs, s));
    case FuncKind::Samples:
      return samples_interp(ef.values, len, s);
    case FuncKind::StepConst:
      return step_value(ef.values, len, s);
  }
  return 0;
}

Rat PiecewiseFunction::eval_exact(int edge, const Rat& s) const {
  const EdgeFunc& ef = edges.at(edge);
  if (ef.kind != FuncKind::Poly)
    throw std::domain_error("eval_exact requires polynomial mode");
  return poly_eval(ef.coeffs, s);
}

double PiecewiseFunction::continuity_defect() const {
  double worst = 0;
  for (int v = 0; v < static_cast<int>(graph->vertices.size()); ++v) {
    double lo = 0, hi = 0;
    bool first = true;
    for (int e : graph->incident[v]) {
      const Edge& ed = graph->edges[e];
      const double len = rat_to_double(ed.length);
      for (int end = 0; end < 2; ++end) {
        if ((end == 0 ? ed.lo : ed.hi) != v) continue;
        double val = eval(e, end == 0 ? 0.0 : len);
        if (first) {
          lo = hi = val;
          first = false;
        } else {
          lo = std::min(lo, val);
          hi = std::max(hi, val);
        }
      }
    }
    worst = std::max(worst, hi - lo);
  }
  return worst;
}

void PiecewiseFunction::require_continuous(double tol) const {
  for (const auto& ef : edges)
    if (ef.kind == FuncKind::AbsPoly || ef.kind == FuncKind::StepConst)
      throw std::domain_error("gradient representations are defined off the vertex set");
  if (continuity_defect() > tol)
    throw std::domain_error("function is discontinuous at a vertex");
}

PiecewiseFunction coordinate_function(GraphPtr g) {
  PiecewiseFunction f;
  f.graph = g;
  f.edges.resize(g->edges.size());
  for (int e = 0; e < static_cast<int>(g->edges.size()); ++e)
    f.edges[e] = {FuncKind::Poly, Poly{g->edge_x_lo(e), Rat(1)}, {}};
  return f;
}

PiecewiseFunction separating_function(GraphPtr g, const GraphPoint& p,
                                      const GraphPoint& q) {
  if (!g->has_sheet_info())
    throw std::domain_error("separating_function needs sheet data; rebuild from params");
  if (p.edge == q.edge && std::abs(p.offset - q.offset) <= 1e-12)
    throw std::domain_error("separating_function: the points coincide");
  const Edge& ep = g->edges.at(p.edge);
  const Edge& eq = g->edges.at(q.edge);
  if (ep.sheet == eq.sheet)
    throw std::domain_error("separating_function: points share a level-n cell");
  if (g->edge_x_lo(p.edge) != g->edge_x_lo(q.edge) ||
      std::abs(p.offset - q.offset) > 1e-12)
    throw std::domain_error("separating_function: points must share their x-coordinate");
  const double len = rat_to_double(ep.length);
  if (p.offset <= 1e-12 || p.offset >= len - 1e-12)
    throw std::domain_error(
        "separating_function: x sits on the cut set at this level; "
        "separate the points one level deeper");

  // In the edge arclength coordinate the bracketing cuts are s = 0 and s = len,
  // so the quadratic (x - y)(x - z) becomes s(s - len).
  Poly quad = {Rat(0), -ep.length, Rat(1)};
  PiecewiseFunction f;
  f.graph = g;
  f.edges.assign(g->edges.size(), {FuncKind::Poly, Poly{Rat(0)}, {}});
  f.edges[p.edge] = {FuncKind::Poly, quad, {}};
  f.edges[q.edge] = {FuncKind::Poly, poly_scale(quad, Rat(-1)), {}};
  return f;
}

PiecewiseFunction upper_gradient(const PiecewiseFunction& f) {
  PiecewiseFunction g;
  g.graph = f.graph;
  g.edges.resize(f.edges.size());
  for (std::size_t e = 0; e < f.edges.size(); ++e) {
    const EdgeFunc& ef = f.edges[e];
    switch (ef.kind) {
      case FuncKind::Poly:
        g.edges[e] = {FuncKind::AbsPoly, normalized(poly_derivative(ef.coeffs)), {}};
        break;
      case FuncKind::Samples: {
        if (ef.values.size() < 2)
          throw resolution_error("upper_gradient: sample grid coarser than the edge");
        const double len = rat_to_double(f.graph->edges[e].length);
        const double h = len / (static_cast<int>(ef.values.size()) - 1);
        std::vector<double> slopes(ef.values.size() - 1);
        for (std::size_t i = 0; i + 1 < ef.values.size(); ++i)
          slopes[i] = std::abs(ef.values[i + 1] - ef.values[i]) / h;
        g.edges[e] = {FuncKind::StepConst, {}, std::move(slopes)};
        break;
      }
      default:
        throw std::domain_error("upper_gradient: input is already a gradient");
    }
  }
  return g;
}

Rat dirichlet_energy_exact(const PiecewiseFunction& f) {
  Rat total = 0;
  for (std::size_t e = 0; e < f.edges.size(); ++e) {
    const EdgeFunc& ef = f.edges[e];
    if (ef.kind != FuncKind::Poly)
      throw std::domain_error("dirichlet_energy_exact requires polynomial mode");
    const Edge& ed = f.graph->edges[e];
    Poly d = poly_derivative(ef.coeffs);
    if (d.empty()) continue;
    total += ed.weight / ed.length * poly_integral(poly_mul(d, d), Rat(0), ed.length);
  }
  return total;
}

double dirichlet_energy(const PiecewiseFunction& f) {
  if (f.is_polynomial()) return rat_to_double(dirichlet_energy_exact(f));
  double total = 0;
  for (std::size_t e = 0; e < f.edges.size(); ++e) {
    const EdgeFunc& ef = f.edges[e];
    const Edge& ed = f.graph->edges[e];
    const double rho = rat_to_double(ed.weight / ed.length);
    const double len = rat_to_double(ed.length);
    if (ef.kind == FuncKind::Samples) {
      if (ef.values.size() < 2)
        throw resolution_error("dirichlet_energy: sample grid coarser than the edge");
      const double h = len / (static_cast<int>(ef.values.size()) - 1);
      for (std::size_t i = 0; i + 1 < ef.values.size(); ++i) {
        const double slope = (ef.values[i + 1] - ef.values[i]) / h;
        total += rho * slope * slope * h;
      }
    } else {
      throw std::domain_error("dirichlet_energy needs a function, not a gradient");
    }
  }
  return total;
}

Rat l2_norm_sq_exact(const PiecewiseFunction& f) {
  Rat total = 0;
  for (std::size_t e = 0; e < f.edges.size(); ++e) {
    const EdgeFunc& ef = f.edges[e];
    if (ef.kind != FuncKind::Poly)
      throw std::domain_error("l2_norm_sq_exact requires polynomial mode");
    const Edge& ed = f.graph->edges[e];
    total += ed.weight / ed.length *
             poly_integral(poly_mul(ef.coeffs, ef.coeffs), Rat(0), ed.length);
  }
  return total;
}

PiecewiseFunction pullback_function(const Projection& proj, const PiecewiseFunction& f) {
  if (f.graph->level != proj.target->level || f.edges.size() != proj.target->edges.size())
    throw std::domain_error("pullback_function: function does not live on the target");
  PiecewiseFunction out;
  out.graph = proj.source;
  out.edges.resize(proj.source->edges.size());
  for (std::size_t e = 0; e < out.edges.size(); ++e) {
    const auto& im = proj.edge_map[e];
    const EdgeFunc& tf = f.edges[im.edge];
    switch (tf.kind) {
      case FuncKind::Poly:
      case FuncKind::AbsPoly:
        out.edges[e] = {tf.kind, poly_shift(tf.coeffs, im.shift), {}};
        break;
      case FuncKind::Samples: {
        const double len_s = rat_to_double(proj.source->edges[e].length);
        const double len_t = rat_to_double(proj.target->edges[im.edge].length);
        const int ct = static_cast<int>(tf.values.size());
        const double ht = len_t / (ct - 1);
        const int cs = std::max(2, static_cast<int>(std::lround(len_s / ht)) + 1);
        std::vector<double> vals(cs);
        const double shift = rat_to_double(im.shift);
        for (int i = 0; i < cs; ++i)
          vals[i] = samples_interp(tf.values, len_t, shift + i * len_s / (cs - 1));
        out.edges[e] = {FuncKind::Samples, {}, std::move(vals)};
        break;
      }
      default:
        throw std::domain_error("pullback_function: unsupported representation");
    }
  }
  return out;
}

PiecewiseFunction lin_comb(const Rat& a, const PiecewiseFunction& f, const Rat& b,
                           const PiecewiseFunction& g) {
  require_same_graph(f, g);
  PiecewiseFunction out;
  out.graph = f.graph;
  out.edges.resize(f.edges.size());
  for (std::size_t e = 0; e < f.edges.size(); ++e) {
    const EdgeFunc& fe = f.edges[e];
    const EdgeFunc& ge = g.edges[e];
    if (fe.kind == FuncKind::Poly && ge.kind == FuncKind::Poly) {
      out.edges[e] = {FuncKind::Poly,
                      poly_add(poly_scale(fe.coeffs, a), poly_scale(ge.coeffs, b)),
                      {}};
    } else if (fe.kind == FuncKind::Samples && ge.kind == FuncKind::Samples &&
               fe.values.size() == ge.values.size()) {
      std::vector<double> v(fe.values.size());
      const double ad = rat_to_double(a), bd = rat_to_double(b);
      for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = ad * fe.values[i] + bd * ge.values[i];
      out.edges[e] = {FuncKind::Samples, {}, std::move(v)};
    } else {
      throw std::domain_error("lin_comb: representation mismatch");
    }
  }
  return out;
}

PiecewiseFunction to_samples(const PiecewiseFunction& f, int samples_per_edge) {
  if (samples_per_edge < 2) throw std::domain_error("to_samples: need >= 2 samples");
  PiecewiseFunction out;
  out.graph = f.graph;
  out.edges.resize(f.edges.size());
  for (std::size_t e = 0; e < f.edges.size(); ++e) {
    const double len = rat_to_double(f.graph->edges[e].length);
    std::vector<double> v(samples_per_edge);
    for (int i = 0; i < samples_per_edge; ++i)
      v[i] = f.eval(static_cast<int>(e), i * len / (samples_per_edge - 1));
    out.edges[e] = {FuncKind::Samples, {}, std::move(v)};
  }
  return out;
}

PiecewiseFunction unit_contract(const PiecewiseFunction& f) {
  PiecewiseFunction src = f;
  if (f.is_polynomial()) {
    // Contraction leaves polynomial mode; evaluate on a grid with h <= 2^-10.
    double max_len = 0;
    for (const auto& ed : f.graph->edges)
      max_len = std::max(max_len, rat_to_double(ed.length));
    const int count = std::max(2, static_cast<int>(std::ceil(max_len * 1024)) + 1);
    src = to_samples(f, count);
  }
  for (auto& ef : src.edges) {
    if (ef.kind != FuncKind::Samples)
      throw std::domain_error("unit_contract needs a function, not a gradient");
    for (double& v : ef.values) v = std::clamp(v, 0.0, 1.0);
  }
  return src;
}

double integrate_arclength(const PiecewiseFunction& f, int edge, double s0, double s1) {
  if (s1 < s0) std::swap(s0, s1);
  const EdgeFunc& ef = f.edges.at(edge);
  const double len = rat_to_double(f.graph->edges[edge].length);
  switch (ef.kind) {
    case FuncKind::Poly:
      return rat_to_double(
          poly_integral(ef.coeffs, rat_from_double(s0), rat_from_double(s1)));
    case FuncKind::AbsPoly:
      return poly_abs_integral(ef.coeffs, rat_from_double(s0), rat_from_double(s1));
    case FuncKind::Samples:
      return samples_integral(ef.values, len, s0, s1);
    case FuncKind::StepConst: {
      const int n = static_cast<int>(ef.values.size());
      const double h = len / n;
      double total = 0;
      for (int i = 0; i < n; ++i) {
        double lo = std::max(s0, i * h), hi = std::min(s1, (i + 1) * h);
        if (lo < hi) total += ef.values[i] * (hi - lo);
      }
      return total;
    }
  }
  return 0;
}

double integrate_measure(const PiecewiseFunction& f, std::span<const EdgeSegment> segs) {
  double total = 0;
  for (const auto& seg : segs) {
    const Edge& ed = f.graph->edges.at(seg.edge);
    const double rho = rat_to_double(ed.weight / ed.length);
    total += rho * integrate_arclength(f, seg.edge, rat_to_double(seg.a),
                                       rat_to_double(seg.b));
  }
  return total;
}

Rat integrate_measure_exact(const PiecewiseFunction& f,
                            std::span<const EdgeSegment> segs) {
  Rat total = 0;
  for (const auto& seg : segs) {
    const EdgeFunc& ef = f.edges.at(seg.edge);
    if (ef.kind != FuncKind::Poly)
      throw std::domain_error("integrate_measure_exact requires polynomial mode");
    const Edge& ed = f.graph->edges[seg.edge];
    total += ed.weight / ed.length * poly_integral(ef.coeffs, seg.a, seg.b);
  }
  return total;
}

UpperGradientReport verify_upper_gradient_inequality(const PiecewiseFunction& f,
                                                     int trials, std::uint64_t seed) {
  const PiecewiseFunction grad = upper_gradient(f);
  SplitStream rng(seed, 0xf00d);
  UpperGradientReport rep;
  rep.trials = trials;
  for (int i = 0; i < trials; ++i) {
    GraphPoint p = random_point(*f.graph, rng);
    GraphPoint q = random_point(*f.graph, rng);
    GeodesicPath path = shortest_path(*f.graph, p, q);
    double along = 0;
    for (const auto& seg : path.segments)
      along += integrate_arclength(grad, seg.edge, seg.s_from, seg.s_to);
    const double lhs = std::abs(f.eval(p) - f.eval(q));
    const double slack = lhs - along;
    rep.max_slack = std::max(rep.max_slack, slack);
    if (slack > 1e-9) ++rep.violations;
  }
  return rep;
}

PiecewiseFunction random_smooth_function(GraphPtr g, int degree, std::uint64_t seed,
                                         int denominator, int magnitude) {
  if (degree < 1 || degree > 6)
    throw std::domain_error("random_smooth_function: degree must lie in [1, 6]");
  SplitStream rng(seed, 0x5eed);
  const long span = 2L * magnitude * denominator + 1;
  auto coin = [&]() {
    return Rat(Int(static_cast<long>(rng.next_below(span)) - magnitude * denominator),
               Int(denominator));
  };
  std::vector<Rat> vertex_value(g->vertices.size());
  for (auto& v : vertex_value) v = coin();

  PiecewiseFunction f;
  f.graph = g;
  f.edges.resize(g->edges.size());
  for (int e = 0; e < static_cast<int>(g->edges.size()); ++e) {
    const Edge& ed = g->edges[e];
    const Rat len = ed.length;
    const Rat vlo = vertex_value[ed.lo];
    const Rat vhi = vertex_value[ed.hi];
    Poly p = {vlo, (vhi - vlo) / len};
    if (degree >= 2) {
      Poly bump = {Rat(0), len, Rat(-1)};  // s (len - s), vanishes at both ends
      Poly q;
      const Rat unit = Rat(4) / (len * len);  // bump * unit peaks at 1
      Rat len_pow = 1;
      for (int k = 0; k + 2 <= degree; ++k) {
        q.push_back(coin() * unit / len_pow);  // keep (s/len)^k scaling
        len_pow *= len;
      }
      p = poly_add(p, poly_mul(bump, q));
    }
    f.edges[e] = {FuncKind::Poly, std::move(p), {}};
  }
  return f;
}

}  // namespace laakso
