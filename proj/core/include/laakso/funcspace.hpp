#pragma once

#include "laakso/graph.hpp"
#include "laakso/poly.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace laakso {

/// Per-edge representation of a piecewise-smooth function.
///   Poly      exact polynomial in the edge arclength coordinate
///   AbsPoly   |polynomial|; produced by gradients, kinks allowed off vertices
///   Samples   uniform grid values including both endpoints (>= 2)
///   StepConst one value per grid interval (gradients of sampled functions)
enum class FuncKind { Poly, AbsPoly, Samples, StepConst };

struct EdgeFunc {
  FuncKind kind = FuncKind::Poly;
  Poly coeffs;                 // Poly / AbsPoly
  std::vector<double> values;  // Samples / StepConst
};

/// A function on a level-n graph, encoded edge by edge. Continuity at the
/// vertices is what makes it a function on the glued space; gradients skip
/// that requirement (they live off the vertex set).
struct PiecewiseFunction {
  GraphPtr graph;
  std::vector<EdgeFunc> edges;

  bool is_polynomial() const;
  double eval(int edge, double s) const;
  double eval(const GraphPoint& p) const { return eval(p.edge, p.offset); }
  Rat eval_exact(int edge, const Rat& s) const;  // Poly edges only

  /// Largest mismatch across incident edge traces at any vertex.
  double continuity_defect() const;
  void require_continuous(double tol = 1e-12) const;
};

/// The I-coordinate as a function: x on every sheet.
PiecewiseFunction coordinate_function(GraphPtr g);

/// The sign-split quadratic vanishing at the nearest bracketing cut points:
/// +(x-y)(x-z) on the strip of p, the negative on the strip of q, zero
/// elsewhere. p and q must share their x-coordinate, lie on distinct sheets,
/// and sit strictly inside their edges (so x is not an identification point
/// at this level; separate such pairs one level deeper).
PiecewiseFunction separating_function(GraphPtr g, const GraphPoint& p,
                                      const GraphPoint& q);

/// Per-edge |df/dx|, defined off the vertex set.
PiecewiseFunction upper_gradient(const PiecewiseFunction& f);

/// Energy integral of the squared gradient against the measure.
double dirichlet_energy(const PiecewiseFunction& f);
Rat dirichlet_energy_exact(const PiecewiseFunction& f);  // Poly mode only

Rat l2_norm_sq_exact(const PiecewiseFunction& f);  // Poly mode only

/// Composition with the projection: exact for polynomial data.
PiecewiseFunction pullback_function(const Projection& proj, const PiecewiseFunction& f);

/// a*f + b*g on a shared graph, exact in polynomial mode.
PiecewiseFunction lin_comb(const Rat& a, const PiecewiseFunction& f, const Rat& b,
                           const PiecewiseFunction& g);

/// Uniform sampling of a polynomial function; lossless once samples_per_edge
/// exceeds the degree.
PiecewiseFunction to_samples(const PiecewiseFunction& f, int samples_per_edge);

/// Nodewise (f v 0) ^ 1 on a sampled function.
PiecewiseFunction unit_contract(const PiecewiseFunction& f);

/// Integral of f against the measure over edge sub-intervals.
double integrate_measure(const PiecewiseFunction& f, std::span<const EdgeSegment> segs);
Rat integrate_measure_exact(const PiecewiseFunction& f, std::span<const EdgeSegment> segs);

/// Integral of f against arclength over one edge sub-interval (path measure).
double integrate_arclength(const PiecewiseFunction& f, int edge, double s0, double s1);

struct UpperGradientReport {
  int trials = 0;
  int violations = 0;
  double max_slack = 0;  // max of |f(x)-f(y)| - path integral of the gradient
};

/// Samples random point pairs, joins them by geodesics, and checks the upper
/// gradient inequality |f(x)-f(y)| <= int_gamma p_f with 1e-9 slack.
UpperGradientReport verify_upper_gradient_inequality(const PiecewiseFunction& f,
                                                     int trials, std::uint64_t seed);

/// Random element of the level-n smooth class: random rational vertex values
/// joined by random polynomial bridges of the requested degree.
PiecewiseFunction random_smooth_function(GraphPtr g, int degree, std::uint64_t seed,
                                         int denominator = 8, int magnitude = 2);

}  // namespace laakso
