#pragma once

#include "laakso/rational.hpp"

#include <vector>

namespace laakso {

/// Dense polynomial with exact coefficients, ascending powers.
using Poly = std::vector<Rat>;

Rat poly_eval(const Poly& p, const Rat& s);
double poly_eval_d(const Poly& p, double s);
Poly poly_derivative(const Poly& p);
Poly poly_shift(const Poly& p, const Rat& c);  // s -> p(s + c)
Poly poly_add(const Poly& a, const Poly& b);
Poly poly_scale(const Poly& p, const Rat& c);
Poly poly_mul(const Poly& a, const Poly& b);
Rat poly_integral(const Poly& p, const Rat& a, const Rat& b);

/// Distinct real roots strictly inside (a, b), ascending (companion-matrix
/// eigenvalues; double precision).
std::vector<double> poly_real_roots(const Poly& p, double a, double b);

/// Integral of |p| over [a, b]: exact piece integrals split at the real roots.
double poly_abs_integral(const Poly& p, const Rat& a, const Rat& b);

}  // namespace laakso
