#include "laakso/poly.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace laakso {

Rat poly_eval(const Poly& p, const Rat& s) {
  Rat v = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * s + *it;
  return v;
}

double poly_eval_d(const Poly& p, double s) {
  double v = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * s + rat_to_double(*it);
  return v;
}

Poly poly_derivative(const Poly& p) {
  if (p.size() <= 1) return {};
  Poly d(p.size() - 1);
  for (std::size_t k = 1; k < p.size(); ++k) d[k - 1] = p[k] * Rat(Int(k));
  return d;
}

Poly poly_shift(const Poly& p, const Rat& c) {
  // Horner in (s + c): repeatedly multiply by (s + c) and add coefficients.
  Poly out;
  for (auto it = p.rbegin(); it != p.rend(); ++it) {
    Poly next(out.size() + 1);
    for (std::size_t k = 0; k < out.size(); ++k) {
      next[k + 1] += out[k];
      next[k] += out[k] * c;
    }
    next[0] += *it;
    out = std::move(next);
  }
  if (out.empty()) out.push_back(Rat(0));
  return out;
}

Poly poly_add(const Poly& a, const Poly& b) {
  Poly out(std::max(a.size(), b.size()), Rat(0));
  for (std::size_t k = 0; k < a.size(); ++k) out[k] += a[k];
  for (std::size_t k = 0; k < b.size(); ++k) out[k] += b[k];
  return out;
}

Poly poly_scale(const Poly& p, const Rat& c) {
  Poly out = p;
  for (auto& x : out) x *= c;
  return out;
}

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, Rat(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

Rat poly_integral(const Poly& p, const Rat& a, const Rat& b) {
  Rat va = 0, vb = 0;
  for (std::size_t k = p.size(); k-- > 0;) {
    va = va * a;
    vb = vb * b;
    va += p[k] / Rat(Int(k + 1));
    vb += p[k] / Rat(Int(k + 1));
  }
  return vb * b - va * a;
}

std::vector<double> poly_real_roots(const Poly& p, double a, double b) {
  // Trim the (numerically) leading zeros.
  std::vector<double> c(p.size());
  double scale = 0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    c[k] = rat_to_double(p[k]);
    scale = std::max(scale, std::abs(c[k]));
  }
  std::size_t deg = c.size();
  while (deg > 0 && std::abs(c[deg - 1]) <= 1e-14 * scale) --deg;
  std::vector<double> roots;
  if (deg <= 1) return roots;  // constant
  if (deg == 2) {
    double r = -c[0] / c[1];
    if (r > a && r < b) roots.push_back(r);
    return roots;
  }
  const std::size_t n = deg - 1;
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t k = 0; k < n; ++k) companion(0, k) = -c[n - 1 - k] / c[n];
  for (std::size_t k = 1; k < n; ++k) companion(k, k - 1) = 1.0;
  Eigen::EigenSolver<Eigen::MatrixXd> es(companion, false);
  const double span = std::max(1.0, std::abs(b - a));
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    auto z = es.eigenvalues()[i];
    if (std::abs(z.imag()) > 1e-9 * span) continue;
    double r = z.real();
    if (r > a && r < b) roots.push_back(r);
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end(),
                          [&](double u, double v) { return std::abs(u - v) < 1e-13 * span; }),
              roots.end());
  return roots;
}

double poly_abs_integral(const Poly& p, const Rat& a, const Rat& b) {
  const double ad = rat_to_double(a), bd = rat_to_double(b);
  auto roots = poly_real_roots(p, ad, bd);
  double total = 0;
  Rat lo = a;
  for (double r : roots) {
    Rat hi = rat_from_double(r);
    if (hi <= lo || hi >= b) continue;
    total += std::abs(rat_to_double(poly_integral(p, lo, hi)));
    lo = hi;
  }
  total += std::abs(rat_to_double(poly_integral(p, lo, b)));
  return total;
}

}  // namespace laakso
