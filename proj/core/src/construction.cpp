#include "laakso/construction.hpp"

#include "laakso/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace laakso {

namespace {

constexpr double kSnapTol = 1e-12;
const Int kSnapMaxDen = 4096;

// Rational bracket for a real ratio. Exact rationals nearby get snapped;
// otherwise a few ulps of slack on each side keeps the true value inside
// while the width of [t_lo^m, t_hi^m] stays below 1e-15 for t <= 1/2.
std::pair<Rat, Rat> bracket_ratio(double t) {
  Rat snap = rat_approximate(t, kSnapMaxDen);
  if (std::abs(rat_to_double(snap) - t) <= kSnapTol && snap > 0) return {snap, snap};
  double lo = t, hi = t;
  for (int i = 0; i < 4; ++i) {
    lo = std::nextafter(lo, 0.0);
    hi = std::nextafter(hi, 1.0);
  }
  return {rat_from_double(lo), rat_from_double(hi)};
}

int branching_integer(const Rat& t_lo, const Rat& t_hi) {
  // j with 1/(j+1) < t <= 1/j, decided for the whole bracket.
  int guess = static_cast<int>(std::floor(1.0 / rat_to_double(t_hi)));
  for (int j = std::max(1, guess - 1); j <= guess + 1; ++j) {
    if (Rat(1, j + 1) < t_lo && t_hi <= Rat(1, j)) return j;
  }
  throw construction_error("branching integer is ambiguous for this ratio bracket; "
                           "pass the ratio as an exact rational");
}

double q_from_ratio(double t) { return 1.0 + std::log(2.0) / std::log(1.0 / t); }

ContractionParams finish_params(double Q, Rat t_lo, Rat t_hi, int depth) {
  if (depth < 1) throw std::domain_error("depth must be >= 1");
  ContractionParams p;
  p.Q = Q;
  p.t_lo = std::move(t_lo);
  p.t_hi = std::move(t_hi);
  p.t = rat_to_double((p.t_lo + p.t_hi) / 2);
  p.j = branching_integer(p.t_lo, p.t_hi);
  p.j_seq = j_sequence(p.t_lo, p.t_hi, p.j, depth);
  p.depth_limit = depth;
  if (std::abs(q_from_ratio(p.t) - p.Q) > 1e-12)
    throw construction_error("dimension/ratio relation ln2/ln(1/t) = Q-1 violated");
  return p;
}

}  // namespace

Int ContractionParams::level_denominator(int l) const {
  if (l < 0 || l > static_cast<int>(j_seq.size()))
    throw std::out_of_range("level_denominator: level beyond materialized sequence");
  Int d = 1;
  for (int i = 0; i < l; ++i) d *= j_seq[i];
  return d;
}

bool prefix_balanced(const std::vector<int>& j_prefix, int j, const Rat& t_lo,
                     const Rat& t_hi) {
  Rat inv_prod = 1;
  Rat lo_pow = 1, hi_pow = 1;
  for (std::size_t m = 0; m < j_prefix.size(); ++m) {
    inv_prod /= j_prefix[m];
    lo_pow *= t_lo;
    hi_pow *= t_hi;
    if (!(Rat(j, j + 1) * inv_prod <= lo_pow && hi_pow <= Rat(j + 1, j) * inv_prod))
      return false;
  }
  return true;
}

std::vector<int> j_sequence(const Rat& t_lo, const Rat& t_hi, int j, int depth) {
  if (depth < 1) throw std::domain_error("j_sequence: depth must be >= 1");
  const double log_t = std::log(rat_to_double((t_lo + t_hi) / 2));
  std::vector<int> seq;
  seq.reserve(depth);
  Rat inv_prod = 1, lo_pow = 1, hi_pow = 1;
  double log_prod = 0;
  for (int m = 1; m <= depth; ++m) {
    lo_pow *= t_lo;
    hi_pow *= t_hi;
    const Rat lower = Rat(j, j + 1);
    const Rat upper = Rat(j + 1, j);
    int pick = 0;
    double pick_balance = 0;
    for (int cand : {j, j + 1}) {
      Rat ip = inv_prod / cand;
      if (!(lower * ip <= lo_pow && hi_pow <= upper * ip)) continue;
      double balance = std::abs(log_prod + std::log(double(cand)) + m * log_t);
      if (pick == 0 || balance < pick_balance) {  // ties keep the smaller cand
        pick = cand;
        pick_balance = balance;
      }
    }
    if (pick == 0)
      throw construction_error("no branching choice satisfies the balance inequality");
    seq.push_back(pick);
    inv_prod /= pick;
    log_prod += std::log(double(pick));
  }
  return seq;
}

std::vector<int> j_sequence(double t, int depth) {
  if (!(t > 0.0 && t <= 0.5)) throw std::domain_error("j_sequence: t must lie in (0, 1/2]");
  auto [lo, hi] = bracket_ratio(t);
  return j_sequence(lo, hi, branching_integer(lo, hi), depth);
}

ContractionParams params_from_dimension(double Q, int depth) {
  if (!(Q > 1.0 && Q <= 2.0)) throw std::domain_error("Q must lie in (1, 2]");
  const double t = std::exp2(-1.0 / (Q - 1.0));
  auto [lo, hi] = bracket_ratio(t);
  return finish_params(Q, lo, hi, depth);
}

ContractionParams params_from_ratio(const Rat& t, int depth) {
  if (!(t > 0 && t <= Rat(1, 2))) throw std::domain_error("t must lie in (0, 1/2]");
  return finish_params(q_from_ratio(rat_to_double(t)), t, t, depth);
}

WormholeSet wormhole_locations(const ContractionParams& params, int l) {
  if (l < 1 || l > params.depth_limit)
    throw std::out_of_range("wormhole_locations: level outside [1, depth_limit]");
  // w(m_1,...,m_l) = sum m_i prod_{h<=i} j_h^{-1} with 0 <= m_i < j_i, 0 < m_l.
  // Equivalently k / D_l over 0 < k < D_l with j_l not dividing k, ascending.
  const Int d = params.level_denominator(l);
  const int jl = params.j_seq[l - 1];
  WormholeSet out;
  out.level = l;
  out.locations.reserve(static_cast<std::size_t>((jl - 1) * (d / jl).convert_to<long>()));
  for (Int k = 1; k < d; ++k) {
    if (k % jl == 0) continue;
    out.locations.emplace_back(k, d);
  }
  return out;
}

int wormhole_level(const ContractionParams& params, const Rat& x, int max_level) {
  if (x <= 0 || x >= 1) return 0;
  max_level = std::min(max_level, static_cast<int>(params.j_seq.size()));
  Int d = 1;
  for (int l = 1; l <= max_level; ++l) {
    d *= params.j_seq[l - 1];
    if (d % Int(denominator(x)) == 0)
      return l;  // smallest l with D_l * x integral; the last digit is nonzero there
  }
  return 0;
}

bool identified(const ContractionParams& params, const Rat& x, const CantorAddress& a,
                const CantorAddress& b, int n) {
  if (static_cast<int>(a.size()) != n || static_cast<int>(b.size()) != n)
    throw std::domain_error("identified: address lengths must equal the level");
  if (n > params.depth_limit)
    throw std::out_of_range("identified: level exceeds depth_limit");
  if (x < 0 || x > 1) throw std::domain_error("identified: x outside [0, 1]");
  if (a == b) return true;
  int diff = -1;
  for (int i = 0; i < n; ++i) {
    if (a[i] != b[i]) {
      if (diff >= 0) return false;  // more than one differing bit
      diff = i;
    }
  }
  return wormhole_level(params, x, n) == diff + 1;
}

}  // namespace laakso
