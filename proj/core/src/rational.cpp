#include "laakso/rational.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

namespace laakso {

Rat rat_from_double(double x) {
  if (!std::isfinite(x)) throw std::domain_error("rat_from_double: non-finite value");
  if (x == 0.0) return Rat(0);
  int exp = 0;
  double mant = std::frexp(x, &exp);  // x = mant * 2^exp, |mant| in [0.5, 1)
  auto m = static_cast<std::int64_t>(std::ldexp(mant, 53));
  exp -= 53;
  Rat r(m);
  if (exp >= 0) {
    r *= Rat(Int(1) << exp);
  } else {
    r /= Rat(Int(1) << -exp);
  }
  return r;
}

double rat_to_double(const Rat& r) { return r.convert_to<double>(); }

std::string rat_to_string(const Rat& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

Rat rat_parse(std::string_view s) {
  if (s.empty()) throw std::invalid_argument("rat_parse: empty string");
  const auto slash = s.find('/');
  if (slash != std::string_view::npos) {
    Int num(std::string(s.substr(0, slash)));
    Int den(std::string(s.substr(slash + 1)));
    if (den == 0) throw std::invalid_argument("rat_parse: zero denominator");
    return Rat(num, den);
  }
  const auto dot = s.find('.');
  if (dot == std::string_view::npos) {
    return Rat(Int(std::string(s)));
  }
  std::string digits(s.substr(0, dot));
  std::string frac(s.substr(dot + 1));
  for (char c : frac)
    if (c < '0' || c > '9') throw std::invalid_argument("rat_parse: bad decimal literal");
  bool neg = !digits.empty() && digits[0] == '-';
  Int whole = digits.empty() || digits == "-" ? Int(0) : Int(digits);
  Int scale = 1;
  for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
  Int fnum = frac.empty() ? Int(0) : Int(frac);
  Rat r = Rat(whole) + (neg ? -Rat(fnum, scale) : Rat(fnum, scale));
  return r;
}

Rat rat_approximate(double x, const Int& max_den) {
  if (!std::isfinite(x)) throw std::domain_error("rat_approximate: non-finite value");
  bool neg = x < 0;
  Rat target = rat_from_double(neg ? -x : x);
  // Continued-fraction convergents of |x|, capped denominator.
  Int p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  Rat rem = target;
  Rat best(0);
  while (true) {
    Int a = static_cast<Int>(numerator(rem) / denominator(rem));
    Int p2 = a * p1 + p0;
    Int q2 = a * q1 + q0;
    if (q2 > max_den) {
      // Largest admissible semiconvergent.
      Int k = (max_den - q0) / q1;
      Int ps = k * p1 + p0, qs = k * q1 + q0;
      Rat conv(p1, q1), semi(ps, qs);
      best = (q1 <= max_den && abs(conv - target) <= abs(semi - target)) ? conv : semi;
      break;
    }
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    Rat frac = rem - Rat(a);
    if (frac == 0) { best = Rat(p1, q1); break; }
    rem = Rat(1) / frac;
  }
  return neg ? -best : best;
}

std::string fmt_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

}  // namespace laakso
