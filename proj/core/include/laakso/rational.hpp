#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace laakso {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

/// Exact conversion; every finite double is a dyadic rational.
Rat rat_from_double(double x);

double rat_to_double(const Rat& r);

/// Canonical "p/q" form in lowest terms, q > 0; integers render as "p/1".
std::string rat_to_string(const Rat& r);

/// Accepts "p/q", plain integers, and decimal literals ("0.45" -> 9/20).
Rat rat_parse(std::string_view s);

/// Best rational approximation with denominator <= max_den (Stern-Brocot walk).
Rat rat_approximate(double x, const Int& max_den);

/// Shortest round-trip decimal rendering of a double.
std::string fmt_double(double x);

}  // namespace laakso
