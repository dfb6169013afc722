#pragma once

#include "laakso/rational.hpp"

#include <string>
#include <vector>

namespace laakso {

/// Binary cell address in the Cantor coordinate; "" is the whole set,
/// length = cell depth, concatenation refines.
using CantorAddress = std::string;

/// Contraction data seeding a construction: dimension Q in (1,2], ratio
/// t in (0,1/2] with 1/(j+1) < t <= 1/j, and a branching sequence j_i in
/// {j, j+1} balancing t^m against prod j_i^{-1} at every prefix.
///
/// t is tracked as an exact rational bracket [t_lo, t_hi]; the bracket is
/// degenerate when t itself is rational and has width < 1e-15 otherwise,
/// so prefix validity can be decided exactly for the whole bracket.
struct ContractionParams {
  double Q = 0;
  double t = 0;
  Rat t_lo, t_hi;
  int j = 0;
  std::vector<int> j_seq;  // j_seq[i] is the paper-level index i+1 entry
  int depth_limit = 0;

  bool t_is_exact() const { return t_lo == t_hi; }

  /// prod_{i<=l} j_i, the denominator of every level-l location; D(0) = 1.
  Int level_denominator(int l) const;
};

/// Level-l identification locations, sorted ascending, all strictly inside (0,1).
struct WormholeSet {
  int level = 0;
  std::vector<Rat> locations;
};

/// t = 2^{-1/(Q-1)}, j and a depth-long branching sequence. Q must lie in (1,2].
ContractionParams params_from_dimension(double Q, int depth);

/// Same construction seeded by an exact ratio t in (0, 1/2].
ContractionParams params_from_ratio(const Rat& t, int depth);

/// Branching sequence for a ratio given as a real; the value is snapped to a
/// nearby small-denominator rational when one lies within 1e-12 (doubles
/// cannot distinguish the two, and exact arithmetic needs the true ratio).
std::vector<int> j_sequence(double t, int depth);
std::vector<int> j_sequence(const Rat& t_lo, const Rat& t_hi, int j, int depth);

/// Exact prefix test: (j/(j+1)) * prod j_i^{-1} <= t^m <= ((j+1)/j) * prod j_i^{-1}
/// must hold for the entire bracket [t_lo, t_hi].
bool prefix_balanced(const std::vector<int>& j_prefix, int j, const Rat& t_lo,
                     const Rat& t_hi);

WormholeSet wormhole_locations(const ContractionParams& params, int l);

/// Smallest level l <= max_level whose locations contain x; 0 when x is not a
/// wormhole location at or below max_level (levels never share locations).
int wormhole_level(const ContractionParams& params, const Rat& x, int max_level);

/// Whether (x, a) and (x, b) name one point of the level-n quotient: either
/// a == b, or x is a level-l wormhole location and a, b differ exactly at bit l.
bool identified(const ContractionParams& params, const Rat& x, const CantorAddress& a,
                const CantorAddress& b, int n);

}  // namespace laakso
