#include <doctest.h>

#include "laakso/graph.hpp"
#include "laakso/rng.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <vector>

using namespace laakso;

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int a) { return parent[a] == a ? a : parent[a] = find(parent[a]); }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

struct Census {
  long vertices = 0;
  long edges = 0;
  std::map<int, long> degree_histogram;
  Rat total_weight;
};

// Oracle: build the level-n object directly as 2^n labelled copies of the
// cut interval and glue cut points with union-find over identification pairs,
// with no reference to the production canonicalization.
Census census_by_gluing(const ContractionParams& p, int n) {
  std::set<Rat> cuts = {Rat(0), Rat(1)};
  for (int l = 1; l <= n; ++l)
    for (const auto& w : wormhole_locations(p, l).locations) cuts.insert(w);
  std::vector<Rat> xs(cuts.begin(), cuts.end());
  const long sheets = 1L << n;
  const long points = static_cast<long>(xs.size());

  UnionFind uf(static_cast<int>(points * sheets));
  auto id = [&](long k, long s) { return static_cast<int>(k * sheets + s); };
  for (long k = 0; k < points; ++k) {
    int l = wormhole_level(p, xs[k], n);
    if (l == 0) continue;
    for (long s = 0; s < sheets; ++s) uf.unite(id(k, s), id(k, s ^ (1L << (n - l))));
  }

  Census c;
  std::set<int> roots;
  for (long k = 0; k < points; ++k)
    for (long s = 0; s < sheets; ++s) roots.insert(uf.find(id(k, s)));
  c.vertices = static_cast<long>(roots.size());
  c.edges = (points - 1) * sheets;

  std::map<int, int> degree;
  for (long s = 0; s < sheets; ++s)
    for (long k = 0; k + 1 < points; ++k) {
      degree[uf.find(id(k, s))]++;
      degree[uf.find(id(k + 1, s))]++;
    }
  for (const auto& [root, d] : degree) c.degree_histogram[d]++;

  c.total_weight = 0;
  for (long k = 0; k + 1 < points; ++k)
    c.total_weight += (xs[k + 1] - xs[k]) * sheets / Rat(Int(1) << n);
  return c;
}

std::vector<EdgeSegment> random_segments(const QuantumGraph& g, SplitStream& rng,
                                         int count) {
  std::vector<EdgeSegment> segs;
  std::set<int> used;
  for (int i = 0; i < count; ++i) {
    int e = static_cast<int>(rng.next_below(g.edges.size()));
    if (!used.insert(e).second) continue;  // one segment per edge keeps them disjoint
    const Rat len = g.edges[e].length;
    Int den = 64;
    Int a_num = Int(rng.next_below(64));
    Int b_num = a_num + 1 + Int(rng.next_below(64 - a_num.convert_to<unsigned long>()));
    segs.push_back({e, len * Rat(a_num, den), len * Rat(b_num, den)});
  }
  return segs;
}

}  // namespace

TEST_CASE("level 0 is the unit interval") {
  auto p = params_from_ratio(Rat(1, 2), 3);
  auto g = build_graph(p, 0);
  REQUIRE(g->edges.size() == 1);
  REQUIRE(g->vertices.size() == 2);
  CHECK(g->edges[0].length == Rat(1));
  CHECK(g->edges[0].weight == Rat(1));
  CHECK(g->total_weight() == Rat(1));
  CHECK(g->degree(0) == 1);
  CHECK(g->degree(1) == 1);
}

TEST_CASE("level 1 at t = 1/2: five vertices, four quarter-weight edges") {
  auto p = params_from_ratio(Rat(1, 2), 3);
  auto g = build_graph(p, 1);
  REQUIRE(g->vertices.size() == 5);
  REQUIRE(g->edges.size() == 4);
  int deg1 = 0, deg4 = 0;
  for (int v = 0; v < 5; ++v) {
    if (g->degree(v) == 1) ++deg1;
    if (g->degree(v) == 4) ++deg4;
  }
  CHECK(deg1 == 4);
  CHECK(deg4 == 1);
  for (const auto& e : g->edges) {
    CHECK(e.length == Rat(1, 2));
    CHECK(e.weight == Rat(1, 4));
  }
  // The degree-4 vertex sits at the level-1 wormhole.
  for (int v = 0; v < 5; ++v)
    if (g->degree(v) == 4) CHECK(g->vertices[v].x == Rat(1, 2));
}

TEST_CASE("level 2 at t = 1/2: 14 vertices, 16 edges of length 1/4") {
  auto p = params_from_ratio(Rat(1, 2), 3);
  auto g = build_graph(p, 2);
  CHECK(g->vertices.size() == 14);
  CHECK(g->edges.size() == 16);
  for (const auto& e : g->edges) {
    CHECK(e.length == Rat(1, 4));
    CHECK(e.weight == Rat(1, 16));
  }
  CHECK(g->total_weight() == Rat(1));
}

TEST_CASE("graphs agree with the union-find gluing census") {
  for (const char* ts : {"1/2", "1/3", "9/20"}) {
    auto p = params_from_ratio(rat_parse(ts), 5);
    for (int n = 0; n <= 4; ++n) {
      CAPTURE(ts);
      CAPTURE(n);
      auto g = build_graph(p, n);
      auto c = census_by_gluing(p, n);
      CHECK(static_cast<long>(g->vertices.size()) == c.vertices);
      CHECK(static_cast<long>(g->edges.size()) == c.edges);
      CHECK(g->total_weight() == Rat(1));
      CHECK(c.total_weight == Rat(1));
      std::map<int, long> hist;
      for (int v = 0; v < static_cast<int>(g->vertices.size()); ++v)
        hist[g->degree(v)]++;
      CHECK(hist == c.degree_histogram);
      CHECK(is_connected(*g));
    }
  }
}

TEST_CASE("edge and degree laws for t = 1/2 up to level 5") {
  auto p = params_from_ratio(Rat(1, 2), 5);
  for (int n = 0; n <= 5; ++n) {
    auto g = build_graph(p, n);
    CHECK(static_cast<long>(g->edges.size()) == 1L << (2 * n));  // 4^n
    for (const auto& e : g->edges) CHECK(e.length == Rat(Int(1), Int(1) << n));
    long wormhole_vertices = 0;
    for (int v = 0; v < static_cast<int>(g->vertices.size()); ++v) {
      const auto& x = g->vertices[v].x;
      if (x == 0 || x == 1) {
        CHECK(g->degree(v) == 1);
      } else {
        CHECK(g->degree(v) == 4);
        ++wormhole_vertices;
      }
    }
    // One class per wormhole location and half the sheets: sum_l |W_l| * 2^{n-1}.
    long expected = 0;
    for (int l = 1; l <= n; ++l)
      expected += static_cast<long>(wormhole_locations(p, l).locations.size()) *
                  (1L << (n - 1));
    CHECK(wormhole_vertices == expected);
  }
}

TEST_CASE("edge weights equal length times 2^{-n} and sheets partition mass") {
  auto p = params_from_ratio(Rat(1, 3), 4);
  for (int n = 1; n <= 3; ++n) {
    auto g = build_graph(p, n);
    const Rat sheet_mass(1, Int(1) << n);
    std::map<CantorAddress, Rat> per_sheet;
    for (const auto& e : g->edges) {
      CHECK(e.weight == e.length * sheet_mass);
      per_sheet[e.sheet] += e.weight;
    }
    CHECK(per_sheet.size() == (1u << n));
    for (const auto& [sheet, w] : per_sheet) CHECK(w == sheet_mass);
  }
}

TEST_CASE("projection worked examples F_2 -> F_1 at t = 1/2") {
  auto p = params_from_ratio(Rat(1, 2), 3);
  auto proj = build_projection(p, 2, 1);
  const auto& f2 = *proj.source;
  const auto& f1 = *proj.target;

  // Vertex (x=0, sheet "01") lands at (x=0, sheet "0").
  int v01 = -1;
  for (int v = 0; v < static_cast<int>(f2.vertices.size()); ++v)
    if (f2.vertices[v].x == 0 && f2.vertices[v].sheet == "01") v01 = v;
  REQUIRE(v01 >= 0);
  ExactPoint img = proj.vertex_map[v01];
  CHECK(img.offset == 0);
  CHECK(f1.edges[img.edge].sheet == "0");
  CHECK(f1.edge_x_lo(img.edge) == 0);

  // The wormhole vertex at x = 1/4 lands mid-edge on the [0,1/2] strip of sheet "0".
  int v14 = -1;
  for (int v = 0; v < static_cast<int>(f2.vertices.size()); ++v)
    if (f2.vertices[v].x == Rat(1, 4) && f2.vertices[v].sheet == "00") v14 = v;
  REQUIRE(v14 >= 0);
  img = proj.vertex_map[v14];
  CHECK(img.offset == Rat(1, 4));
  CHECK(f1.edges[img.edge].sheet == "0");
  CHECK(f1.edge_x_lo(img.edge) == 0);
  CHECK(f1.edges[img.edge].length == Rat(1, 2));
}

TEST_CASE("projection composition coherence on random points") {
  auto p = params_from_ratio(Rat(1, 2), 4);
  auto g3 = build_graph(p, 3);
  auto g2 = build_graph(p, 2);
  auto g0 = build_graph(p, 0);
  auto p32 = build_projection(g3, g2);
  auto p20 = build_projection(g2, g0);
  auto p30 = build_projection(g3, g0);
  SplitStream rng(2024, 7);
  for (int i = 0; i < 100; ++i) {
    int e = static_cast<int>(rng.next_below(g3->edges.size()));
    Rat off = g3->edges[e].length * Rat(Int(rng.next_below(128)), 128);
    ExactPoint x{e, off};
    ExactPoint direct = p30.apply(x);
    ExactPoint stepped = p20.apply(p32.apply(x));
    CHECK(direct.edge == stepped.edge);
    CHECK(direct.offset == stepped.offset);
  }
}

TEST_CASE("measure worked examples") {
  auto p = params_from_ratio(Rat(1, 2), 3);
  auto g1 = build_graph(p, 1);
  auto g2 = build_graph(p, 2);

  std::vector<EdgeSegment> whole;
  for (int e = 0; e < static_cast<int>(g2->edges.size()); ++e)
    whole.push_back({e, Rat(0), g2->edges[e].length});
  CHECK(measure_of(*g2, whole) == Rat(1));

  // One edge of F_2 carries 1/16.
  std::vector<EdgeSegment> one = {{0, Rat(0), g2->edges[0].length}};
  CHECK(measure_of(*g2, one) == Rat(1, 16));

  // Pull [0, 1/2] of F_0 into F_1: two quarter-weight edges.
  auto g0 = build_graph(p, 0);
  auto proj = build_projection(g1, g0);
  std::vector<EdgeSegment> half = {{0, Rat(0), Rat(1, 2)}};
  auto pre = preimage_segments(proj, half);
  CHECK(measure_of(*g1, pre) == Rat(1, 2));
  CHECK(measure_of(*g0, half) == Rat(1, 2));

  // Error paths.
  std::vector<EdgeSegment> overlap = {{0, Rat(0), Rat(1, 4)}, {0, Rat(1, 8), Rat(3, 8)}};
  CHECK_THROWS_AS(measure_of(*g1, overlap), std::domain_error);
  std::vector<EdgeSegment> outside = {{0, Rat(0), Rat(2)}};
  CHECK_THROWS_AS(measure_of(*g1, outside), std::domain_error);
}

TEST_CASE("measure projectivity holds exactly for random segment sets") {
  for (const char* ts : {"1/2", "1/3"}) {
    auto p = params_from_ratio(rat_parse(ts), 5);
    for (int n = 1; n <= 4; ++n) {
      auto fine = build_graph(p, n);
      auto coarse = build_graph(p, n - 1);
      auto proj = build_projection(fine, coarse);
      SplitStream rng(99, static_cast<std::uint64_t>(n));
      for (int trial = 0; trial < 200; ++trial) {
        auto segs = random_segments(*coarse, rng, 1 + static_cast<int>(rng.next_below(4)));
        auto pre = preimage_segments(proj, segs);
        CAPTURE(ts);
        CAPTURE(n);
        CHECK(measure_of(*fine, pre) == measure_of(*coarse, segs));
      }
    }
  }
}

TEST_CASE("projection errors") {
  auto p = params_from_ratio(Rat(1, 2), 3);
  CHECK_THROWS_AS(build_projection(p, 1, 1), std::domain_error);
  CHECK_THROWS_AS(build_projection(p, 1, 2), std::domain_error);
  CHECK_THROWS_AS(build_graph(p, 4), std::out_of_range);
}

TEST_CASE("canonical_point collapses vertex representations") {
  auto p = params_from_ratio(Rat(1, 2), 2);
  auto g = build_graph(p, 1);
  // The wormhole vertex reached from any incident edge canonicalizes identically.
  int wormhole = -1;
  for (int v = 0; v < static_cast<int>(g->vertices.size()); ++v)
    if (g->degree(v) == 4) wormhole = v;
  REQUIRE(wormhole >= 0);
  std::set<std::pair<int, double>> canon;
  for (int e : g->incident[wormhole]) {
    double off = g->edges[e].lo == wormhole ? 0.0 : rat_to_double(g->edges[e].length);
    GraphPoint c = canonical_point(*g, {e, off});
    canon.insert({c.edge, c.offset});
  }
  CHECK(canon.size() == 1);
}
