#include "ramsey/cones.hpp"

#include <catch2/catch_amalgamated.hpp>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "oracles.hpp"
#include "ramsey/io.hpp"

using namespace ramsey;

namespace {

Graph witness22() {
  std::ifstream in(std::string(RAMSEY_DATA_DIR) + "/unique_good_22.txt");
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_matrix(ss.str());
}

Graph c3_plus_c4() {
  Graph g(7);
  g.add_edge(0, 1);
  g.add_edge(0, 2);
  g.add_edge(1, 2);
  g.add_edge(3, 4);
  g.add_edge(4, 5);
  g.add_edge(5, 6);
  g.add_edge(6, 3);
  return g;
}

// All cone assignments whose assembly is good, by exhausting every
// assignment and running the (separately validated) goodness check on the
// assembled graph. The search must return exactly these.
std::set<std::vector<std::uint32_t>> brute_good_assignments(const Graph& apex,
                                                            const Graph& base) {
  std::set<std::vector<std::uint32_t>> out;
  const int p = apex.order();
  const std::uint32_t limit = base.vertex_mask();
  std::vector<std::uint32_t> cones(p, 0);
  auto rec = [&](auto&& self, int a) -> void {
    if (a == p) {
      Graph f = assemble(apex, base, cones);
      if (is_good(f, {Pattern::K5MinusP3, Pattern::K5})) out.insert(cones);
      return;
    }
    for (std::uint32_t s = 0;; ++s) {
      cones[a] = s;
      self(self, a + 1);
      if (s == limit) break;
    }
  };
  rec(rec, 0);
  return out;
}

}  // namespace

TEST_CASE("cone constraint primitives") {
  CHECK(!cones_disjoint(0b0110, 0b1100));
  CHECK(cones_disjoint(0b0010, 0b0100));
  CHECK(cones_disjoint(0, 0b11111));

  Graph e3(3);
  CHECK(!no_independent_triple_outside(e3, 0, 0));
  CHECK(no_independent_triple_outside(e3, 0b011, 0));  // one vertex left
  Graph two_triangles = Graph::from_edges(6, {{0, 1}, {0, 2}, {1, 2}, {3, 4}, {3, 5}, {4, 5}});
  CHECK(no_independent_triple_outside(two_triangles, 0, 0));

  Graph p3 = oracles::path(3);
  CHECK(outside_is_complete(p3, 0b010, 0, 0) == false);  // endpoints left, non-adjacent
  CHECK(outside_is_complete(p3, 0b011, 0b100, 0));       // at most one vertex left
  Graph k4_iso = oracles::complete(4).with_vertex(0);
  CHECK(outside_is_complete(k4_iso, 0b10000, 0, 0));

  Graph k2 = oracles::complete(2);
  CHECK(shared_cone_edge_free(k2, 0b01, 0b10));  // empty intersection
  CHECK(!shared_cone_edge_free(k2, 0b11, 0b11));
  Graph e2(2);
  CHECK(shared_cone_edge_free(e2, 0b11, 0b11));  // independent pair shared
}

TEST_CASE("bare triangle over a single base vertex gives four assignments") {
  auto arrangements = search_full(oracles::complete(3), Graph(1));
  CHECK(arrangements.size() == 4);
  std::set<std::vector<std::uint32_t>> got;
  for (const auto& a : arrangements) got.insert(a.cones);
  CHECK(got == std::set<std::vector<std::uint32_t>>{
                   {0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
}

TEST_CASE("assembly shape and decompose round-trip") {
  Graph apex = c3_plus_c4();
  Graph base = oracles::cycle(5);
  std::vector<std::uint32_t> cones(7, 0);
  cones[0] = 0b00101;
  cones[4] = 0b11000;
  Graph f = assemble(apex, base, cones);
  REQUIRE(f.order() == 13);
  CHECK(f.degree(0) == 7);  // the hub sees exactly the apex vertices

  Decomposition d = decompose(f, 0);
  CHECK(d.apex == apex);
  CHECK(d.base == base);
  CHECK(d.cones == cones);
}

TEST_CASE("decompose inverts assemble for random arrangements") {
  std::mt19937 rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    const int p = 1 + int(rng() % 5);
    const int m = 1 + int(rng() % 6);
    Graph apex = oracles::random_graph(rng, p);
    Graph base = oracles::random_graph(rng, m);
    std::vector<std::uint32_t> cones(p);
    for (auto& c : cones) c = rng() & base.vertex_mask();
    Graph f = assemble(apex, base, cones);
    REQUIRE(f.order() == 1 + p + m);
    Decomposition d = decompose(f, 0);
    REQUIRE(d.apex == apex);
    REQUIRE(d.base == base);
    REQUIRE(d.cones == cones);
  }
}

TEST_CASE("search_full returns exactly the assignments with good assemblies") {
  auto bases4 = enumerate_good({Pattern::K5MinusP3, Pattern::K4}, 4);
  std::vector<Graph> apexes = {oracles::complete(3), oracles::complete(3).with_vertex(0)};
  for (const Graph& apex : apexes) {
    for (int n = 2; n <= 4; ++n)
      for (const Graph& base : bases4.at(n - 1).graphs) {
        auto found = search_full(apex, base);
        std::set<std::vector<std::uint32_t>> got;
        for (const auto& arr : found) {
          REQUIRE(arrangement_constraints_ok(arr.apex, arr.base, arr.cones));
          got.insert(arr.cones);
        }
        REQUIRE(got.size() == found.size());  // no duplicates
        CAPTURE(apex.order(), format_graph6(base));
        REQUIRE(got == brute_good_assignments(apex, base));
      }
  }
}

TEST_CASE("filter is implied by a nonempty full search") {
  auto bases4 = enumerate_good({Pattern::K5MinusP3, Pattern::K4}, 4);
  Graph apex = oracles::complete(3).with_vertex(0);  // one extra: 4-cone pattern
  for (const Graph& base : bases4.at(3).graphs) {
    if (!search_full(apex, base).empty())
      CHECK(filter_exists(base, {1, false}));
  }
}

TEST_CASE("filter pattern sanity at tiny orders") {
  CHECK(filter_exists(Graph(1), {0, false}));
  CHECK(filter_exists(oracles::complete(2), {0, false}));
  CHECK_THROWS_AS(filter_exists(Graph(1), {3, false}), std::invalid_argument);
}

TEST_CASE("the order-22 witness decomposes into a valid arrangement") {
  const Graph f = witness22();
  REQUIRE(is_good(f, {Pattern::K5MinusP3, Pattern::K5}));
  REQUIRE(contains_clique(f, 4));
  REQUIRE(!contains_clique(f, 5));
  REQUIRE(k4_degree_sum_ok(f));

  const Decomposition d = decompose(f, 0);
  REQUIRE(d.apex.order() == 7);
  REQUIRE(d.base.order() == 14);
  CHECK(are_isomorphic(d.apex, c3_plus_c4()));
  CHECK(is_good(d.apex, {Pattern::K4MinusP3, Pattern::K5}));
  CHECK(is_good(d.base, {Pattern::K5MinusP3, Pattern::K4}));
  CHECK(arrangement_constraints_ok(d.apex, d.base, d.cones));
  CHECK(assemble(d.apex, d.base, d.cones) == f);

  // every K4 vertex yields a constraint-satisfying decomposition
  for (int x = 0; x < 4; ++x) {
    Decomposition dx = decompose(f, x);
    CAPTURE(x);
    CHECK(arrangement_constraints_ok(dx.apex, dx.base, dx.cones));
  }
}

TEST_CASE("single injected violations break the assembly") {
  const Graph f = witness22();
  const Decomposition d = decompose(f, 0);

  SECTION("a base vertex added to two triangle cones") {
    std::uint32_t tri = 0;
    detail::for_each_triangle(d.apex, [&](std::uint32_t t) {
      if (!tri) tri = t;
    });
    REQUIRE(tri != 0);
    const int a = std::countr_zero(tri);
    const int b = std::countr_zero(tri & (tri - 1));
    auto cones = d.cones;
    const std::uint32_t grab = cones[b] & ~cones[a];
    REQUIRE(grab != 0);
    cones[a] |= grab & (~grab + 1);  // lowest vertex of cone b joins cone a
    Graph bad = assemble(d.apex, d.base, cones);
    CHECK(contains_k5_minus_p3(bad));
  }

  SECTION("a base edge placed inside the shared cone of adjacent extras") {
    int ea = -1, eb = -1;
    for (int a = 3; a < 7 && ea < 0; ++a)
      for (int b = a + 1; b < 7; ++b)
        if (d.apex.has_edge(a, b) && !in_common_triangle(d.apex, a, b)) {
          ea = a;
          eb = b;
          break;
        }
    REQUIRE(ea >= 0);
    int u = -1, w = -1;
    for (int i = 0; i < 14 && u < 0; ++i)
      if (d.base.neighbors(i)) {
        u = i;
        w = std::countr_zero(d.base.neighbors(i));
      }
    REQUIRE(u >= 0);
    auto cones = d.cones;
    cones[ea] |= (1u << u) | (1u << w);
    cones[eb] |= (1u << u) | (1u << w);
    Graph bad = assemble(d.apex, d.base, cones);
    CHECK(contains_k5_minus_p3(bad));
  }

  SECTION("an independent triple uncovered for a non-adjacent pair") {
    std::uint32_t triple = 0;
    detail::for_each_triangle(d.base.complement(), [&](std::uint32_t t) {
      if (!triple) triple = t;
    });
    REQUIRE(triple != 0);
    int a = 0;                        // triangle vertex
    int b = 3;                        // extra, never adjacent to the triangle
    REQUIRE(!d.apex.has_edge(a, b));
    auto cones = d.cones;
    cones[a] &= ~triple;
    cones[b] &= ~triple;
    Graph bad = assemble(d.apex, d.base, cones);
    CHECK(contains_independent_set(bad, 5));
  }
}

TEST_CASE("the witness arrangement is rediscovered by the full search") {
  const Graph f = witness22();
  const Decomposition d = decompose(f, 0);
  auto found = search_full(d.apex, d.base);
  bool contains = false;
  for (const auto& arr : found) {
    Graph g = assemble(arr);
    REQUIRE(is_good(g, {Pattern::K5MinusP3, Pattern::K5}));
    REQUIRE(contains_clique(g, 4));
    if (arr.cones == d.cones) contains = true;
  }
  CHECK(contains);
  // all assemblies are the one known graph
  for (const auto& arr : found) CHECK(are_isomorphic(assemble(arr), f));
}
