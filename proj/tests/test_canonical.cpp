#include "ramsey/canonical.hpp"

#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "oracles.hpp"

using namespace ramsey;

TEST_CASE("canonical form is invariant under relabeling") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + int(rng() % 11);
    Graph g = oracles::random_graph(rng, n);
    const CanonicalForm key = canonical_form(g);
    for (int p = 0; p < 8; ++p) {
      auto perm = oracles::random_permutation(rng, n);
      REQUIRE(canonical_form(g.permuted(perm)) == key);
    }
  }
}

TEST_CASE("canonical form handles highly symmetric graphs") {
  for (int n : {10, 17, 25, 31}) {
    Graph empty(n);
    Graph full = oracles::complete(n);
    CHECK(canonical_form(empty).order() == n);
    CHECK(canonical_form(full) != canonical_form(empty));
    // complete bipartite
    Graph kb(n);
    for (int i = 0; i < n / 2; ++i)
      for (int j = n / 2; j < n; ++j) kb.add_edge(i, j);
    std::mt19937 rng(n);
    auto perm = oracles::random_permutation(rng, n);
    CHECK(canonical_form(kb.permuted(perm)) == canonical_form(kb));
  }
}

TEST_CASE("canonical graph packs to its own key") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    Graph g = oracles::random_graph(rng, 2 + int(rng() % 9));
    auto [key, canon] = canonical_form_and_graph(g);
    CHECK(canonical_form(canon) == key);
    CHECK(oracles::isomorphic_brute(g, canon));
  }
}

TEST_CASE("structurally different graphs with equal degree sequences differ") {
  CHECK(canonical_form(oracles::path(4)) !=
        canonical_form(Graph::from_edges(4, {{0, 1}, {0, 2}, {0, 3}})));
}

TEST_CASE("isomorphism decisions match the permutation oracle") {
  Graph c5 = oracles::cycle(5);
  CHECK(are_isomorphic(c5, c5.complement()));
  CHECK(!are_isomorphic(oracles::path(4), oracles::cycle(4)));

  std::mt19937 rng(3);
  for (int trial = 0; trial < 1500; ++trial) {
    const int n = 1 + int(rng() % 7);
    Graph a = oracles::random_graph(rng, n);
    Graph b = (trial % 3 == 0) ? a.permuted(oracles::random_permutation(rng, n))
                               : oracles::random_graph(rng, n);
    CAPTURE(trial, n);
    REQUIRE(are_isomorphic(a, b) == oracles::isomorphic_brute(a, b));
  }
}

TEST_CASE("order-4 and order-5 isomorphism class counts") {
  IsoSet four;
  for (std::uint64_t code = 0; code < 64; ++code)
    four.insert(oracles::graph_from_code(4, code));
  CHECK(four.count() == 11);

  IsoSet five;
  for (std::uint64_t code = 0; code < 1024; ++code)
    five.insert(oracles::graph_from_code(5, code));
  CHECK(five.count() == 34);

  // cross-check the count with the permutation oracle
  std::vector<Graph> reps;
  for (std::uint64_t code = 0; code < 1024; ++code) {
    Graph g = oracles::graph_from_code(5, code);
    bool seen = false;
    for (const Graph& r : reps)
      if (oracles::isomorphic_brute(g, r)) {
        seen = true;
        break;
      }
    if (!seen) reps.push_back(g);
  }
  CHECK(reps.size() == 34);
}

TEST_CASE("iso set insertion is idempotent per class") {
  IsoSet set;
  Graph k3 = oracles::complete(3);
  CHECK(set.insert(k3));
  std::vector<int> perm{2, 0, 1};
  CHECK(!set.insert(k3.permuted(perm)));
  CHECK(set.count() == 1);
}

TEST_CASE("iso set count ignores insertion order") {
  std::mt19937 rng(17);
  std::vector<Graph> stream;
  for (int i = 0; i < 200; ++i) stream.push_back(oracles::random_graph(rng, 6));
  IsoSet forward, backward;
  for (const Graph& g : stream) forward.insert(g);
  std::shuffle(stream.begin(), stream.end(), rng);
  for (const Graph& g : stream) backward.insert(g);
  CHECK(forward.count() == backward.count());

  IsoSet merged;
  IsoSet half;
  for (std::size_t i = 0; i < stream.size(); ++i)
    (i % 2 ? merged : half).insert(stream[i]);
  merged.merge(half);
  CHECK(merged.count() == forward.count());
}

TEST_CASE("keys are stable fixed-layout byte strings") {
  Graph g = Graph::from_edges(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}});
  CanonicalForm k = canonical_form(g);
  CHECK(k.size() == 1 + (10 + 7) / 8);
  CHECK(k.order() == 5);
  CanonicalForm again = canonical_form(g);
  CHECK(k.hex() == again.hex());
}
