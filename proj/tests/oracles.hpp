#pragma once

// Brute-force reference implementations, independent of the library's
// detectors. Everything here enumerates vertex subsets or permutations
// directly.

#include <algorithm>
#include <random>
#include <vector>

#include "ramsey/graph.hpp"

namespace oracles {

using ramsey::Graph;
using ramsey::Pattern;

inline Graph pattern_graph(Pattern p) {
  switch (p) {
    case Pattern::K3: return Graph::from_edges(3, {{0, 1}, {0, 2}, {1, 2}});
    case Pattern::K4:
      return Graph::from_edges(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
    case Pattern::K5: {
      Graph g(5);
      for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j) g.add_edge(i, j);
      return g;
    }
    case Pattern::K4MinusP3:
      return Graph::from_edges(4, {{0, 1}, {0, 2}, {1, 2}, {2, 3}});
    case Pattern::K5MinusP3:
      return Graph::from_edges(
          5, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}, {4, 0}, {4, 1}});
  }
  return Graph(0);
}

// Subgraph containment by trying every injective vertex map.
inline bool contains_subgraph(const Graph& g, const Graph& pat) {
  const int k = pat.order(), n = g.order();
  if (k > n) return false;
  std::vector<int> map(k, -1);
  std::vector<bool> used(n, false);
  auto rec = [&](auto&& self, int i) -> bool {
    if (i == k) return true;
    for (int v = 0; v < n; ++v) {
      if (used[v]) continue;
      bool ok = true;
      for (int j = 0; j < i && ok; ++j)
        if (pat.has_edge(i, j) && !g.has_edge(v, map[j])) ok = false;
      if (!ok) continue;
      used[v] = true;
      map[i] = v;
      if (self(self, i + 1)) return true;
      used[v] = false;
    }
    return false;
  };
  return rec(rec, 0);
}

inline bool contains_pattern_brute(const Graph& g, Pattern p) {
  return contains_subgraph(g, pattern_graph(p));
}

inline bool is_good_brute(const Graph& g, ramsey::ForbiddenPair spec) {
  return !contains_pattern_brute(g, spec.g_avoid) &&
         !contains_pattern_brute(g.complement(), spec.h_avoid);
}

// Isomorphism by trying all permutations (after the obvious invariants).
inline bool isomorphic_brute(const Graph& a, const Graph& b) {
  if (a.order() != b.order() || a.edge_count() != b.edge_count()) return false;
  std::vector<int> da, db;
  for (int v = 0; v < a.order(); ++v) {
    da.push_back(a.degree(v));
    db.push_back(b.degree(v));
  }
  std::sort(da.begin(), da.end());
  std::sort(db.begin(), db.end());
  if (da != db) return false;
  std::vector<int> perm(a.order());
  for (int i = 0; i < a.order(); ++i) perm[i] = i;
  do {
    if (a.permuted(perm) == b) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

// Graph with the bits of `code` as upper-triangle entries (row-major).
inline Graph graph_from_code(int n, std::uint64_t code) {
  Graph g(n);
  int t = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j, ++t)
      if ((code >> t) & 1) g.add_edge(i, j);
  return g;
}

inline Graph random_graph(std::mt19937& rng, int n, double edge_prob = 0.5) {
  Graph g(n);
  std::bernoulli_distribution coin(edge_prob);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (coin(rng)) g.add_edge(i, j);
  return g;
}

inline std::vector<int> random_permutation(std::mt19937& rng, int n) {
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  return perm;
}

inline Graph cycle(int n) {
  Graph g(n);
  for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

inline Graph complete(int n) {
  Graph g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
  return g;
}

inline Graph path(int n) {
  Graph g(n);
  for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

}  // namespace oracles
