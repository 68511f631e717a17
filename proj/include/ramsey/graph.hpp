#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ramsey {

/// Undirected simple graph on at most 31 vertices, stored as one adjacency
/// bit row per vertex. Row v has bit u set iff uv is an edge; rows stay
/// symmetric, diagonal-free, and zero at positions >= order().
class Graph {
 public:
  static constexpr int kMaxVertices = 31;

  Graph() : n_(0) { rows_.fill(0); }

  explicit Graph(int n) : n_(n) {
    if (n < 0 || n > kMaxVertices)
      throw std::invalid_argument("graph order out of range: " + std::to_string(n));
    rows_.fill(0);
  }

  static Graph from_edges(int n, std::span<const std::pair<int, int>> edges) {
    Graph g(n);
    for (auto [u, v] : edges) g.add_edge(u, v);
    return g;
  }

  static Graph from_edges(int n, std::initializer_list<std::pair<int, int>> edges) {
    return from_edges(n, std::span<const std::pair<int, int>>(edges.begin(), edges.size()));
  }

  int order() const { return n_; }

  std::uint32_t vertex_mask() const {
    return n_ == 0 ? 0u : (n_ == 32 ? ~0u : ((1u << n_) - 1u));
  }

  std::uint32_t neighbors(int v) const { return rows_[v]; }

  int degree(int v) const { return std::popcount(rows_[v]); }

  bool has_edge(int u, int v) const { return (rows_[u] >> v) & 1u; }

  int edge_count() const {
    int twice = 0;
    for (int v = 0; v < n_; ++v) twice += std::popcount(rows_[v]);
    return twice / 2;
  }

  void add_edge(int u, int v) {
    check_endpoints(u, v);
    rows_[u] |= 1u << v;
    rows_[v] |= 1u << u;
  }

  void remove_edge(int u, int v) {
    check_endpoints(u, v);
    rows_[u] &= ~(1u << v);
    rows_[v] &= ~(1u << u);
  }

  void toggle_edge(int u, int v) {
    check_endpoints(u, v);
    rows_[u] ^= 1u << v;
    rows_[v] ^= 1u << u;
  }

  Graph complement() const {
    Graph c(n_);
    const std::uint32_t full = vertex_mask();
    for (int v = 0; v < n_; ++v) c.rows_[v] = full & ~rows_[v] & ~(1u << v);
    return c;
  }

  /// Appends vertex n with the given neighborhood (bits over 0..n-1).
  Graph with_vertex(std::uint32_t neighborhood) const {
    if (n_ >= kMaxVertices) throw std::invalid_argument("graph is at the vertex cap");
    if (neighborhood & ~vertex_mask())
      throw std::invalid_argument("neighborhood has bits outside the graph");
    Graph g = *this;
    g.n_ = n_ + 1;
    g.rows_[n_] = neighborhood;
    while (neighborhood) {
      int u = std::countr_zero(neighborhood);
      neighborhood &= neighborhood - 1;
      g.rows_[u] |= 1u << n_;
    }
    return g;
  }

  /// Subgraph induced by the set bits of `mask`, relabeled to 0..k-1 in
  /// ascending original order.
  Graph induced(std::uint32_t mask) const {
    mask &= vertex_mask();
    std::array<int, kMaxVertices> newlabel{};
    int k = 0;
    for (int v = 0; v < n_; ++v)
      if ((mask >> v) & 1u) newlabel[v] = k++;
    Graph g(k);
    for (int v = 0; v < n_; ++v) {
      if (!((mask >> v) & 1u)) continue;
      std::uint32_t row = rows_[v] & mask;
      while (row) {
        int u = std::countr_zero(row);
        row &= row - 1;
        g.rows_[newlabel[v]] |= 1u << newlabel[u];
      }
    }
    return g;
  }

  /// Relabeled copy: vertex v of the result is vertex perm[v] of *this.
  Graph permuted(std::span<const int> perm) const {
    Graph g(n_);
    for (int v = 0; v < n_; ++v)
      for (int u = v + 1; u < n_; ++u)
        if (has_edge(perm[v], perm[u])) g.add_edge(v, u);
    return g;
  }

  bool operator==(const Graph& o) const {
    if (n_ != o.n_) return false;
    for (int v = 0; v < n_; ++v)
      if (rows_[v] != o.rows_[v]) return false;
    return true;
  }

 private:
  void check_endpoints(int u, int v) const {
    if (u < 0 || v < 0 || u >= n_ || v >= n_)
      throw std::invalid_argument("edge endpoint out of range");
    if (u == v) throw std::invalid_argument("self-loop rejected");
  }

  std::array<std::uint32_t, kMaxVertices> rows_;
  int n_;
};

/// The five small patterns the searches forbid. K4MinusP3 is the paw
/// (triangle plus pendant vertex); K5MinusP3 is a K4 plus a vertex adjacent
/// to two of its vertices.
enum class Pattern { K3, K4, K5, K4MinusP3, K5MinusP3 };

inline const char* pattern_name(Pattern p) {
  switch (p) {
    case Pattern::K3: return "k3";
    case Pattern::K4: return "k4";
    case Pattern::K5: return "k5";
    case Pattern::K4MinusP3: return "k4mp3";
    case Pattern::K5MinusP3: return "k5mp3";
  }
  return "?";
}

/// (G,H)-goodness spec: g_avoid is forbidden in the graph, h_avoid in its
/// complement.
struct ForbiddenPair {
  Pattern g_avoid;
  Pattern h_avoid;
  bool operator==(const ForbiddenPair&) const = default;
};

namespace detail {

// True iff `cand` contains a clique of size k; vertices are consumed in
// ascending order so each clique is visited once.
inline bool clique_in(const Graph& g, std::uint32_t cand, int k) {
  if (k <= 0) return true;
  while (cand) {
    if (std::popcount(cand) < k) return false;
    int v = std::countr_zero(cand);
    cand &= cand - 1;
    if (clique_in(g, g.neighbors(v) & cand, k - 1)) return true;
  }
  return false;
}

// Calls fn(mask) for every triangle of g, as a 3-bit vertex mask.
template <typename Fn>
inline void for_each_triangle(const Graph& g, Fn&& fn) {
  for (int u = 0; u < g.order(); ++u) {
    std::uint32_t vs = g.neighbors(u) >> (u + 1) << (u + 1);
    while (vs) {
      int v = std::countr_zero(vs);
      vs &= vs - 1;
      std::uint32_t ws = g.neighbors(u) & g.neighbors(v);
      ws = ws >> (v + 1) << (v + 1);
      while (ws) {
        int w = std::countr_zero(ws);
        ws &= ws - 1;
        fn((1u << u) | (1u << v) | (1u << w));
      }
    }
  }
}

// Calls fn(mask) for every K4 of g, as a 4-bit vertex mask.
template <typename Fn>
inline void for_each_k4(const Graph& g, Fn&& fn) {
  for_each_triangle(g, [&](std::uint32_t t) {
    std::uint32_t common = g.vertex_mask();
    std::uint32_t bits = t;
    int top = 0;
    while (bits) {
      int v = std::countr_zero(bits);
      bits &= bits - 1;
      common &= g.neighbors(v);
      top = v;
    }
    common = common >> (top + 1) << (top + 1);
    while (common) {
      int w = std::countr_zero(common);
      common &= common - 1;
      fn(t | (1u << w));
    }
  });
}

}  // namespace detail

inline bool contains_clique(const Graph& g, int k) {
  if (k <= 0) return true;
  if (k > g.order()) return false;
  return detail::clique_in(g, g.vertex_mask(), k);
}

inline bool contains_independent_set(const Graph& g, int k) {
  return contains_clique(g.complement(), k);
}

/// Paw containment: some triangle has an outside vertex with at least one
/// edge into it.
inline bool contains_k4_minus_p3(const Graph& g) {
  bool found = false;
  detail::for_each_triangle(g, [&](std::uint32_t t) {
    if (found) return;
    std::uint32_t reach = 0;
    std::uint32_t bits = t;
    while (bits) {
      int v = std::countr_zero(bits);
      bits &= bits - 1;
      reach |= g.neighbors(v);
    }
    if (reach & ~t) found = true;
  });
  return found;
}

/// K5-P3 containment: some K4 has an outside vertex adjacent to at least
/// two of its vertices.
inline bool contains_k5_minus_p3(const Graph& g) {
  bool found = false;
  detail::for_each_k4(g, [&](std::uint32_t m) {
    if (found) return;
    std::uint32_t rest = g.vertex_mask() & ~m;
    while (rest) {
      int w = std::countr_zero(rest);
      rest &= rest - 1;
      if (std::popcount(g.neighbors(w) & m) >= 2) {
        found = true;
        return;
      }
    }
  });
  return found;
}

inline bool contains_pattern(const Graph& g, Pattern p) {
  switch (p) {
    case Pattern::K3: return contains_clique(g, 3);
    case Pattern::K4: return contains_clique(g, 4);
    case Pattern::K5: return contains_clique(g, 5);
    case Pattern::K4MinusP3: return contains_k4_minus_p3(g);
    case Pattern::K5MinusP3: return contains_k5_minus_p3(g);
  }
  return false;
}

inline bool is_good(const Graph& g, ForbiddenPair spec) {
  return !contains_pattern(g, spec.g_avoid) &&
         !contains_pattern(g.complement(), spec.h_avoid);
}

namespace detail {

// Pattern occurrence with vertex v as a participant. Used by the
// incremental goodness check: if g minus v is pattern-free, g contains the
// pattern iff some occurrence runs through v.
inline bool pattern_through_vertex(const Graph& g, int v, Pattern p) {
  switch (p) {
    case Pattern::K3:
      return clique_in(g, g.neighbors(v), 2);
    case Pattern::K4:
      return clique_in(g, g.neighbors(v), 3);
    case Pattern::K5:
      return clique_in(g, g.neighbors(v), 4);
    case Pattern::K4MinusP3: {
      bool found = false;
      for_each_triangle(g, [&](std::uint32_t t) {
        if (found) return;
        if ((t >> v) & 1u) {
          std::uint32_t reach = 0;
          std::uint32_t bits = t;
          while (bits) {
            int a = std::countr_zero(bits);
            bits &= bits - 1;
            reach |= g.neighbors(a);
          }
          if (reach & ~t) found = true;
        } else if (g.neighbors(v) & t) {
          found = true;
        }
      });
      return found;
    }
    case Pattern::K5MinusP3: {
      bool found = false;
      for_each_k4(g, [&](std::uint32_t m) {
        if (found) return;
        if ((m >> v) & 1u) {
          std::uint32_t rest = g.vertex_mask() & ~m;
          while (rest) {
            int w = std::countr_zero(rest);
            rest &= rest - 1;
            if (std::popcount(g.neighbors(w) & m) >= 2) {
              found = true;
              return;
            }
          }
        } else if (std::popcount(g.neighbors(v) & m) >= 2) {
          found = true;
        }
      });
      return found;
    }
  }
  return false;
}

}  // namespace detail

/// Goodness of g checked by examining only pattern occurrences through
/// vertex v. Precondition: g with v deleted is already good for spec.
/// Result equals is_good(g, spec).
inline bool is_good_extension(const Graph& g, int v, ForbiddenPair spec) {
  return !detail::pattern_through_vertex(g, v, spec.g_avoid) &&
         !detail::pattern_through_vertex(g.complement(), v, spec.h_avoid);
}

/// Degree-sum bound satisfied by every (K5-P3,K5;n)-good graph: the degrees
/// of any K4 sum to at most n+8, because the K4's neighborhoods beyond it
/// must be pairwise disjoint. Vacuously true without a K4.
inline bool k4_degree_sum_ok(const Graph& g) {
  bool ok = true;
  detail::for_each_k4(g, [&](std::uint32_t m) {
    int sum = 0;
    while (m) {
      int v = std::countr_zero(m);
      m &= m - 1;
      sum += g.degree(v);
    }
    if (sum > g.order() + 8) ok = false;
  });
  return ok;
}

/// Valid (|F+x|, |F-x|) splits when a (K5-P3,K5;n)-good graph is decomposed
/// at a minimum-degree K4 vertex x: p ranges from max(4, n-18) to
/// floor((n+8)/4), and the anti-neighborhood order is m = n-1-p.
struct DecompositionParams {
  int n;
  std::vector<std::pair<int, int>> rows;  // (p, m), p + m == n - 1
};

inline DecompositionParams decomposition_params(int n) {
  if (n < 22)
    throw std::invalid_argument("unsupported order for decomposition: " + std::to_string(n));
  DecompositionParams out{n, {}};
  const int p_max = (n + 8) / 4;
  const int p_min = std::max(4, n - 18);
  for (int p = p_min; p <= p_max; ++p) out.rows.emplace_back(p, n - 1 - p);
  return out;
}

}  // namespace ramsey
