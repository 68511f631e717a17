#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <thread>
#include <vector>

#include "ramsey/canonical.hpp"
#include "ramsey/enumerate.hpp"
#include "ramsey/graph.hpp"

namespace ramsey {

/// Shape of the neighborhood graph used by the cheap elimination filter: a
/// designated triangle plus up to two extra vertices, never adjacent to the
/// triangle; when two extras are present they are either adjacent or not.
struct ApexPattern {
  int extra_count = 0;  // 0, 1 or 2
  bool extras_adjacent = false;
};

/// An assignment of one base-vertex subset (cone) to every apex vertex.
struct ConeArrangement {
  Graph apex;
  Graph base;
  std::vector<std::uint32_t> cones;  // cones[i] over base vertices
};

// ---------------------------------------------------------------------------
// Constraint primitives over cones. Adding a hub vertex x adjacent to every
// apex makes each of these necessary for the assembled graph to stay
// (K5-P3,K5)-good.
// ---------------------------------------------------------------------------

/// Cones of two vertices of a common apex triangle must not meet, or the
/// triangle, x and a shared base vertex give a K5-P3.
inline bool cones_disjoint(std::uint32_t cone_a, std::uint32_t cone_b) {
  return (cone_a & cone_b) == 0;
}

/// For non-adjacent apexes a, b: base vertices outside both cones must not
/// hold an independent 3-set, or it extends to an independent 5-set with
/// a and b.
inline bool no_independent_triple_outside(const Graph& base, std::uint32_t cone_a,
                                          std::uint32_t cone_b) {
  const std::uint32_t rest = base.vertex_mask() & ~(cone_a | cone_b);
  return !contains_independent_set(base.induced(rest), 3);
}

/// For three pairwise non-adjacent apexes: base vertices outside the three
/// cones must induce a complete graph.
inline bool outside_is_complete(const Graph& base, std::uint32_t cone_a, std::uint32_t cone_b,
                                std::uint32_t cone_c) {
  const std::uint32_t rest = base.vertex_mask() & ~(cone_a | cone_b | cone_c);
  const Graph sub = base.induced(rest);
  const int k = sub.order();
  return sub.edge_count() == k * (k - 1) / 2;
}

/// For adjacent apexes outside a common triangle: the cone intersection
/// must not contain a base edge, or a, b, x and that edge give a K5-P3.
inline bool shared_cone_edge_free(const Graph& base, std::uint32_t cone_a,
                                  std::uint32_t cone_b) {
  std::uint32_t inter = cone_a & cone_b;
  while (inter) {
    int v = std::countr_zero(inter);
    inter &= inter - 1;
    if (base.neighbors(v) & inter) return false;
  }
  return true;
}

/// True iff a and b lie in a common triangle of g.
inline bool in_common_triangle(const Graph& g, int a, int b) {
  return g.has_edge(a, b) && (g.neighbors(a) & g.neighbors(b)) != 0;
}

/// Checks every applicable cone constraint of an arrangement: disjointness
/// on triangle pairs, edge-free intersections on other adjacent pairs, no
/// leftover independent triple for non-adjacent pairs, complete leftover
/// for non-adjacent triples.
inline bool arrangement_constraints_ok(const Graph& apex, const Graph& base,
                                       std::span<const std::uint32_t> cones) {
  const int p = apex.order();
  for (int a = 0; a < p; ++a)
    for (int b = a + 1; b < p; ++b) {
      if (apex.has_edge(a, b)) {
        if (in_common_triangle(apex, a, b)) {
          if (!cones_disjoint(cones[a], cones[b])) return false;
        } else if (!shared_cone_edge_free(base, cones[a], cones[b])) {
          return false;
        }
      } else {
        if (!no_independent_triple_outside(base, cones[a], cones[b])) return false;
        for (int c = b + 1; c < p; ++c)
          if (!apex.has_edge(a, c) && !apex.has_edge(b, c) &&
              !outside_is_complete(base, cones[a], cones[b], cones[c]))
            return false;
      }
    }
  return true;
}

// ---------------------------------------------------------------------------
// Search engine. Base vertices are assigned one at a time; the assignment of
// vertex u is the set of apexes whose cone receives u. Constraints fire the
// moment their last participant is assigned. Two profiles:
//   kConstraintsOnly  exactly the four cone constraints (the filter stage)
//   kGoodness         additionally rejects any assignment whose partial
//                     assembly already violates (K5-P3,K5)-goodness
// ---------------------------------------------------------------------------

enum class SearchProfile { kConstraintsOnly, kGoodness };

namespace detail {

struct ApexContext {
  Graph apex;
  int p = 0;
  std::uint32_t full = 0;
  std::array<std::uint32_t, 12> adj{};     // apex adjacency masks
  std::vector<std::uint32_t> triangles;    // 3-bit masks
  std::vector<std::uint32_t> valid_mu;     // assignments passing the unary tests
  std::vector<std::uint8_t> has_adj_pair;  // indexed by apex subset
  std::vector<std::uint8_t> has_nonadj_pair;
  std::vector<std::uint8_t> has_nonadj_triple;
};

inline ApexContext make_apex_context(const Graph& apex, SearchProfile profile) {
  ApexContext cx;
  cx.apex = apex;
  cx.p = apex.order();
  if (cx.p > 12) throw std::invalid_argument("apex order above engine limit 12");
  cx.full = apex.vertex_mask();
  for (int a = 0; a < cx.p; ++a) cx.adj[a] = apex.neighbors(a);
  for_each_triangle(apex, [&](std::uint32_t t) { cx.triangles.push_back(t); });

  const std::size_t words = std::size_t(1) << cx.p;
  cx.has_adj_pair.assign(words, 0);
  cx.has_nonadj_pair.assign(words, 0);
  cx.has_nonadj_triple.assign(words, 0);
  std::vector<std::uint8_t> has_ind4(words, 0);
  for (std::uint32_t s = 0; s < words; ++s) {
    for (int a = 0; a < cx.p && !(cx.has_adj_pair[s] && cx.has_nonadj_pair[s]); ++a) {
      if (!((s >> a) & 1u)) continue;
      const std::uint32_t rest = s & ~((2u << a) - 1);
      if (cx.adj[a] & rest) cx.has_adj_pair[s] = 1;
      if (~cx.adj[a] & rest) cx.has_nonadj_pair[s] = 1;
    }
    // pairwise non-adjacent triples / quadruples via smaller subsets
    if (std::popcount(s) >= 3) {
      for (int a = 0; a < cx.p; ++a) {
        if (!((s >> a) & 1u)) continue;
        const std::uint32_t rest = s & ~(1u << a) & ~cx.adj[a] & ~((1u << a) - 1);
        // rest keeps only higher-numbered non-neighbors so each set counts once
        std::uint32_t r = rest;
        while (r) {
          int b = std::countr_zero(r);
          r &= r - 1;
          std::uint32_t r2 = rest & ~cx.adj[b] & ~((2u << b) - 1);
          if (r2) {
            cx.has_nonadj_triple[s] = 1;
            std::uint32_t r3 = r2;
            while (r3) {
              int c = std::countr_zero(r3);
              r3 &= r3 - 1;
              if (r2 & ~cx.adj[c] & ~((2u << c) - 1)) {
                has_ind4[s] = 1;
                break;
              }
            }
          }
          if (has_ind4[s]) break;
        }
        if (has_ind4[s]) break;
      }
    }
  }

  for (std::uint32_t mu = 0; mu < words; ++mu) {
    bool ok = true;
    for (std::uint32_t t : cx.triangles)
      if (std::popcount(mu & t) > 1) {
        ok = false;
        break;
      }
    if (ok && profile == SearchProfile::kGoodness && has_ind4[cx.full & ~mu]) ok = false;
    if (ok) cx.valid_mu.push_back(mu);
  }
  return cx;
}

struct BaseTriangle {
  std::uint32_t lower;  // the two smaller vertices
  std::uint32_t a1;     // outside vertices with exactly one edge into it
  bool blocked;         // some outside vertex has two or more
};

struct BaseContext {
  Graph base;               // relabeled for search
  std::vector<int> to_orig;  // internal label -> original vertex
  int m = 0;
  bool impossible = false;  // an independent 4-set already spoils every assembly
  std::array<std::uint32_t, Graph::kMaxVertices> edges_below{};
  std::array<std::uint32_t, Graph::kMaxVertices> nonadj_below{};
  std::array<std::vector<std::uint32_t>, Graph::kMaxVertices> ind_triples_at;
  std::array<std::vector<BaseTriangle>, Graph::kMaxVertices> triangles_at;
  std::array<std::vector<std::uint32_t>, Graph::kMaxVertices> k4_at;
};

// Assignment order: repeatedly take the vertex with the most non-edges
// (then edges) into the already-ordered set, so coverage constraints fire
// as early as possible.
inline std::vector<int> search_order(const Graph& base) {
  const int m = base.order();
  std::vector<int> order;
  std::uint32_t placed = 0;
  const Graph co = base.complement();
  for (int step = 0; step < m; ++step) {
    int best = -1, best_co = -1, best_e = -1;
    for (int v = 0; v < m; ++v) {
      if ((placed >> v) & 1u) continue;
      const int cod = std::popcount(co.neighbors(v) & placed);
      const int ed = std::popcount(base.neighbors(v) & placed);
      const int tie_cod = std::popcount(co.neighbors(v));
      if (best < 0 || cod > best_co || (cod == best_co && ed > best_e) ||
          (cod == best_co && ed == best_e && tie_cod > std::popcount(co.neighbors(best)))) {
        best = v;
        best_co = cod;
        best_e = ed;
      }
    }
    order.push_back(best);
    placed |= 1u << best;
  }
  return order;
}

inline BaseContext make_base_context(const Graph& original) {
  BaseContext cx;
  cx.to_orig = search_order(original);
  cx.base = original.order() <= 1
                ? original
                : original.permuted(std::span<const int>(cx.to_orig.data(), original.order()));
  cx.m = original.order();
  const Graph& b = cx.base;
  const Graph co = b.complement();
  if (contains_independent_set(b, 4)) cx.impossible = true;
  for (int u = 0; u < cx.m; ++u) {
    const std::uint32_t below = (1u << u) - 1;
    cx.edges_below[u] = b.neighbors(u) & below;
    cx.nonadj_below[u] = ~b.neighbors(u) & below;
  }
  for_each_triangle(co, [&](std::uint32_t t) {
    const int top = mask_max_vertex(t);
    cx.ind_triples_at[top].push_back(t & ~(1u << top));
  });
  for_each_triangle(b, [&](std::uint32_t t) {
    std::uint32_t a1, a2;
    triangle_outside_profile(b, t, a1, a2);
    const int top = mask_max_vertex(t);
    cx.triangles_at[top].push_back({t & ~(1u << top), a1, a2 != 0});
  });
  for_each_k4(b, [&](std::uint32_t q) {
    const int top = mask_max_vertex(q);
    cx.k4_at[top].push_back(q & ~(1u << top));
  });
  return cx;
}

// Exhaustive walk over cone assignments. The callback receives cones in
// internal labels and returns false to stop the search.
class ConeSearch {
 public:
  ConeSearch(const ApexContext& ax, const BaseContext& bx, SearchProfile profile)
      : ax_(ax), bx_(bx), goodness_(profile == SearchProfile::kGoodness) {
    cones_.fill(0);
    banned_at_.fill(0);
  }

  template <typename Leaf>
  void run(Leaf&& leaf) {
    if (goodness_ && bx_.impossible) return;
    stopped_ = false;
    walk(0, leaf);
  }

 private:
  template <typename Leaf>
  void walk(int u, Leaf& leaf) {
    if (stopped_) return;
    if (u == bx_.m) {
      if (!leaf(std::span<const std::uint32_t>(cones_.data(), ax_.p))) stopped_ = true;
      return;
    }
    const std::uint32_t ubit = 1u << u;
    for (std::uint32_t mu : ax_.valid_mu) {
      if (mu & banned_at_[u]) continue;
      if (!admissible(u, mu)) continue;

      mu_[u] = mu;
      std::uint32_t bits = mu;
      while (bits) {
        int a = std::countr_zero(bits);
        bits &= bits - 1;
        cones_[a] |= ubit;
      }
      const std::size_t undo_mark = undo_.size();
      if (!goodness_ || apply_triangle_bans(u, mu)) walk(u + 1, leaf);
      while (undo_.size() > undo_mark) {
        banned_at_[undo_.back().first] = undo_.back().second;
        undo_.pop_back();
      }
      bits = mu;
      while (bits) {
        int a = std::countr_zero(bits);
        bits &= bits - 1;
        cones_[a] &= ~ubit;
      }
      if (stopped_) return;
    }
  }

  bool admissible(int u, std::uint32_t mu) const {
    // shared base edge inside the cones of an adjacent apex pair
    std::uint32_t es = bx_.edges_below[u];
    while (es) {
      int w = std::countr_zero(es);
      es &= es - 1;
      const std::uint32_t both = mu & mu_[w];
      if (both && ax_.has_adj_pair[both]) return false;
    }
    // a non-adjacent base pair left uncovered by some non-adjacent apex triple
    std::uint32_t ns = bx_.nonadj_below[u];
    while (ns) {
      int w = std::countr_zero(ns);
      ns &= ns - 1;
      if (ax_.has_nonadj_triple[ax_.full & ~(mu | mu_[w])]) return false;
    }
    // an independent base triple left uncovered by some non-adjacent apex pair
    for (std::uint32_t pair : bx_.ind_triples_at[u])
      if (ax_.has_nonadj_pair[ax_.full & ~(mu | or_of(pair))]) return false;

    if (goodness_) {
      for (std::uint32_t triple : bx_.k4_at[u])
        if (mu & or_of(triple)) return false;
      for (const BaseTriangle& t : bx_.triangles_at[u]) {
        const std::uint32_t shared = mu & and_of(t.lower);
        if (!shared) continue;
        if (t.blocked) return false;
        const std::uint32_t m_all = mu | or_of(t.lower);
        const std::uint32_t twice = pairwise_twice(mu, t.lower);
        std::uint32_t bits = shared;
        while (bits) {
          int a = std::countr_zero(bits);
          bits &= bits - 1;
          if (m_all & ax_.adj[a]) return false;
          if (twice & ~(1u << a)) return false;
          if (cones_[a] & t.a1) return false;
        }
      }
    }
    return true;
  }

  // or/and of mu_ over the vertices of a small mask
  std::uint32_t or_of(std::uint32_t verts) const {
    std::uint32_t r = 0;
    while (verts) {
      int v = std::countr_zero(verts);
      verts &= verts - 1;
      r |= mu_[v];
    }
    return r;
  }
  std::uint32_t and_of(std::uint32_t verts) const {
    std::uint32_t r = ~0u;
    while (verts) {
      int v = std::countr_zero(verts);
      verts &= verts - 1;
      r &= mu_[v];
    }
    return r;
  }
  std::uint32_t pairwise_twice(std::uint32_t mu, std::uint32_t lower_pair) const {
    const int z1 = std::countr_zero(lower_pair);
    const std::uint32_t rest = lower_pair & (lower_pair - 1);
    const int z2 = std::countr_zero(rest);
    return (mu & mu_[z1]) | (mu & mu_[z2]) | (mu_[z1] & mu_[z2]);
  }

  // Future bans from triangles completed inside a cone: outside vertices
  // with one edge into the triangle may not join that cone later.
  bool apply_triangle_bans(int u, std::uint32_t mu) {
    for (const BaseTriangle& t : bx_.triangles_at[u]) {
      std::uint32_t shared = mu & and_of(t.lower);
      while (shared) {
        int a = std::countr_zero(shared);
        shared &= shared - 1;
        std::uint32_t future = t.a1 & ~((2u << u) - 1);
        while (future) {
          int z = std::countr_zero(future);
          future &= future - 1;
          if (!((banned_at_[z] >> a) & 1u)) {
            undo_.emplace_back(z, banned_at_[z]);
            banned_at_[z] |= 1u << a;
          }
        }
      }
    }
    return true;
  }

  const ApexContext& ax_;
  const BaseContext& bx_;
  bool goodness_;
  bool stopped_ = false;
  std::array<std::uint32_t, Graph::kMaxVertices> mu_{};
  std::array<std::uint32_t, 12> cones_{};
  std::array<std::uint32_t, Graph::kMaxVertices> banned_at_{};
  std::vector<std::pair<int, std::uint32_t>> undo_;
};

inline Graph pattern_apex(const ApexPattern& pat) {
  if (pat.extra_count < 0 || pat.extra_count > 2)
    throw std::invalid_argument("apex pattern allows 0..2 extras");
  Graph a(3 + pat.extra_count);
  a.add_edge(0, 1);
  a.add_edge(0, 2);
  a.add_edge(1, 2);
  if (pat.extra_count == 2 && pat.extras_adjacent) a.add_edge(3, 4);
  return a;
}

// Translate internal cone labels back to the caller's base labels.
inline std::vector<std::uint32_t> translate_cones(const BaseContext& bx,
                                                  std::span<const std::uint32_t> cones) {
  std::vector<std::uint32_t> out(cones.size(), 0);
  for (std::size_t a = 0; a < cones.size(); ++a) {
    std::uint32_t c = cones[a];
    while (c) {
      int i = std::countr_zero(c);
      c &= c - 1;
      out[a] |= 1u << bx.to_orig[i];
    }
  }
  return out;
}

}  // namespace detail

/// Existence of a cone assignment for the filter pattern on this base that
/// satisfies every applicable cone constraint. No goodness pruning: this is
/// exactly the four-constraint elimination stage.
inline bool filter_exists(const Graph& base, ApexPattern pattern) {
  const detail::ApexContext ax =
      detail::make_apex_context(detail::pattern_apex(pattern), SearchProfile::kConstraintsOnly);
  const detail::BaseContext bx = detail::make_base_context(base);
  detail::ConeSearch search(ax, bx, SearchProfile::kConstraintsOnly);
  bool found = false;
  search.run([&](std::span<const std::uint32_t>) {
    found = true;
    return false;
  });
  return found;
}

/// Every cone assignment of the full apex graph onto the base that survives
/// the cone constraints and the incremental goodness pruning of the partial
/// assembly. Complete for assignments whose assembly is good.
inline std::vector<ConeArrangement> search_full(const Graph& apex, const Graph& base) {
  const detail::ApexContext ax = detail::make_apex_context(apex, SearchProfile::kGoodness);
  const detail::BaseContext bx = detail::make_base_context(base);
  detail::ConeSearch search(ax, bx, SearchProfile::kGoodness);
  std::vector<ConeArrangement> out;
  search.run([&](std::span<const std::uint32_t> cones) {
    out.push_back({apex, base, detail::translate_cones(bx, cones)});
    return true;
  });
  return out;
}

/// F on 1+p+m vertices: vertex 0 adjacent to every apex vertex (1..p) and
/// no base vertex (p+1..p+m); apex and base edges copied; apex i adjacent
/// to base j iff j is in cone i.
inline Graph assemble(const Graph& apex, const Graph& base,
                      std::span<const std::uint32_t> cones) {
  const int p = apex.order(), m = base.order();
  Graph f(1 + p + m);
  for (int a = 0; a < p; ++a) {
    f.add_edge(0, 1 + a);
    for (int b = a + 1; b < p; ++b)
      if (apex.has_edge(a, b)) f.add_edge(1 + a, 1 + b);
    std::uint32_t c = cones[a];
    while (c) {
      int j = std::countr_zero(c);
      c &= c - 1;
      f.add_edge(1 + a, 1 + p + j);
    }
  }
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      if (base.has_edge(i, j)) f.add_edge(1 + p + i, 1 + p + j);
  return f;
}

inline Graph assemble(const ConeArrangement& arr) {
  return assemble(arr.apex, arr.base, arr.cones);
}

/// Split of f at vertex x into the neighborhood graph, the anti-neighborhood
/// graph, and the cone of each neighborhood vertex. Inverse of assemble for
/// x = 0.
struct Decomposition {
  Graph apex;
  Graph base;
  std::vector<std::uint32_t> cones;
};

inline Decomposition decompose(const Graph& f, int x) {
  const std::uint32_t nb = f.neighbors(x);
  const std::uint32_t anti = f.vertex_mask() & ~nb & ~(1u << x);
  Decomposition d{f.induced(nb), f.induced(anti), {}};
  std::uint32_t abits = nb;
  while (abits) {
    int a = std::countr_zero(abits);
    abits &= abits - 1;
    std::uint32_t cone = 0;
    std::uint32_t bbits = anti;
    int j = 0;
    while (bbits) {
      int b = std::countr_zero(bbits);
      bbits &= bbits - 1;
      if (f.has_edge(a, b)) cone |= 1u << j;
      ++j;
    }
    d.cones.push_back(cone);
  }
  return d;
}

// ---------------------------------------------------------------------------
// Row-by-row search for (K5-P3,K5;n)-good graphs containing a K4.
// ---------------------------------------------------------------------------

struct RowOutcome {
  int p = 0, m = 0;
  std::uint64_t pairs = 0;         // apex/base pairs in the row
  std::uint64_t pairs_gated = 0;   // eliminated by the filter gate
  std::uint64_t arrangements = 0;  // surviving cone assignments (pre-dedup)
  std::uint64_t verified = 0;      // assemblies passing full verification
};

struct SearchOutcome {
  int n = 0;
  std::vector<RowOutcome> rows;
  std::uint64_t arrangements = 0;
  IsoSet classes;
  std::vector<Graph> witnesses;  // canonical forms of the verified graphs, key-sorted
};

namespace detail {

// Filter sub-patterns realized inside an apex graph: one extra next to any
// triangle gives the 4-cone pattern; pairs of extras give a 5-cone variant
// per their adjacency.
inline std::vector<ApexPattern> realized_patterns(const Graph& apex) {
  bool t1 = false, t2adj = false, t2non = false;
  for_each_triangle(apex, [&](std::uint32_t t) {
    std::uint32_t extras = apex.vertex_mask() & ~t;
    if (extras) t1 = true;
    std::uint32_t e = extras;
    while (e) {
      int a = std::countr_zero(e);
      e &= e - 1;
      if (apex.neighbors(a) & extras & ~((2u << a) - 1)) t2adj = true;
      if (~apex.neighbors(a) & extras & ~((2u << a) - 1)) t2non = true;
    }
  });
  std::vector<ApexPattern> out;
  if (t1) out.push_back({1, false});
  if (t2adj) out.push_back({2, true});
  if (t2non) out.push_back({2, false});
  return out;
}

struct ConeBatchResult {
  std::uint64_t pairs = 0;
  std::uint64_t pairs_gated = 0;
  std::uint64_t arrangements = 0;
  std::uint64_t verified = 0;
  std::vector<std::pair<CanonicalForm, Graph>> graphs;  // verified, batch-deduped
};

// Searches apexes x bases[lo, hi). The gate runs each realized filter
// pattern once per base; a failing pattern eliminates every apex realizing
// it without a full search.
inline ConeBatchResult cone_search_batch(const std::vector<Graph>& apexes,
                                         const std::vector<Graph>& bases, std::size_t lo,
                                         std::size_t hi, bool use_gate) {
  ConeBatchResult res;
  std::vector<ApexContext> ax;
  std::vector<std::vector<ApexPattern>> pats;
  for (const Graph& a : apexes) {
    ax.push_back(make_apex_context(a, SearchProfile::kGoodness));
    pats.push_back(realized_patterns(a));
  }
  std::unordered_set<CanonicalForm, CanonicalFormHash> seen;
  for (std::size_t bi = lo; bi < hi && bi < bases.size(); ++bi) {
    const BaseContext bx = make_base_context(bases[bi]);
    int filter_known[3] = {-1, -1, -1};  // t1, t2adj, t2non; -1 unknown
    auto filter_ok = [&](const ApexPattern& pat) {
      const int slot = pat.extra_count == 1 ? 0 : (pat.extras_adjacent ? 1 : 2);
      if (filter_known[slot] < 0) {
        const ApexContext fax =
            make_apex_context(pattern_apex(pat), SearchProfile::kConstraintsOnly);
        ConeSearch s(fax, bx, SearchProfile::kConstraintsOnly);
        bool found = false;
        s.run([&](std::span<const std::uint32_t>) {
          found = true;
          return false;
        });
        filter_known[slot] = found ? 1 : 0;
      }
      return filter_known[slot] == 1;
    };
    for (std::size_t aidx = 0; aidx < apexes.size(); ++aidx) {
      ++res.pairs;
      if (use_gate) {
        bool gated = false;
        for (const ApexPattern& pat : pats[aidx])
          if (!filter_ok(pat)) {
            gated = true;
            break;
          }
        if (gated) {
          ++res.pairs_gated;
          continue;
        }
      }
      ConeSearch search(ax[aidx], bx, SearchProfile::kGoodness);
      search.run([&](std::span<const std::uint32_t> cones) {
        ++res.arrangements;
        const auto orig = translate_cones(bx, cones);
        const Graph f = assemble(apexes[aidx], bases[bi], orig);
        if (is_good(f, {Pattern::K5MinusP3, Pattern::K5}) && contains_clique(f, 4) &&
            k4_degree_sum_ok(f)) {
          ++res.verified;
          auto [key, canon] = canonical_form_and_graph(f);
          if (seen.insert(key).second) res.graphs.emplace_back(key, canon);
        }
        return true;
      });
    }
  }
  return res;
}

}  // namespace detail

/// Complete search for (K5-P3,K5;n)-good graphs containing a K4, iterating
/// the decomposition rows for n. Sound: only fully verified graphs are
/// returned. Complete: any such graph splits at a minimum-degree K4 vertex
/// into one of the rows, with the neighborhood among the apex candidates
/// and the anti-neighborhood in the corresponding good-graph level.
inline SearchOutcome good_graphs_with_k4(
    int n, const std::function<std::vector<Graph>(int)>& base_level_loader, unsigned workers = 1,
    bool use_gate = true) {
  if (n < 22 || n > 25) throw std::invalid_argument("order outside 22..25");
  SearchOutcome out;
  out.n = n;
  std::vector<std::pair<CanonicalForm, Graph>> all;
  for (auto [p, m] : decomposition_params(n).rows) {
    RowOutcome row;
    row.p = p;
    row.m = m;
    const std::vector<Graph> apexes = select_apex_candidates(p);
    const std::vector<Graph> bases = base_level_loader(m);
    const unsigned nw = std::max(1u, workers);
    std::vector<detail::ConeBatchResult> parts(nw);
    if (nw == 1 || bases.size() < 2 * nw) {
      parts[0] = detail::cone_search_batch(apexes, bases, 0, bases.size(), use_gate);
    } else {
      std::vector<std::thread> pool;
      const std::size_t chunk = (bases.size() + nw - 1) / nw;
      for (unsigned w = 0; w < nw; ++w) {
        const std::size_t klo = std::min(bases.size(), w * chunk);
        const std::size_t khi = std::min(bases.size(), klo + chunk);
        pool.emplace_back([&, klo, khi, w] {
          parts[w] = detail::cone_search_batch(apexes, bases, klo, khi, use_gate);
        });
      }
      for (auto& t : pool) t.join();
    }
    for (auto& part : parts) {
      row.pairs += part.pairs;
      row.pairs_gated += part.pairs_gated;
      row.arrangements += part.arrangements;
      row.verified += part.verified;
      for (auto& kg : part.graphs) all.push_back(std::move(kg));
    }
    out.arrangements += row.arrangements;
    out.rows.push_back(row);
  }
  std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t i = 0; i < all.size(); ++i)
    if (out.classes.insert_key(all[i].first)) out.witnesses.push_back(all[i].second);
  return out;
}

// ---------------------------------------------------------------------------
// Main-result report.
// ---------------------------------------------------------------------------

struct ProofReport {
  std::vector<SearchOutcome> outcomes;  // n = 25 first, then lower orders when extended
  bool no_quad_cone_on_17 = false;      // 4-cone filter empty on the 17-vertex base
  bool no_quint_cone_on_16 = false;     // 5-cone filter empty on both 16-vertex bases
  bool established = false;             // R(K5-P3,K5) = 25
};

/// Runs the order-25 search (optionally 24, 23, 22 as well) and records the
/// intermediate elimination facts. Since R(K4,K5) = 25 forces a K4 into any
/// (K5-P3,K5;25)-good graph, an empty order-25 outcome establishes
/// R(K5-P3,K5) = 25.
inline ProofReport prove_ramsey_number(
    const std::function<std::vector<Graph>(int)>& base_level_loader, unsigned workers = 1,
    bool extended = false) {
  ProofReport rep;
  const std::vector<Graph> bases17 = base_level_loader(17);
  const std::vector<Graph> bases16 = base_level_loader(16);
  rep.no_quad_cone_on_17 = true;
  for (const Graph& b : bases17)
    if (filter_exists(b, {1, false})) rep.no_quad_cone_on_17 = false;
  rep.no_quint_cone_on_16 = true;
  for (const Graph& b : bases16)
    for (bool adj : {false, true})
      if (filter_exists(b, {2, adj})) rep.no_quint_cone_on_16 = false;

  rep.outcomes.push_back(good_graphs_with_k4(25, base_level_loader, workers));
  if (extended)
    for (int n : {24, 23, 22})
      rep.outcomes.push_back(good_graphs_with_k4(n, base_level_loader, workers));
  rep.established = rep.outcomes.front().classes.count() == 0;
  return rep;
}

}  // namespace ramsey
