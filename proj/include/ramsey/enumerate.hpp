#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "ramsey/canonical.hpp"
#include "ramsey/graph.hpp"

namespace ramsey {

/// All (G,H;n)-good graphs up to isomorphism for one order.
struct LevelSet {
  int n = 0;
  ForbiddenPair spec{};
  std::vector<Graph> graphs;
};

/// One statistics row: total count and edge range, plus the same for the
/// members containing a marker subgraph. Ranges are -1/-1 when empty.
struct LevelStats {
  int n = 0;
  std::uint64_t total = 0;
  int edge_min = -1;
  int edge_max = -1;
  std::uint64_t marker_count = 0;
  int marker_edge_min = -1;
  int marker_edge_max = -1;
  bool operator==(const LevelStats&) const = default;
};

namespace detail {

// Constraints on the neighborhood S of a vertex appended to `parent`,
// compiled so the subset walk can reject bad branches early. Everything is
// phrased over parent vertices:
//   ban       vertices that can never be in S
//   pair_ban  per-vertex partners that cannot join it in S
//   forb_at   forbidden subsets (lower members, listed at their max vertex)
//   cond_at   triangle conditions: pair in S at max vertex u means the
//             attached set a1 must stay out of S
//   excl_at   pairs that force S to equal exactly pair + max vertex
//   cover_at  sets S must intersect (prunes the exclude branch when a whole
//             set has been excluded)
struct ExtensionOracle {
  bool supported = false;
  int n = 0;
  std::uint32_t ban = 0;
  std::array<std::uint32_t, Graph::kMaxVertices> pair_ban{};
  struct CondBan {
    std::uint32_t pair;
    std::uint32_t a1;
  };
  std::array<std::vector<std::uint32_t>, Graph::kMaxVertices> forb_at;
  std::array<std::vector<CondBan>, Graph::kMaxVertices> cond_at;
  std::array<std::vector<std::uint32_t>, Graph::kMaxVertices> excl_at;
  std::array<std::vector<std::uint32_t>, Graph::kMaxVertices> cover_at;
};

inline int mask_max_vertex(std::uint32_t m) { return 31 - std::countl_zero(m); }

// Occupancy counts of N(w) against a 3-vertex mask, for every w outside it.
inline void triangle_outside_profile(const Graph& g, std::uint32_t t,
                                     std::uint32_t& a1, std::uint32_t& a2) {
  a1 = a2 = 0;
  std::uint32_t rest = g.vertex_mask() & ~t;
  while (rest) {
    int w = std::countr_zero(rest);
    rest &= rest - 1;
    int c = std::popcount(g.neighbors(w) & t);
    if (c == 1) a1 |= 1u << w;
    if (c >= 2) a2 |= 1u << w;
  }
}

inline ExtensionOracle compile_extension(const Graph& g, ForbiddenPair spec) {
  ExtensionOracle o;
  o.n = g.order();
  if (spec.h_avoid == Pattern::K4MinusP3 || spec.h_avoid == Pattern::K5MinusP3)
    return o;  // slow path only
  o.supported = true;

  switch (spec.g_avoid) {
    case Pattern::K3:
      for (int u = 0; u < o.n; ++u) o.pair_ban[u] = g.neighbors(u);
      break;
    case Pattern::K4:
      for_each_triangle(g, [&](std::uint32_t t) {
        int top = mask_max_vertex(t);
        o.forb_at[top].push_back(t & ~(1u << top));
      });
      break;
    case Pattern::K5:
      for_each_k4(g, [&](std::uint32_t m) {
        int top = mask_max_vertex(m);
        o.forb_at[top].push_back(m & ~(1u << top));
      });
      break;
    case Pattern::K5MinusP3:
      // new vertex as the attachment: no two K4 vertices may both join S
      for_each_k4(g, [&](std::uint32_t m) {
        std::uint32_t bits = m;
        while (bits) {
          int v = std::countr_zero(bits);
          bits &= bits - 1;
          o.pair_ban[v] |= m & ~(1u << v);
        }
      });
      // new vertex inside the K4: a parent triangle inside S forms one, and
      // outside vertices must not reach it twice (or once from within S)
      for_each_triangle(g, [&](std::uint32_t t) {
        std::uint32_t a1, a2;
        triangle_outside_profile(g, t, a1, a2);
        int top = mask_max_vertex(t);
        std::uint32_t lower = t & ~(1u << top);
        if (a2)
          o.forb_at[top].push_back(lower);
        else if (a1)
          o.cond_at[top].push_back({lower, a1});
      });
      break;
    case Pattern::K4MinusP3:
      // any triangle vertex in S makes the new vertex a pendant
      for_each_triangle(g, [&](std::uint32_t t) { o.ban |= t; });
      // an S-edge forms a triangle through the new vertex; any third
      // vertex with a connection to it completes the paw
      for (int u = 0; u < o.n; ++u) {
        std::uint32_t vs = g.neighbors(u) >> (u + 1) << (u + 1);
        while (vs) {
          int v = std::countr_zero(vs);
          vs &= vs - 1;
          std::uint32_t pair = (1u << u) | (1u << v);
          std::uint32_t reach = (g.neighbors(u) | g.neighbors(v)) & ~pair;
          if (reach)
            o.pair_ban[u] |= 1u << v, o.pair_ban[v] |= 1u << u;
          else
            o.excl_at[v].push_back(1u << u);
        }
      }
      break;
  }

  const Graph co = g.complement();
  auto add_cover = [&](std::uint32_t m) {
    int top = mask_max_vertex(m);
    o.cover_at[top].push_back(m & ~(1u << top));
  };
  switch (spec.h_avoid) {
    case Pattern::K3:
      for (int u = 0; u < o.n; ++u) {
        std::uint32_t vs = co.neighbors(u) >> (u + 1) << (u + 1);
        while (vs) {
          int v = std::countr_zero(vs);
          vs &= vs - 1;
          add_cover((1u << u) | (1u << v));
        }
      }
      break;
    case Pattern::K4:
      for_each_triangle(co, [&](std::uint32_t t) { add_cover(t); });
      break;
    case Pattern::K5:
      for_each_k4(co, [&](std::uint32_t m) { add_cover(m); });
      break;
    default:
      break;
  }
  return o;
}

// Depth-first walk over neighborhoods S, pruning with the compiled
// constraints; fn receives each surviving S.
template <typename Fn>
class ExtensionDfs {
 public:
  ExtensionDfs(const ExtensionOracle& o, Fn& fn) : o_(o), fn_(fn) {}

  void run() { walk(0, 0, 0, o_.ban); }

 private:
  void walk(int u, std::uint32_t s, std::uint32_t x, std::uint32_t dyn_ban) {
    if (u == o_.n) {
      fn_(s);
      return;
    }
    const std::uint32_t ubit = 1u << u;

    if (!(dyn_ban & ubit) && !(o_.pair_ban[u] & s)) {
      bool ok = true;
      for (std::uint32_t m : o_.forb_at[u])
        if ((m & s) == m) {
          ok = false;
          break;
        }
      std::uint32_t extra_ban = 0;
      if (ok)
        for (const auto& c : o_.cond_at[u]) {
          if ((c.pair & s) != c.pair) continue;
          if (c.a1 & s) {
            ok = false;
            break;
          }
          extra_ban |= c.a1;
        }
      if (ok)
        for (std::uint32_t m : o_.excl_at[u]) {
          if ((m & s) != m) continue;
          if (s & ~m) {
            ok = false;
            break;
          }
          extra_ban |= ~(m | ubit);
        }
      if (ok) walk(u + 1, s | ubit, x, dyn_ban | extra_ban);
    }

    bool can_exclude = true;
    for (std::uint32_t m : o_.cover_at[u])
      if ((m & ~x) == 0) {
        can_exclude = false;
        break;
      }
    if (can_exclude) walk(u + 1, s, x | ubit, dyn_ban);
  }

  const ExtensionOracle& o_;
  Fn& fn_;
};

// Every neighborhood of a would-be new vertex that keeps the parent good.
// The compiled walk is a pre-filter; the incremental goodness check stays
// the deciding test.
template <typename Fn>
inline void for_each_good_extension(const Graph& parent, ForbiddenPair spec, Fn&& fn) {
  const int v = parent.order();
  ExtensionOracle o = compile_extension(parent, spec);
  if (o.supported) {
    auto emit = [&](std::uint32_t s) {
      if (is_good_extension(parent.with_vertex(s), v, spec)) fn(s);
    };
    ExtensionDfs walk(o, emit);
    walk.run();
    return;
  }
  const std::uint32_t limit = parent.vertex_mask();
  for (std::uint32_t s = 0;; ++s) {
    if (is_good_extension(parent.with_vertex(s), v, spec)) fn(s);
    if (s == limit) break;
  }
}

}  // namespace detail

/// All good one-vertex extensions of g (every viable neighborhood of the
/// appended vertex). Output may contain isomorphs; deduplication is the
/// caller's job.
inline std::vector<Graph> extend_one(const Graph& g, ForbiddenPair spec) {
  std::vector<Graph> out;
  detail::for_each_good_extension(g, spec,
                                  [&](std::uint32_t s) { out.push_back(g.with_vertex(s)); });
  return out;
}

namespace detail {

using KeyedGraph = std::pair<CanonicalForm, Graph>;

inline void extend_batch(const std::vector<Graph>& parents, std::size_t begin, std::size_t end,
                         ForbiddenPair spec, std::vector<KeyedGraph>& out) {
  std::unordered_set<CanonicalForm, CanonicalFormHash> seen;
  for (std::size_t i = begin; i < end; ++i) {
    const Graph& parent = parents[i];
    for_each_good_extension(parent, spec, [&](std::uint32_t s) {
      auto [key, canon] = canonical_form_and_graph(parent.with_vertex(s));
      if (seen.insert(key).second) out.emplace_back(key, canon);
    });
  }
}

}  // namespace detail

/// One generation step: all good graphs of order parents[i].order()+1 up to
/// isomorphism, sorted by canonical key. Deterministic for any worker count.
inline std::vector<Graph> enumerate_level(const std::vector<Graph>& parents, ForbiddenPair spec,
                                          unsigned workers = 1) {
  std::vector<detail::KeyedGraph> merged;
  if (workers <= 1 || parents.size() < 64) {
    detail::extend_batch(parents, 0, parents.size(), spec, merged);
  } else {
    std::vector<std::vector<detail::KeyedGraph>> results(workers);
    std::vector<std::thread> pool;
    const std::size_t chunk = (parents.size() + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::size_t lo = std::min(parents.size(), w * chunk);
      const std::size_t hi = std::min(parents.size(), lo + chunk);
      pool.emplace_back([&, lo, hi, w] { detail::extend_batch(parents, lo, hi, spec, results[w]); });
    }
    for (auto& t : pool) t.join();
    for (auto& r : results) {
      merged.insert(merged.end(), std::make_move_iterator(r.begin()),
                    std::make_move_iterator(r.end()));
      r.clear();
      r.shrink_to_fit();
    }
  }
  std::sort(merged.begin(), merged.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Graph> level;
  level.reserve(merged.size());
  for (std::size_t i = 0; i < merged.size(); ++i)
    if (i == 0 || merged[i].first != merged[i - 1].first) level.push_back(merged[i].second);
  return level;
}

/// Level-by-level generation from the single order-1 graph. Stops after
/// n_max, or at the first empty level (which is included: its order is the
/// Ramsey number for the pair).
inline std::vector<LevelSet> enumerate_good(ForbiddenPair spec, int n_max, unsigned workers = 1) {
  std::vector<LevelSet> out;
  if (n_max < 1) return out;
  LevelSet first{1, spec, {Graph(1)}};
  out.push_back(first);
  while (out.back().n < n_max && !out.back().graphs.empty()) {
    LevelSet next{out.back().n + 1, spec,
                  enumerate_level(out.back().graphs, spec, workers)};
    out.push_back(std::move(next));
  }
  return out;
}

inline LevelStats level_stats(const LevelSet& level, Pattern marker) {
  LevelStats s;
  s.n = level.n;
  for (const Graph& g : level.graphs) {
    const int e = g.edge_count();
    ++s.total;
    if (s.edge_min < 0 || e < s.edge_min) s.edge_min = e;
    if (e > s.edge_max) s.edge_max = e;
    if (contains_pattern(g, marker)) {
      ++s.marker_count;
      if (s.marker_edge_min < 0 || e < s.marker_edge_min) s.marker_edge_min = e;
      if (e > s.marker_edge_max) s.marker_edge_max = e;
    }
  }
  return s;
}

/// The viable neighborhood graphs of a decomposition vertex: all
/// (K4-P3,K5;p)-good graphs containing a triangle, up to isomorphism.
inline std::vector<Graph> select_apex_candidates(int p) {
  if (p < 4 || p > 8) throw std::invalid_argument("apex order outside 4..8");
  auto levels = enumerate_good({Pattern::K4MinusP3, Pattern::K5}, p);
  std::vector<Graph> out;
  for (const Graph& g : levels.back().graphs)
    if (contains_clique(g, 3)) out.push_back(g);
  return out;
}

inline std::string stats_csv_header() {
  return "n,total,edge_min,edge_max,marker_count,marker_edge_min,marker_edge_max";
}

inline std::string stats_csv_row(const LevelStats& s) {
  auto range = [](int v) { return v < 0 ? std::string() : std::to_string(v); };
  return std::to_string(s.n) + "," + std::to_string(s.total) + "," + range(s.edge_min) + "," +
         range(s.edge_max) + "," + std::to_string(s.marker_count) + "," +
         range(s.marker_edge_min) + "," + range(s.marker_edge_max);
}

inline LevelStats parse_stats_csv_row(const std::string& line) {
  LevelStats s;
  std::vector<std::string> f;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      f.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  f.push_back(cur);
  if (f.size() != 7) throw std::invalid_argument("stats row needs 7 fields: " + line);
  auto num = [](const std::string& t) { return t.empty() ? -1 : std::stoi(t); };
  s.n = std::stoi(f[0]);
  s.total = std::stoull(f[1]);
  s.edge_min = num(f[2]);
  s.edge_max = num(f[3]);
  s.marker_count = std::stoull(f[4]);
  s.marker_edge_min = num(f[5]);
  s.marker_edge_max = num(f[6]);
  return s;
}

}  // namespace ramsey
