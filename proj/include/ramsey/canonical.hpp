#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <string>
#include <unordered_set>
#include <vector>

#include "ramsey/graph.hpp"

namespace ramsey {

/// Label-invariant key: byte 0 is the order n, followed by the upper
/// triangle of the canonically relabeled adjacency matrix in row-major
/// order (i < j), packed most-significant-bit first and zero-padded.
/// Two graphs have equal keys iff they are isomorphic.
struct CanonicalForm {
  static constexpr std::size_t kMaxBytes =
      1 + (std::size_t(Graph::kMaxVertices) * (Graph::kMaxVertices - 1) / 2 + 7) / 8;

  std::array<std::uint8_t, kMaxBytes> bytes{};

  int order() const { return bytes[0]; }

  std::size_t size() const {
    const std::size_t n = bytes[0];
    return 1 + (n * (n - 1) / 2 + 7) / 8;
  }

  auto operator<=>(const CanonicalForm&) const = default;

  std::string hex() const {
    static const char* d = "0123456789abcdef";
    std::string s;
    s.reserve(2 * size());
    for (std::size_t i = 0; i < size(); ++i) {
      s.push_back(d[bytes[i] >> 4]);
      s.push_back(d[bytes[i] & 15]);
    }
    return s;
  }
};

struct CanonicalFormHash {
  std::size_t operator()(const CanonicalForm& k) const {
    std::uint64_t h = 14695981039346656037ull;
    for (std::uint8_t b : k.bytes) {
      h ^= b;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

namespace detail {

// Canonical labeling search: equitable refinement, then backtracking over
// the first smallest non-singleton cell, keeping the lexicographically
// smallest packed key. Discovered automorphisms prune sibling branches
// whose candidate lies in the orbit of an already-explored one (only
// generators fixing the current individualization prefix are used, which
// keeps the pruning sound).
class CanonSearch {
 public:
  explicit CanonSearch(const Graph& g) : g_(g), n_(g.order()) {}

  void run(CanonicalForm& best, std::array<int, Graph::kMaxVertices>& best_lab) {
    best.bytes.fill(0);
    best.bytes[0] = static_cast<std::uint8_t>(n_);
    if (n_ <= 1) return;
    for (int i = 0; i < n_; ++i) lab_[i] = i;
    ptn_.fill(true);
    ptn_[n_ - 1] = false;  // one cell covering everything
    std::vector<std::uint32_t> queue{g_.vertex_mask()};
    refine(queue);
    have_best_ = false;
    search();
    best = best_;
    best_lab = best_lab_;
  }

 private:
  using Perm = std::array<int, Graph::kMaxVertices>;

  // ptn_[i] == true means position i and i+1 share a cell.
  void refine(std::vector<std::uint32_t>& queue) {
    while (!queue.empty()) {
      std::uint32_t splitter = queue.back();
      queue.pop_back();
      int start = 0;
      while (start < n_) {
        int end = start;
        while (ptn_[end]) ++end;  // cell is [start, end]
        if (end > start) {
          int width = end - start + 1;
          int* cell = lab_.data() + start;
          std::array<int, Graph::kMaxVertices> cnt;
          bool uniform = true;
          for (int i = 0; i < width; ++i) {
            cnt[i] = std::popcount(g_.neighbors(cell[i]) & splitter);
            if (cnt[i] != cnt[0]) uniform = false;
          }
          if (!uniform) {
            std::array<int, Graph::kMaxVertices> idx;
            for (int i = 0; i < width; ++i) idx[i] = i;
            std::stable_sort(idx.begin(), idx.begin() + width,
                             [&](int a, int b) { return cnt[a] < cnt[b]; });
            std::array<int, Graph::kMaxVertices> sorted;
            for (int i = 0; i < width; ++i) sorted[i] = cell[idx[i]];
            std::uint32_t sub = 0;
            for (int i = 0; i < width; ++i) {
              cell[i] = sorted[i];
              sub |= 1u << sorted[i];
              bool boundary = (i == width - 1) || (cnt[idx[i]] != cnt[idx[i + 1]]);
              if (boundary) {
                ptn_[start + i] = false;
                queue.push_back(sub);
                sub = 0;
              } else {
                ptn_[start + i] = true;
              }
            }
          }
        }
        start = end + 1;
      }
    }
  }

  // First smallest non-singleton cell, or -1 if the partition is discrete.
  int target_cell(int& width) const {
    int best_start = -1, best_width = n_ + 1;
    int start = 0;
    while (start < n_) {
      int end = start;
      while (ptn_[end]) ++end;
      int w = end - start + 1;
      if (w > 1 && w < best_width) {
        best_width = w;
        best_start = start;
      }
      start = end + 1;
    }
    width = best_width;
    return best_start;
  }

  CanonicalForm pack() const {
    CanonicalForm key;
    key.bytes.fill(0);
    key.bytes[0] = static_cast<std::uint8_t>(n_);
    int t = 0;
    for (int i = 0; i < n_; ++i)
      for (int j = i + 1; j < n_; ++j, ++t)
        if (g_.has_edge(lab_[i], lab_[j]))
          key.bytes[1 + t / 8] |= std::uint8_t(0x80u >> (t % 8));
    return key;
  }

  void record_automorphism() {
    // best_lab_ and lab_ induce the same key, so position-wise they differ
    // by an automorphism of g.
    if (generators_.size() >= 128) return;
    Perm sigma;
    bool identity = true;
    for (int i = 0; i < n_; ++i) {
      sigma[best_lab_[i]] = lab_[i];
      if (best_lab_[i] != lab_[i]) identity = false;
    }
    if (!identity) generators_.push_back(sigma);
  }

  void orbits_fixing_path(std::array<int, Graph::kMaxVertices>& parent) const {
    for (int i = 0; i < n_; ++i) parent[i] = i;
    auto find = [&](int v) {
      while (parent[v] != v) v = parent[v] = parent[parent[v]];
      return v;
    };
    for (const Perm& sigma : generators_) {
      bool fixes = true;
      for (int v : path_)
        if (sigma[v] != v) {
          fixes = false;
          break;
        }
      if (!fixes) continue;
      for (int v = 0; v < n_; ++v) {
        int a = find(v), b = find(sigma[v]);
        if (a != b) parent[a] = b;
      }
    }
  }

  void search() {
    int width = 0;
    int start = target_cell(width);
    if (start < 0) {
      CanonicalForm key = pack();
      if (!have_best_ || key < best_) {
        best_ = key;
        best_lab_ = lab_;
        best_path_ = path_;
        have_best_ = true;
      } else if (key == best_) {
        record_automorphism();
        // Jump back to where this path diverged from the best leaf's path:
        // the automorphism maps everything in between onto already-explored
        // ground.
        jump_depth_ = 0;
        while (jump_depth_ < int(path_.size()) && jump_depth_ < int(best_path_.size()) &&
               path_[jump_depth_] == best_path_[jump_depth_])
          ++jump_depth_;
      }
      return;
    }

    std::array<int, Graph::kMaxVertices> cand;
    for (int i = 0; i < width; ++i) cand[i] = lab_[start + i];
    std::sort(cand.begin(), cand.begin() + width);

    std::array<int, Graph::kMaxVertices> orbit;
    std::array<int, Graph::kMaxVertices> branched;
    int branched_count = 0;
    const int depth = int(path_.size());

    auto saved_lab = lab_;
    auto saved_ptn = ptn_;
    for (int ci = 0; ci < width; ++ci) {
      int v = cand[ci];
      if (branched_count > 0) {
        orbits_fixing_path(orbit);
        auto find = [&](int u) {
          while (orbit[u] != u) u = orbit[u] = orbit[orbit[u]];
          return u;
        };
        bool skip = false;
        for (int bi = 0; bi < branched_count && !skip; ++bi)
          if (find(branched[bi]) == find(v)) skip = true;
        if (skip) continue;
      }

      lab_ = saved_lab;
      ptn_ = saved_ptn;
      // individualize v at the front of its cell
      for (int i = start; i < start + width; ++i)
        if (lab_[i] == v) {
          std::swap(lab_[i], lab_[start]);
          break;
        }
      std::sort(lab_.begin() + start + 1, lab_.begin() + start + width);
      ptn_[start] = false;

      std::vector<std::uint32_t> queue{1u << v};
      refine(queue);
      path_.push_back(v);
      search();
      path_.pop_back();
      branched[branched_count++] = v;
      if (jump_depth_ >= 0) {
        if (jump_depth_ < depth) break;  // propagate the backjump
        jump_depth_ = -1;                // this is the divergence node
      }
    }
    lab_ = saved_lab;
    ptn_ = saved_ptn;
  }

  const Graph& g_;
  int n_;
  std::array<int, Graph::kMaxVertices> lab_{};
  std::array<bool, Graph::kMaxVertices> ptn_{};
  std::vector<int> path_;
  std::vector<int> best_path_;
  std::vector<Perm> generators_;
  CanonicalForm best_{};
  std::array<int, Graph::kMaxVertices> best_lab_{};
  bool have_best_ = false;
  int jump_depth_ = -1;
};

}  // namespace detail

inline CanonicalForm canonical_form(const Graph& g) {
  CanonicalForm key;
  std::array<int, Graph::kMaxVertices> lab;
  detail::CanonSearch(g).run(key, lab);
  return key;
}

/// Canonically relabeled copy of g; its key packs to canonical_form(g).
inline Graph canonical_graph(const Graph& g) {
  CanonicalForm key;
  std::array<int, Graph::kMaxVertices> lab;
  detail::CanonSearch(g).run(key, lab);
  if (g.order() <= 1) return g;
  return g.permuted(std::span<const int>(lab.data(), g.order()));
}

/// Key and relabeled graph in one search.
inline std::pair<CanonicalForm, Graph> canonical_form_and_graph(const Graph& g) {
  CanonicalForm key;
  std::array<int, Graph::kMaxVertices> lab;
  detail::CanonSearch(g).run(key, lab);
  if (g.order() <= 1) return {key, g};
  return {key, g.permuted(std::span<const int>(lab.data(), g.order()))};
}

inline bool are_isomorphic(const Graph& a, const Graph& b) {
  if (a.order() != b.order()) return false;
  return canonical_form(a) == canonical_form(b);
}

/// Set of isomorphism classes, keyed by canonical form. Insertion is
/// idempotent per class; merging is an order-independent key union.
class IsoSet {
 public:
  bool insert(const Graph& g) { return keys_.insert(canonical_form(g)).second; }

  bool insert_key(const CanonicalForm& key) { return keys_.insert(key).second; }

  bool contains(const Graph& g) const { return keys_.count(canonical_form(g)) > 0; }

  std::size_t count() const { return keys_.size(); }

  void merge(const IsoSet& other) {
    for (const auto& k : other.keys_) keys_.insert(k);
  }

  const std::unordered_set<CanonicalForm, CanonicalFormHash>& keys() const { return keys_; }

 private:
  std::unordered_set<CanonicalForm, CanonicalFormHash> keys_;
};

}  // namespace ramsey
