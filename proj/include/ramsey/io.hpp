#pragma once

#include <cstdint>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ramsey/graph.hpp"

namespace ramsey {

struct ParseError : std::runtime_error {
  ParseError(std::size_t offset_, const std::string& what_)
      : std::runtime_error(what_ + " (byte " + std::to_string(offset_) + ")"),
        offset(offset_) {}
  std::size_t offset;
};

/// graph6 line for n <= 31: header byte n+63, then the upper-triangle bits
/// in column order (j = 1..n-1, i = 0..j-1) packed big-endian into 6-bit
/// groups, each emitted as group+63; the last group is zero-padded.
inline std::string format_graph6(const Graph& g) {
  const int n = g.order();
  std::string out;
  out.push_back(static_cast<char>(n + 63));
  int acc = 0, nbits = 0;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i) {
      acc = (acc << 1) | (g.has_edge(i, j) ? 1 : 0);
      if (++nbits == 6) {
        out.push_back(static_cast<char>(acc + 63));
        acc = 0;
        nbits = 0;
      }
    }
  if (nbits > 0) out.push_back(static_cast<char>((acc << (6 - nbits)) + 63));
  return out;
}

inline Graph parse_graph6(std::string_view line) {
  if (line.empty()) throw ParseError(0, "empty graph6 line");
  const int n = static_cast<unsigned char>(line[0]) - 63;
  if (n < 0 || n > Graph::kMaxVertices)
    throw ParseError(0, "graph6 header outside supported order 0..31");
  const std::size_t nbits = std::size_t(n) * (n - 1) / 2;
  const std::size_t expect = 1 + (nbits + 5) / 6;
  if (line.size() != expect)
    throw ParseError(line.size(), "graph6 line has length " + std::to_string(line.size()) +
                                      ", expected " + std::to_string(expect));
  Graph g(n);
  std::size_t t = 0;
  for (std::size_t b = 1; b < line.size(); ++b) {
    const int c = static_cast<unsigned char>(line[b]);
    if (c < 63 || c > 126) throw ParseError(b, "graph6 byte outside 63..126");
    const int group = c - 63;
    for (int k = 5; k >= 0; --k, ++t) {
      const int bit = (group >> k) & 1;
      if (t >= nbits) {
        if (bit) throw ParseError(b, "nonzero padding bit in final graph6 group");
        continue;
      }
      if (bit) {
        // bit t is pair (i, j) in column order
        std::size_t s = t;
        int j = 1;
        while (s >= std::size_t(j)) s -= j, ++j;
        g.add_edge(static_cast<int>(s), j);
      }
    }
  }
  return g;
}

/// Adjacency-matrix text: n lines of n space-separated 0/1 entries, each
/// line optionally prefixed with a row index. Must be symmetric with a
/// zero diagonal.
inline Graph parse_matrix(std::string_view block) {
  std::vector<std::vector<int>> rows;
  std::istringstream in{std::string(block)};
  std::string linebuf;
  while (std::getline(in, linebuf)) {
    std::istringstream ls(linebuf);
    std::vector<int> row;
    std::string tok;
    while (ls >> tok) {
      try {
        row.push_back(std::stoi(tok));
      } catch (const std::exception&) {
        throw std::invalid_argument("matrix token '" + tok + "' is not a number");
      }
    }
    if (!row.empty()) rows.push_back(std::move(row));
  }
  const int n = static_cast<int>(rows.size());
  if (n == 0) throw std::invalid_argument("matrix block has no rows");
  if (n > Graph::kMaxVertices)
    throw std::invalid_argument("matrix order exceeds the vertex cap");
  bool indexed = false;
  if (static_cast<int>(rows[0].size()) == n + 1)
    indexed = true;
  for (int r = 0; r < n; ++r) {
    if (static_cast<int>(rows[r].size()) != n + (indexed ? 1 : 0))
      throw std::invalid_argument("matrix row " + std::to_string(r + 1) + " is ragged");
    if (indexed) rows[r].erase(rows[r].begin());
  }
  Graph g(n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      const int e = rows[r][c];
      if (e != 0 && e != 1)
        throw std::invalid_argument("matrix entry (" + std::to_string(r + 1) + "," +
                                    std::to_string(c + 1) + ") is not 0/1");
      if (r == c && e != 0)
        throw std::invalid_argument("nonzero diagonal at row " + std::to_string(r + 1));
      if (c < r) {
        if (e != rows[c][r])
          throw std::invalid_argument("matrix asymmetric at (" + std::to_string(r + 1) + "," +
                                      std::to_string(c + 1) + ")");
        if (e) g.add_edge(r, c);
      }
    }
  return g;
}

inline std::string format_matrix(const Graph& g) {
  std::string out;
  for (int r = 0; r < g.order(); ++r) {
    for (int c = 0; c < g.order(); ++c) {
      if (c) out.push_back(' ');
      out.push_back(g.has_edge(r, c) ? '1' : '0');
    }
    out.push_back('\n');
  }
  return out;
}

/// FNV-1a content digest, used to detect corrupt checkpoint files.
inline std::string content_digest(std::string_view data) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

}  // namespace ramsey
