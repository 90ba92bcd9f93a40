#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "qlc/gf.hpp"

namespace qlc {

inline constexpr unsigned kMaxVertices = 9;

using CodeBits = unsigned __int128;

std::string to_decimal(CodeBits v);
CodeBits parse_decimal(std::string_view s);

class GraphError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Packed-integer identity of a weighted graph. Pair (i,j), i<j, in row-major
/// order takes b = ceil(log2 d) bits, the first pair in the most significant
/// position, so numeric order equals lexicographic order of the upper triangle.
struct GraphCode {
  CodeBits bits = 0;
  std::uint8_t n = 1;
  std::uint8_t d = 2;

  friend bool operator==(const GraphCode&, const GraphCode&) = default;
  friend std::strong_ordering operator<=>(const GraphCode& a, const GraphCode& b) {
    if (auto c = a.n <=> b.n; c != 0) return c;
    if (auto c = a.d <=> b.d; c != 0) return c;
    return a.bits <=> b.bits;
  }
};

struct Edge {
  unsigned u;
  unsigned v;
  unsigned w;
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Symmetric F_d-weighted adjacency with zero diagonal: the graph-state
/// description. Stored as a full n x n byte matrix for fast row access.
class WeightedGraph {
 public:
  WeightedGraph() = default;
  WeightedGraph(unsigned n, const Field& f);

  static WeightedGraph from_upper(unsigned n, const Field& f, const std::vector<unsigned>& upper);
  static WeightedGraph from_edges(unsigned n, const Field& f, const std::vector<Edge>& edges);

  unsigned n() const noexcept { return n_; }
  unsigned d() const noexcept { return d_; }
  Field field() const { return Field(d_); }

  unsigned weight(unsigned u, unsigned v) const noexcept { return adj_[u * kMaxVertices + v]; }
  void set_weight(unsigned u, unsigned v, unsigned w);
  /// Unchecked write of an already-reduced weight, both triangle halves.
  void put(unsigned u, unsigned v, std::uint8_t w) noexcept {
    adj_[u * kMaxVertices + v] = w;
    adj_[v * kMaxVertices + u] = w;
  }
  const std::uint8_t* row(unsigned u) const noexcept { return adj_.data() + u * kMaxVertices; }

  /// Upper-triangle weights, row-major over (i,j), i<j.
  std::vector<unsigned> upper() const;
  std::vector<Edge> edges() const;
  std::size_t edge_count() const noexcept;
  unsigned total_weight() const noexcept;
  unsigned weighted_degree(unsigned v) const;
  unsigned max_weighted_degree() const noexcept;
  bool has_edge(unsigned u, unsigned v) const noexcept { return weight(u, v) != 0; }

  /// Graph with vertex `perm[i]` of this graph placed at position i.
  WeightedGraph permuted(const std::vector<unsigned>& perm) const;
  /// Induced subgraph on the vertices where `keep` is set, in order.
  WeightedGraph induced(const std::vector<bool>& keep) const;

  friend bool operator==(const WeightedGraph& a, const WeightedGraph& b) {
    return a.n_ == b.n_ && a.d_ == b.d_ && a.adj_ == b.adj_;
  }

 private:
  std::uint8_t n_ = 0;
  std::uint8_t d_ = 2;
  std::array<std::uint8_t, kMaxVertices * kMaxVertices> adj_{};
};

/// Width in bits of a code for (n, d); encode rejects widths above 128.
unsigned code_width(unsigned n, unsigned d);

GraphCode encode(const WeightedGraph& g);
WeightedGraph decode(const GraphCode& code);

bool is_connected(const WeightedGraph& g);
unsigned weighted_degree(const WeightedGraph& g, unsigned v);
unsigned total_weight(const WeightedGraph& g);

/// Bitmask adjacency of the weight support, one word per vertex.
std::vector<std::uint32_t> support_masks(const WeightedGraph& g);

/// True iff the support admits a proper k-coloring; fills `colors` when non-null.
bool is_k_colorable(const WeightedGraph& g, unsigned k, std::vector<unsigned>* colors = nullptr);
/// Exact chromatic number of the weight support (weights ignored). 1 for edgeless.
unsigned chromatic_number_exact(const WeightedGraph& g);

/// DOT text, one labelled edge per nonzero weight.
std::string to_dot(const WeightedGraph& g, std::string_view name = "G");
/// Reads back the subset of DOT emitted by to_dot.
WeightedGraph parse_dot(std::string_view text, const Field& f);

/// Edge-list text: one "u v w" triple per line, 0-based vertices, '#' comments.
/// The vertex count is the largest index + 1 unless `n` is given.
WeightedGraph parse_edge_list(std::string_view text, const Field& f, unsigned n = 0);

}  // namespace qlc

template <>
struct std::hash<qlc::GraphCode> {
  std::size_t operator()(const qlc::GraphCode& c) const noexcept {
    const auto lo = static_cast<std::uint64_t>(c.bits);
    const auto hi = static_cast<std::uint64_t>(c.bits >> 64);
    std::uint64_t h = lo * 0x9E3779B97F4A7C15ull ^ (hi + 0x632BE59BD9B4E019ull + (lo << 6));
    h ^= h >> 31;
    return static_cast<std::size_t>(h ^ (std::uint64_t{c.n} << 56) ^ (std::uint64_t{c.d} << 48));
  }
};
