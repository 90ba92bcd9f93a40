#include "qlc/canonical.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <numeric>

namespace qlc {

namespace {

constexpr unsigned kMaxDigits = kMaxVertices * (kMaxVertices - 1) / 2;

struct Search {
  const WeightedGraph& g;
  unsigned n;
  unsigned d;
  std::array<std::uint8_t, kMaxDigits> best{};
  std::array<std::uint8_t, kMaxVertices> best_order{};
  bool have_best = false;
  std::array<unsigned, kMaxVertices> row_offset{};

  explicit Search(const WeightedGraph& graph) : g(graph), n(graph.n()), d(graph.d()) {
    unsigned off = 0;
    for (unsigned k = 0; k < n; ++k) {
      row_offset[k] = off;
      off += n - 1 - k;
    }
  }

  bool twins(unsigned u, unsigned v) const {
    const std::uint8_t* ru = g.row(u);
    const std::uint8_t* rv = g.row(v);
    for (unsigned x = 0; x < n; ++x)
      if (x != u && x != v && ru[x] != rv[x]) return false;
    return true;
  }

  int prefix_cmp(const std::array<std::uint8_t, kMaxDigits>& digits, unsigned len) const {
    for (unsigned i = 0; i < len; ++i)
      if (digits[i] != best[i]) return digits[i] < best[i] ? -1 : 1;
    return 0;
  }

  // order: vertices by position; cell_start bit p marks the first position of a cell.
  void dfs(unsigned k, const std::array<std::uint8_t, kMaxVertices>& order, std::uint32_t cell_start,
           std::array<std::uint8_t, kMaxDigits>& digits) {
    if (k + 1 >= n) {
      if (!have_best || prefix_cmp(digits, row_offset[n - 1]) < 0) {
        best = digits;
        best_order = order;
        have_best = true;
      }
      return;
    }
    unsigned cell_end = k + 1;
    while (cell_end < n && !(cell_start >> cell_end & 1u)) ++cell_end;

    std::array<std::uint8_t, kMaxVertices> tried{};
    unsigned ntried = 0;
    for (unsigned idx = k; idx < cell_end; ++idx) {
      const unsigned v = order[idx];
      bool skip = false;
      for (unsigned t = 0; t < ntried && !skip; ++t) skip = twins(tried[t], v);
      if (skip) continue;
      tried[ntried++] = static_cast<std::uint8_t>(v);

      std::array<std::uint8_t, kMaxVertices> next = order;
      std::swap(next[k], next[idx]);
      std::uint32_t next_start = cell_start | (1u << (k + 1));
      const std::uint8_t* rv = g.row(v);
      unsigned out = row_offset[k];

      // split each remaining cell by weight to v, ascending
      unsigned s = k + 1;
      while (s < n) {
        unsigned t = s + 1;
        while (t < n && !(cell_start >> t & 1u)) ++t;
        if (t - s == 1) {
          digits[out++] = rv[next[s]];
        } else {
          std::array<std::uint8_t, kMaxVertices> members{};
          std::copy(next.begin() + s, next.begin() + t, members.begin());
          unsigned pos = s;
          for (unsigned w = 0; w < d; ++w) {
            const unsigned group = pos;
            for (unsigned m = 0; m < t - s; ++m)
              if (rv[members[m]] == w) {
                next[pos++] = members[m];
                digits[out++] = static_cast<std::uint8_t>(w);
              }
            if (pos > group && group > s) next_start |= 1u << group;
          }
        }
        s = t;
      }

      if (have_best && prefix_cmp(digits, out) > 0) continue;
      dfs(k + 1, next, next_start, digits);
    }
  }

  void run() {
    std::array<std::uint8_t, kMaxVertices> order{};
    std::iota(order.begin(), order.begin() + n, std::uint8_t{0});
    std::array<std::uint8_t, kMaxDigits> digits{};
    dfs(0, order, 1u, digits);
  }

  GraphCode code() const {
    const unsigned b = static_cast<unsigned>(std::bit_width(d - 1));
    CodeBits bits = 0;
    for (unsigned i = 0; i < n * (n - 1) / 2; ++i) bits = (bits << b) | best[i];
    return {bits, static_cast<std::uint8_t>(n), static_cast<std::uint8_t>(d)};
  }
};

}  // namespace

CanonicalForm canonical_form(const WeightedGraph& g) {
  Search s(g);
  if (g.n() > 1) s.run();
  std::vector<unsigned> perm(g.n());
  for (unsigned i = 0; i < g.n(); ++i) perm[i] = g.n() > 1 ? s.best_order[i] : i;
  WeightedGraph cg = g.permuted(perm);
  GraphCode c = encode(cg);
  return {std::move(cg), c, std::move(perm)};
}

GraphCode canonical_code(const WeightedGraph& g) {
  if (g.n() <= 1) return encode(g);
  Search s(g);
  s.run();
  return s.code();
}

CanonicalForm canonical_form_scan(const WeightedGraph& g) {
  std::vector<unsigned> perm(g.n());
  std::iota(perm.begin(), perm.end(), 0u);
  CanonicalForm best{g, encode(g), perm};
  do {
    WeightedGraph p = g.permuted(perm);
    GraphCode c = encode(p);
    if (c.bits < best.code.bits) best = {std::move(p), c, perm};
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

namespace {

struct ColexSearch {
  const WeightedGraph& g;
  unsigned n;
  unsigned b;
  std::array<std::uint8_t, kMaxDigits> best{};
  std::array<std::uint8_t, kMaxDigits> digits{};
  std::array<std::uint8_t, kMaxVertices> pos{};
  bool have_best = false;

  explicit ColexSearch(const WeightedGraph& graph)
      : g(graph), n(graph.n()), b(static_cast<unsigned>(std::bit_width(graph.d() - 1))) {}

  // returns <0, 0, >0 comparing digits[0..len) with best
  int cmp(unsigned len) const {
    for (unsigned i = 0; i < len; ++i)
      if (digits[i] != best[i]) return digits[i] < best[i] ? -1 : 1;
    return 0;
  }

  void dfs(unsigned k, std::uint32_t used) {
    if (k == n) {
      if (!have_best || cmp(n * (n - 1) / 2) < 0) {
        best = digits;
        have_best = true;
      }
      return;
    }
    const unsigned base = k * (k - 1) / 2;
    for (unsigned v = 0; v < n; ++v) {
      if (used >> v & 1u) continue;
      const std::uint8_t* rv = g.row(v);
      for (unsigned i = 0; i < k; ++i) digits[base + i] = rv[pos[i]];
      if (have_best && cmp(base + k) > 0) continue;
      pos[k] = static_cast<std::uint8_t>(v);
      dfs(k + 1, used | 1u << v);
    }
  }

  CodeBits bits() const {
    CodeBits out = 0;
    for (unsigned i = 0; i < n * (n - 1) / 2; ++i) out = (out << b) | best[i];
    return out;
  }
};

}  // namespace

CodeBits colex_canonical_bits(const WeightedGraph& g) {
  if (g.n() <= 1) return 0;
  ColexSearch s(g);
  s.dfs(0, 0);
  return s.bits();
}

CodeBits colex_canonical_bits_scan(const WeightedGraph& g) {
  const unsigned n = g.n();
  const unsigned b = static_cast<unsigned>(std::bit_width(g.d() - 1));
  std::vector<unsigned> perm(n);
  std::iota(perm.begin(), perm.end(), 0u);
  CodeBits best = ~CodeBits{0};
  do {
    CodeBits c = 0;
    for (int i = static_cast<int>(n) - 1; i >= 0; --i)
      for (int j = static_cast<int>(n) - 1; j > i; --j) c = (c << b) | g.weight(perm[i], perm[j]);
    best = std::min(best, c);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return n <= 1 ? 0 : best;
}

}  // namespace qlc
