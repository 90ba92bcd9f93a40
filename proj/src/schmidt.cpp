#include "qlc/schmidt.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>

#include "qlc/gf.hpp"
#include "qlc/parallel.hpp"

namespace qlc {

namespace {

using Mask = std::uint32_t;

// Graph view for rules applied to vertex subsets.
struct View {
  const WeightedGraph& g;
  Field f;
  unsigned n;
  std::array<Mask, kMaxVertices> nbr{};

  explicit View(const WeightedGraph& graph) : g(graph), f(graph.d()), n(graph.n()) {
    for (unsigned u = 0; u < n; ++u)
      for (unsigned v = 0; v < n; ++v)
        if (g.weight(u, v) != 0) nbr[u] |= Mask{1} << v;
  }

  Mask all() const { return (Mask{1} << n) - 1; }

  unsigned block_rank(Mask rows, Mask cols) const {
    std::array<std::uint8_t, kMaxVertices * kMaxVertices> m{};
    std::size_t r = 0, c = 0, k = 0;
    for (unsigned u = 0; u < n; ++u) {
      if (!(rows >> u & 1u)) continue;
      c = 0;
      for (unsigned v = 0; v < n; ++v)
        if (cols >> v & 1u) {
          m[k++] = static_cast<std::uint8_t>(g.weight(u, v));
          ++c;
        }
      ++r;
    }
    if (r == 0 || c == 0) return 0;
    return static_cast<unsigned>(matrix_rank_inplace(std::span(m.data(), r * c), r, c, f));
  }

  Mask drop_isolated(Mask m) const {
    Mask out = 0;
    for (unsigned v = 0; v < n; ++v)
      if ((m >> v & 1u) && (nbr[v] & m)) out |= Mask{1} << v;
    return out;
  }

  unsigned bipartition_bound(Mask m) const {
    if (std::popcount(m) < 2) return 0;
    // fix the lowest vertex on side A so each split is seen once
    const Mask low = m & (~m + 1);
    const Mask rest = m & ~low;
    unsigned best = 0;
    for (Mask s = rest;; s = (s - 1) & rest) {
      const Mask a = low | s;
      if (a != m) best = std::max(best, block_rank(a, m & ~a));
      if (s == 0) break;
    }
    return best;
  }

  // side[v] in {0,1} if the subgraph on m is bipartite
  bool two_colorable(Mask m) const {
    Mask seen = 0, side1 = 0;
    for (unsigned s = 0; s < n; ++s) {
      if (!(m >> s & 1u) || (seen >> s & 1u)) continue;
      std::array<unsigned, kMaxVertices> queue{};
      std::size_t head = 0, tail = 0;
      queue[tail++] = s;
      seen |= Mask{1} << s;
      while (head < tail) {
        const unsigned v = queue[head++];
        const bool sv = side1 >> v & 1u;
        for (Mask nb = nbr[v] & m; nb; nb &= nb - 1) {
          const unsigned u = static_cast<unsigned>(std::countr_zero(nb));
          if (seen >> u & 1u) {
            if (static_cast<bool>(side1 >> u & 1u) == sv) return false;
          } else {
            seen |= Mask{1} << u;
            if (!sv) side1 |= Mask{1} << u;
            queue[tail++] = u;
          }
        }
      }
    }
    return true;
  }

  // min over proper 3-colourings of (n - largest class); -1 if none
  int min_two_smallest(Mask m) const {
    std::array<unsigned, kMaxVertices> verts{};
    unsigned k = 0;
    for (unsigned v = 0; v < n; ++v)
      if (m >> v & 1u) verts[k++] = v;
    int best = -1;
    std::array<Mask, 3> cls{};
    auto rec = [&](auto&& self, unsigned i, unsigned used) -> void {
      if (i == k) {
        int largest = 0;
        for (Mask c : cls) largest = std::max(largest, std::popcount(c));
        const int val = static_cast<int>(k) - largest;
        if (best < 0 || val < best) best = val;
        return;
      }
      const unsigned v = verts[i];
      // colours beyond the first unused one are symmetric
      const unsigned limit = std::min(3u, used + 1);
      for (unsigned c = 0; c < limit; ++c) {
        if (nbr[v] & cls[c]) continue;
        cls[c] |= Mask{1} << v;
        self(self, i + 1, std::max(used, c + 1));
        cls[c] &= ~(Mask{1} << v);
      }
    };
    rec(rec, 0, 0);
    return best;
  }

  std::pair<unsigned, unsigned> coloring(Mask m, bool with_bipartition) const {
    m = drop_isolated(m);
    const unsigned k = static_cast<unsigned>(std::popcount(m));
    if (k == 0) return {0, 0};
    unsigned lower = 0, upper = k - 1;
    if (two_colorable(m)) {
      const unsigned r = block_rank(m, m);
      lower = (r + 1) / 2;
      if (with_bipartition) lower = std::max(lower, bipartition_bound(m));
      upper = k / 2;
      if (r == k) lower = upper;
    }
    const int n12 = min_two_smallest(m);
    if (n12 >= 0) upper = std::min(upper, static_cast<unsigned>(n12));
    return {lower, upper};
  }

  unsigned removal(Mask m, unsigned budget) const {
    unsigned best = ~0u;
    for (Mask left = m; left; left &= left - 1) {
      const Mask sub = m & ~(left & (~left + 1));
      unsigned up = coloring(sub, false).second;
      if (budget > 1) up = std::min(up, removal(drop_isolated(sub), budget - 1));
      best = std::min(best, up + 1);
    }
    return best;
  }
};

}  // namespace

unsigned bipartition_lower_bound(const WeightedGraph& g) {
  const View v(g);
  return v.bipartition_bound(v.all());
}

std::pair<unsigned, unsigned> colorability_bounds(const WeightedGraph& g) {
  const View v(g);
  return v.coloring(v.all(), true);
}

unsigned vertex_removal_upper_bound(const WeightedGraph& g, unsigned budget) {
  if (budget == 0) throw std::invalid_argument("vertex removal needs a budget of at least 1");
  const View v(g);
  if (v.n == 0) return 0;
  return v.removal(v.drop_isolated(v.all()), budget);
}

namespace {

unsigned member_lower(const View& v) {
  return std::max(v.bipartition_bound(v.all()), v.coloring(v.all(), true).first);
}

unsigned member_upper(const View& v, unsigned budget) {
  const Mask m = v.drop_isolated(v.all());
  unsigned up = v.coloring(m, false).second;
  if (budget > 0 && m != 0) up = std::min(up, v.removal(m, budget));
  return up;
}

}  // namespace

SchmidtBounds graph_schmidt_bounds(const WeightedGraph& g, const SchmidtConfig& cfg) {
  const View v(g);
  const SchmidtBounds b{member_lower(v), member_upper(v, cfg.removal_budget)};
  if (b.lower > b.upper) throw SchmidtError("Schmidt lower bound exceeds upper bound");
  return b;
}

SchmidtBounds orbit_schmidt_bounds(const OrbitGraph& og, const SchmidtConfig& cfg) {
  if (og.size() == 0) throw std::invalid_argument("Schmidt bounds of an empty orbit");
  const unsigned n = og.members.front().n;
  std::atomic<unsigned> lower{0};
  std::atomic<unsigned> upper{n == 0 ? 0u : n - 1};
  const unsigned jobs = resolve_jobs(cfg.jobs);
  parallel_for(og.size(), jobs, [&](std::size_t i) {
    const WeightedGraph g = decode(og.members[i]);
    const unsigned lo = member_lower(View(g));
    unsigned cur = lower.load();
    while (lo > cur && !lower.compare_exchange_weak(cur, lo)) {
    }
  }, 256);
  parallel_for(og.size(), jobs, [&](std::size_t i) {
    const WeightedGraph g = decode(og.members[i]);
    const unsigned up = member_upper(View(g), cfg.removal_budget);
    unsigned cur = upper.load();
    while (up < cur && !upper.compare_exchange_weak(cur, up)) {
    }
  }, 256);
  const SchmidtBounds b{lower.load(), upper.load()};
  if (b.lower > b.upper)
    throw SchmidtError("orbit Schmidt bounds are inconsistent: " + std::to_string(b.lower) + " > " +
                       std::to_string(b.upper));
  return b;
}

}  // namespace qlc
