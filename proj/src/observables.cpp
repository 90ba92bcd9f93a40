#include "qlc/observables.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "qlc/canonical.hpp"

namespace qlc {

std::vector<unsigned> og_greedy_coloring(const OrbitGraph& og, const ColoringPolicy& policy) {
  const Csr& g = og.adjacency;
  const std::size_t v_count = og.size();
  std::vector<std::uint32_t> order(v_count);
  std::iota(order.begin(), order.end(), 0u);
  auto sort_degree = [&](std::uint32_t v) {
    return g.degree(v) + (og.has_loop(v, policy.loops) ? policy.loop_degree : 0);
  };
  // members are sorted by code, so vertex id order is code order
  if (policy.tie == ColoringPolicy::Tie::DescendingCode) std::reverse(order.begin(), order.end());
  std::stable_sort(order.begin(), order.end(),
                   [&](std::uint32_t a, std::uint32_t b) { return sort_degree(a) > sort_degree(b); });

  constexpr unsigned kNone = ~0u;
  std::vector<unsigned> color(v_count, kNone);
  std::vector<std::uint32_t> mark;  // mark[c] == stamp when colour c is taken
  std::uint32_t stamp = 0;
  for (std::uint32_t v : order) {
    ++stamp;
    for (const std::uint32_t* u = g.begin(v); u != g.end(v); ++u)
      if (color[*u] != kNone) {
        if (color[*u] >= mark.size()) mark.resize(color[*u] + 1, 0);
        mark[color[*u]] = stamp;
      }
    unsigned c = 0;
    while (c < mark.size() && mark[c] == stamp) ++c;
    color[v] = c;
  }
  return color;
}

unsigned og_chromatic_greedy(const OrbitGraph& og, const ColoringPolicy& policy) {
  if (og.size() == 0) return 0;
  const auto color = og_greedy_coloring(og, policy);
  return *std::max_element(color.begin(), color.end()) + 1;
}

std::uint64_t og_self_loops(const OrbitGraph& og, LoopPolicy policy) {
  std::uint64_t c = 0;
  for (std::size_t v = 0; v < og.size(); ++v) c += og.has_loop(v, policy);
  return c;
}

double og_density(const OrbitGraph& og, LoopPolicy policy) {
  const double v = static_cast<double>(og.size());
  if (og.size() < 2) throw ObservableError("density is undefined for fewer than two vertices");
  const double edges = static_cast<double>(og.adjacency.edge_count() + og_self_loops(og, policy));
  return edges / (v * (v - 1) / 2);
}

namespace {

/// Runs bit-parallel BFS from up to 64*words sources at once.
class BatchBfs {
 public:
  BatchBfs(const Csr& g, kernels::Isa isa)
      : g_(g), expand_(kernels::bfs_expand_for(isa)), words_(kernels::preferred_words(isa)) {
    const std::size_t cells = g.vertex_count() * words_;
    frontier_.assign(cells, 0);
    visited_.assign(cells, 0);
    next_.assign(cells, 0);
  }

  std::size_t capacity() const noexcept { return 64 * words_; }

  /// on_level(level, next_bits, newly_reached) is called for each level >= 1.
  template <class OnLevel>
  void run(std::span<const std::uint32_t> sources, OnLevel&& on_level) {
    std::fill(frontier_.begin(), frontier_.end(), 0);
    std::fill(visited_.begin(), visited_.end(), 0);
    for (std::size_t s = 0; s < sources.size(); ++s) {
      const std::size_t cell = std::size_t{sources[s]} * words_ + s / 64;
      frontier_[cell] |= std::uint64_t{1} << (s % 64);
      visited_[cell] |= std::uint64_t{1} << (s % 64);
    }
    for (unsigned level = 1;; ++level) {
      const std::uint64_t reached = expand_(g_.vertex_count(), g_.offsets.data(), g_.targets.data(),
                                            frontier_.data(), visited_.data(), next_.data(), words_);
      if (reached == 0) break;
      on_level(level, static_cast<const std::vector<std::uint64_t>&>(next_), reached);
      std::swap(frontier_, next_);
    }
  }

  bool bit(const std::vector<std::uint64_t>& bits, std::uint32_t vertex, std::size_t source_slot) const {
    return bits[std::size_t{vertex} * words_ + source_slot / 64] >> (source_slot % 64) & 1u;
  }

 private:
  const Csr& g_;
  kernels::BfsExpandFn expand_;
  std::size_t words_;
  std::vector<std::uint64_t> frontier_, visited_, next_;
};

}  // namespace

DistanceSummary og_distances_exact(const Csr& g, kernels::Isa isa) {
  const std::size_t v_count = g.vertex_count();
  if (v_count < 2) return {0.0, 0};
  BatchBfs bfs(g, isa);
  std::vector<std::uint32_t> sources;
  // exact integer sum: at most V^2 * diameter, far below 2^64 for supported sizes
  std::uint64_t total = 0, pairs = 0;
  unsigned diameter = 0;
  for (std::size_t begin = 0; begin < v_count; begin += bfs.capacity()) {
    const std::size_t end = std::min(v_count, begin + bfs.capacity());
    sources.resize(end - begin);
    std::iota(sources.begin(), sources.end(), static_cast<std::uint32_t>(begin));
    bfs.run(sources, [&](unsigned level, const auto&, std::uint64_t reached) {
      total += reached * level;
      pairs += reached;
      diameter = std::max(diameter, level);
    });
  }
  if (pairs != v_count * (v_count - 1)) throw ObservableError("orbit graph is not connected");
  return {static_cast<double>(total) / static_cast<double>(pairs), diameter};
}

double og_aspl_exact(const OrbitGraph& og) { return og_distances_exact(og.adjacency).aspl; }
unsigned og_diameter_exact(const OrbitGraph& og) { return og_distances_exact(og.adjacency).diameter; }

double og_aspl_sampled(const Csr& g, std::size_t pairs, unsigned rounds, std::uint64_t seed,
                       kernels::Isa isa) {
  const std::size_t v_count = g.vertex_count();
  if (v_count < 2 || pairs == 0 || rounds == 0) return 0.0;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(v_count - 1));
  struct Pair {
    std::uint32_t u, v, dist;
  };
  std::vector<Pair> all;
  all.reserve(pairs * rounds);
  for (std::size_t i = 0; i < pairs * rounds; ++i) {
    std::uint32_t u = pick(rng), v = pick(rng);
    while (v == u) v = pick(rng);
    all.push_back({u, v, 0});
  }
  // group by source so one batched BFS resolves every pair sharing it
  std::vector<std::uint32_t> by_source(all.size());
  std::iota(by_source.begin(), by_source.end(), 0u);
  std::sort(by_source.begin(), by_source.end(),
            [&](std::uint32_t a, std::uint32_t b) { return all[a].u < all[b].u; });
  BatchBfs bfs(g, isa);
  std::size_t i = 0;
  std::vector<std::uint32_t> sources;
  std::vector<std::pair<std::uint32_t, std::size_t>> pending;  // (pair index, source slot)
  while (i < by_source.size()) {
    sources.clear();
    pending.clear();
    while (i < by_source.size()) {
      const std::uint32_t u = all[by_source[i]].u;
      if (sources.empty() || sources.back() != u) {
        if (sources.size() == bfs.capacity()) break;
        sources.push_back(u);
      }
      pending.emplace_back(by_source[i], sources.size() - 1);
      ++i;
    }
    bfs.run(sources, [&](unsigned level, const auto& next, std::uint64_t) {
      for (auto& [p, slot] : pending)
        if (all[p].dist == 0 && bfs.bit(next, all[p].v, slot)) all[p].dist = level;
    });
  }
  double acc = 0.0;
  for (unsigned r = 0; r < rounds; ++r) {
    std::uint64_t sum = 0;
    for (std::size_t k = 0; k < pairs; ++k) sum += all[r * pairs + k].dist;
    acc += static_cast<double>(sum) / static_cast<double>(pairs);
  }
  return acc / rounds;
}

unsigned og_diameter_heuristic(const Csr& g, unsigned seeds, std::uint64_t seed, kernels::Isa isa) {
  const std::size_t v_count = g.vertex_count();
  if (v_count < 2) return 0;
  std::vector<std::uint32_t> all(v_count);
  std::iota(all.begin(), all.end(), 0u);
  std::mt19937_64 rng(seed);
  const std::size_t k = std::min<std::size_t>(seeds, v_count);
  // partial Fisher-Yates: the first k entries become a uniform sample
  for (std::size_t i = 0; i < k; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, v_count - 1);
    std::swap(all[i], all[pick(rng)]);
  }
  all.resize(k);
  BatchBfs bfs(g, isa);
  unsigned diameter = 0;
  for (std::size_t begin = 0; begin < k; begin += bfs.capacity()) {
    const std::size_t end = std::min(k, begin + bfs.capacity());
    bfs.run(std::span<const std::uint32_t>(all).subspan(begin, end - begin),
            [&](unsigned level, const auto&, std::uint64_t) { diameter = std::max(diameter, level); });
  }
  return diameter;
}

std::vector<std::uint32_t> bfs_distances(const Csr& g, std::uint32_t source) {
  constexpr std::uint32_t kInf = ~0u;
  std::vector<std::uint32_t> dist(g.vertex_count(), kInf);
  std::vector<std::uint32_t> queue{source};
  dist[source] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const std::uint32_t v = queue[head];
    for (const std::uint32_t* u = g.begin(v); u != g.end(v); ++u)
      if (dist[*u] == kInf) {
        dist[*u] = dist[v] + 1;
        queue.push_back(*u);
      }
  }
  return dist;
}

unsigned og_max_degree(const OrbitGraph& og, unsigned loop_weight, LoopPolicy policy) {
  std::size_t best = 0;
  for (std::size_t v = 0; v < og.size(); ++v)
    best = std::max(best, og.adjacency.degree(v) + (og.has_loop(v, policy) ? loop_weight : 0));
  return static_cast<unsigned>(best);
}

unsigned orbit_min_chromatic(const OrbitGraph& og) {
  unsigned best = ~0u;
  for (const GraphCode& c : og.members) {
    const WeightedGraph g = decode(c);
    // chromatic number is at least 2 with any edge, so stop early when reached
    best = std::min(best, chromatic_number_exact(g));
    if (best <= 2 && g.n() > 1) break;
  }
  return best;
}

unsigned orbit_min_max_degree(const OrbitGraph& og) {
  unsigned best = ~0u;
  for (const GraphCode& c : og.members) best = std::min(best, decode(c).max_weighted_degree());
  return best;
}

double round_to(double x, int decimals) {
  const double scale = std::pow(10.0, decimals);
  return std::round(x * scale) / scale;
}

ObservableRow compute_observables(const OrbitGraph& og, const ObservableConfig& cfg) {
  ObservableRow row;
  row.chi_og = og_chromatic_greedy(og, cfg.coloring);
  row.self_loops = og_self_loops(og, cfg.loops);
  row.ln_loops = std::log(static_cast<double>(row.self_loops) + 1.0);
  row.chi_i = orbit_min_chromatic(og);
  row.density = og.size() >= 2 ? og_density(og, cfg.loops) : 0.0;
  if (og.size() < cfg.exact_threshold) {
    const DistanceSummary s = og_distances_exact(og.adjacency, cfg.isa);
    row.aspl = s.aspl;
    row.diameter = s.diameter;
  } else {
    row.aspl = og_aspl_sampled(og.adjacency, cfg.aspl_pairs, cfg.aspl_rounds, cfg.seed, cfg.isa);
    row.diameter = og_diameter_heuristic(og.adjacency, cfg.diameter_seeds, cfg.seed + 1, cfg.isa);
    row.aspl_exact = false;
    row.diameter_exact = false;
  }
  row.deg_g_min = orbit_min_max_degree(og);
  row.deg_og_max = og_max_degree(og, cfg.og_degree_loop_weight, cfg.loops);
  return row;
}

}  // namespace qlc
