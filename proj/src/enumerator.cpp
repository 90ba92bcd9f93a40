#include "qlc/enumerator.hpp"

#include <algorithm>

#include "qlc/canonical.hpp"
#include "qlc/parallel.hpp"

namespace qlc {

namespace {

void sort_unique(std::vector<GraphCode>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

std::vector<WeightedGraph> decode_all(const std::vector<GraphCode>& codes) {
  std::vector<WeightedGraph> out;
  out.reserve(codes.size());
  for (const auto& c : codes) out.push_back(decode(c));
  return out;
}

}  // namespace

std::vector<WeightedGraph> enumerate_simple_all(unsigned n) {
  if (n < 1 || n > kMaxVertices) throw GraphError("simple enumeration supports 1 <= n <= 9");
  const Field f2(2);
  std::vector<GraphCode> level{encode(WeightedGraph(1, f2))};
  for (unsigned m = 2; m <= n; ++m) {
    std::vector<GraphCode> next;
    for (const GraphCode& c : level) {
      const WeightedGraph small = decode(c);
      for (std::uint32_t nb = 0; nb < (1u << (m - 1)); ++nb) {
        WeightedGraph g(m, f2);
        for (unsigned i = 0; i < m - 1; ++i)
          for (unsigned j = i + 1; j < m - 1; ++j) g.put(i, j, small.row(i)[j]);
        for (unsigned i = 0; i < m - 1; ++i)
          if (nb >> i & 1u) g.put(i, m - 1, 1);
        next.push_back(canonical_code(g));
      }
    }
    sort_unique(next);
    level = std::move(next);
  }
  return decode_all(level);
}

std::vector<WeightedGraph> enumerate_simple_connected(unsigned n) {
  auto all = enumerate_simple_all(n);
  std::erase_if(all, [](const WeightedGraph& g) { return !is_connected(g); });
  return all;
}

std::vector<WeightedGraph> enumerate_simple_connected_bruteforce(unsigned n) {
  const Field f2(2);
  const unsigned pairs = n * (n - 1) / 2;
  std::vector<GraphCode> codes;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs); ++mask) {
    std::vector<unsigned> upper(pairs);
    for (unsigned k = 0; k < pairs; ++k) upper[k] = (mask >> k) & 1u;
    WeightedGraph g = WeightedGraph::from_upper(n, f2, upper);
    if (is_connected(g)) codes.push_back(canonical_code(g));
  }
  sort_unique(codes);
  return decode_all(codes);
}

std::vector<GraphCode> weightings_of_support(const WeightedGraph& support, unsigned d) {
  const Field f(d);
  const auto edges = support.edges();
  const std::size_t e = edges.size();
  std::vector<GraphCode> out;
  WeightedGraph g(support.n(), f);
  // odometer over weights {1..d-1} per support edge
  std::vector<unsigned> w(e, 1);
  for (std::size_t k = 0; k < e; ++k) g.put(edges[k].u, edges[k].v, 1);
  for (;;) {
    out.push_back(canonical_code(g));
    std::size_t k = 0;
    while (k < e && w[k] == d - 1) {
      w[k] = 1;
      g.put(edges[k].u, edges[k].v, 1);
      ++k;
    }
    if (k == e) break;
    ++w[k];
    g.put(edges[k].u, edges[k].v, static_cast<std::uint8_t>(w[k]));
  }
  sort_unique(out);
  return out;
}

Enumeration enumerate_weighted_connected(unsigned n, unsigned d, unsigned jobs) {
  const Field f(d);
  const auto supports = enumerate_simple_connected(n);
  std::vector<std::vector<GraphCode>> shards(supports.size());
  parallel_for(supports.size(), resolve_jobs(jobs),
               [&](std::size_t i) { shards[i] = weightings_of_support(supports[i], f.modulus()); });

  Enumeration result{n, d, {}, {}};
  std::size_t total = 0;
  for (const auto& s : shards) total += s.size();
  result.codes.reserve(total);
  for (std::size_t i = 0; i < supports.size(); ++i) {
    result.census.push_back({encode(supports[i]), supports[i].edge_count(), shards[i].size()});
    result.codes.insert(result.codes.end(), shards[i].begin(), shards[i].end());
  }
  std::sort(result.codes.begin(), result.codes.end());
  return result;
}

}  // namespace qlc
