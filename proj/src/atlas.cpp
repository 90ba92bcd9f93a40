#include "qlc/atlas.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <unordered_set>

#include "qlc/canonical.hpp"
#include "qlc/local_ops.hpp"
#include "qlc/parallel.hpp"

namespace qlc {

Csr csr_from_pairs(std::size_t vertices, std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs) {
  const std::size_t m = pairs.size();
  pairs.reserve(2 * m);
  for (std::size_t i = 0; i < m; ++i) pairs.emplace_back(pairs[i].second, pairs[i].first);
  std::erase_if(pairs, [](const auto& p) { return p.first == p.second; });
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  Csr csr;
  csr.offsets.assign(vertices + 1, 0);
  for (const auto& [u, v] : pairs) ++csr.offsets[u + 1];
  for (std::size_t v = 0; v < vertices; ++v) csr.offsets[v + 1] += csr.offsets[v];
  csr.targets.reserve(pairs.size());
  for (const auto& p : pairs) csr.targets.push_back(p.second);
  return csr;
}

std::optional<std::uint32_t> OrbitAtlas::find(const GraphCode& c) const {
  auto it = std::lower_bound(codes.begin(), codes.end(), c);
  if (it == codes.end() || !(*it == c)) return std::nullopt;
  return static_cast<std::uint32_t>(it - codes.begin());
}

std::vector<std::uint32_t> atlas_slots(const std::vector<GraphCode>& codes, std::size_t begin,
                                       std::size_t end, unsigned jobs) {
  if (begin >= end) return {};
  const unsigned n = codes[begin].n, d = codes[begin].d;
  const auto ops = admissible_ops(n, d);
  const std::size_t k = ops.size();
  std::vector<std::uint32_t> slots((end - begin) * k);
  parallel_for(
      end - begin, jobs,
      [&](std::size_t i) {
        const GraphCode& self = codes[begin + i];
        const WeightedGraph g = decode(self);
        for (std::size_t j = 0; j < k; ++j) {
          const WeightedGraph img = apply(g, ops[j]);
          std::uint32_t slot;
          if (img == g) {
            slot = kSelfIdentity;
          } else {
            const GraphCode c = canonical_code(img);
            if (c == self) {
              slot = kSelfChanged;
            } else {
              auto it = std::lower_bound(codes.begin(), codes.end(), c);
              if (it == codes.end() || !(*it == c))
                throw std::logic_error("operation image " + to_decimal(c.bits) + " missing from the vertex set");
              slot = static_cast<std::uint32_t>(it - codes.begin());
            }
          }
          slots[i * k + j] = slot;
        }
      },
      256);
  return slots;
}

OrbitAtlas atlas_from_slots(unsigned n, unsigned d, std::vector<GraphCode> codes,
                            const std::vector<std::uint32_t>& slots) {
  OrbitAtlas a;
  a.n = n;
  a.d = d;
  a.codes = std::move(codes);
  const std::size_t v_count = a.codes.size();
  const std::size_t k = op_count(n, d);
  if (slots.size() != v_count * k) throw std::logic_error("atlas slot table has the wrong size");
  a.loop_counts.assign(v_count, 0);
  a.identity_counts.assign(v_count, 0);
  Csr& csr = a.adjacency;
  csr.offsets.assign(v_count + 1, 0);
  csr.targets.clear();
  std::vector<std::uint32_t> row;
  for (std::size_t v = 0; v < v_count; ++v) {
    row.clear();
    for (std::size_t j = 0; j < k; ++j) {
      const std::uint32_t s = slots[v * k + j];
      if (s == kSelfIdentity) ++a.identity_counts[v];
      else if (s == kSelfChanged) ++a.loop_counts[v];
      else row.push_back(s);
    }
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
    csr.targets.insert(csr.targets.end(), row.begin(), row.end());
    csr.offsets[v + 1] = csr.targets.size();
  }
  // every operation has an admissible inverse, so images must be mutual
  for (std::size_t v = 0; v < v_count; ++v)
    for (const std::uint32_t* u = csr.begin(v); u != csr.end(v); ++u)
      if (!std::binary_search(csr.begin(*u), csr.end(*u), static_cast<std::uint32_t>(v)))
        throw std::logic_error("atlas edge " + std::to_string(v) + "->" + std::to_string(*u) + " has no reverse");
  return a;
}

OrbitAtlas build_atlas(const Enumeration& e, unsigned jobs, const AtlasProgress* progress) {
  jobs = resolve_jobs(jobs);
  const std::size_t total = e.codes.size();
  const std::size_t k = op_count(e.n, e.d);
  std::vector<std::uint32_t> slots;
  slots.reserve(total * k);
  const std::size_t chunk = progress && progress->chunk ? progress->chunk : std::max<std::size_t>(total, 1);
  for (std::size_t begin = 0; begin < total; begin += chunk) {
    const std::size_t end = std::min(total, begin + chunk);
    auto part = atlas_slots(e.codes, begin, end, jobs);
    slots.insert(slots.end(), part.begin(), part.end());
    if (progress && progress->on_chunk) progress->on_chunk(end, total);
  }
  return atlas_from_slots(e.n, e.d, e.codes, slots);
}

OrbitAtlas build_atlas(unsigned n, unsigned d, unsigned jobs) {
  return build_atlas(enumerate_weighted_connected(n, d, jobs), jobs);
}

std::vector<OrbitRecord> connected_components(const OrbitAtlas& atlas) {
  const std::size_t v_count = atlas.vertex_count();
  const Csr& g = atlas.adjacency;
  constexpr std::uint32_t kUnseen = 0xFFFFFFFFu;
  std::vector<std::uint32_t> local(v_count, kUnseen);
  std::vector<OrbitRecord> out;
  std::vector<std::uint32_t> comp;
  for (std::size_t root = 0; root < v_count; ++root) {
    if (local[root] != kUnseen) continue;
    comp.assign(1, static_cast<std::uint32_t>(root));
    local[root] = 0;
    for (std::size_t head = 0; head < comp.size(); ++head)
      for (const std::uint32_t* u = g.begin(comp[head]); u != g.end(comp[head]); ++u)
        if (local[*u] == kUnseen) {
          local[*u] = 0;
          comp.push_back(*u);
        }
    std::sort(comp.begin(), comp.end());
    for (std::size_t i = 0; i < comp.size(); ++i) local[comp[i]] = static_cast<std::uint32_t>(i);

    OrbitRecord r;
    r.n = atlas.n;
    r.d = atlas.d;
    OrbitGraph& og = r.og;
    og.members.reserve(comp.size());
    og.loop_counts.reserve(comp.size());
    og.identity_counts.reserve(comp.size());
    og.adjacency.offsets.assign(comp.size() + 1, 0);
    for (std::size_t i = 0; i < comp.size(); ++i) {
      const std::uint32_t v = comp[i];
      og.members.push_back(atlas.codes[v]);
      og.loop_counts.push_back(atlas.loop_counts[v]);
      og.identity_counts.push_back(atlas.identity_counts[v]);
      for (const std::uint32_t* u = g.begin(v); u != g.end(v); ++u) og.adjacency.targets.push_back(local[*u]);
      og.adjacency.offsets[i + 1] = og.adjacency.targets.size();
    }
    // local ids preserve global order, so neighbour lists stay sorted
    out.push_back(std::move(r));
  }
  return out;
}

OrbitGraph orbit_graph_from_members(std::vector<GraphCode> members, unsigned jobs) {
  std::sort(members.begin(), members.end());
  if (members.empty()) return {};
  const auto slots = atlas_slots(members, 0, members.size(), resolve_jobs(jobs));
  OrbitAtlas a = atlas_from_slots(members.front().n, members.front().d, members, slots);
  OrbitGraph og;
  og.members = std::move(a.codes);
  og.adjacency = std::move(a.adjacency);
  og.loop_counts = std::move(a.loop_counts);
  og.identity_counts = std::move(a.identity_counts);
  return og;
}

namespace {
struct RepKey {
  std::size_t edges;
  unsigned weight;
  CodeBits bits;
  auto operator<=>(const RepKey&) const = default;
};

CodeBits order_bits(const WeightedGraph& g, const GraphCode& c, OrderEncoding enc) {
  return enc == OrderEncoding::Colex ? colex_canonical_bits(g) : c.bits;
}
}  // namespace

WeightedGraph select_representative(const OrbitGraph& og, OrderEncoding enc) {
  if (og.members.empty()) throw std::invalid_argument("representative of an empty orbit");
  // the colex key is costly, so only members tied on (edges, weight) get it
  std::size_t best_edges = ~std::size_t{0};
  unsigned best_weight = ~0u;
  std::vector<std::size_t> tied;
  for (std::size_t i = 0; i < og.size(); ++i) {
    const WeightedGraph g = decode(og.members[i]);
    const auto key = std::pair(g.edge_count(), g.total_weight());
    if (key > std::pair(best_edges, best_weight)) continue;
    if (key < std::pair(best_edges, best_weight)) {
      std::tie(best_edges, best_weight) = key;
      tied.clear();
    }
    tied.push_back(i);
  }
  std::size_t best = tied.front();
  CodeBits best_bits = order_bits(decode(og.members[best]), og.members[best], enc);
  for (std::size_t k = 1; k < tied.size(); ++k) {
    const CodeBits b = order_bits(decode(og.members[tied[k]]), og.members[tied[k]], enc);
    if (b < best_bits) {
      best_bits = b;
      best = tied[k];
    }
  }
  return decode(og.members[best]);
}

void assign_representative(OrbitRecord& r, OrderEncoding enc) {
  r.representative = select_representative(r.og, enc);
  r.representative_code = encode(r.representative);
  r.representative_edges = r.representative.edge_count();
  r.representative_order_bits = order_bits(r.representative, r.representative_code, enc);
}

void sort_orbits(std::vector<OrbitRecord>& orbits) {
  std::stable_sort(orbits.begin(), orbits.end(), [](const OrbitRecord& a, const OrbitRecord& b) {
    if (a.n != b.n) return a.n < b.n;
    const RepKey ka{a.representative_edges, a.representative.total_weight(), a.representative_order_bits};
    const RepKey kb{b.representative_edges, b.representative.total_weight(), b.representative_order_bits};
    return ka < kb;
  });
  for (std::size_t i = 0; i < orbits.size(); ++i) orbits[i].index = static_cast<unsigned>(i + 1);
}

std::vector<OrbitRecord> classify(unsigned n_min, unsigned n_max, unsigned d, unsigned jobs,
                                  OrderEncoding enc) {
  std::vector<OrbitRecord> all;
  for (unsigned n = n_min; n <= n_max; ++n) {
    auto comps = connected_components(build_atlas(n, d, jobs));
    for (auto& r : comps) {
      assign_representative(r, enc);
      all.push_back(std::move(r));
    }
  }
  sort_orbits(all);
  return all;
}

bool are_lc_equivalent(const WeightedGraph& a, const WeightedGraph& b) {
  if (a.n() != b.n() || a.d() != b.d()) throw GraphError("graphs differ in vertex count or dimension");
  const GraphCode ca = canonical_code(a), cb = canonical_code(b);
  if (ca == cb) return true;
  std::unordered_set<GraphCode> seen[2] = {{ca}, {cb}};
  std::vector<GraphCode> frontier[2] = {{ca}, {cb}};
  std::vector<OpImage> images;
  while (!frontier[0].empty() && !frontier[1].empty()) {
    const int side = frontier[0].size() <= frontier[1].size() ? 0 : 1;
    std::vector<GraphCode> next;
    for (const GraphCode& c : frontier[side]) {
      op_neighbors_into(decode(c), images);
      for (const OpImage& im : images) {
        if (seen[1 - side].contains(im.code)) return true;
        if (seen[side].insert(im.code).second) next.push_back(im.code);
      }
    }
    frontier[side] = std::move(next);
  }
  return false;
}

}  // namespace qlc
