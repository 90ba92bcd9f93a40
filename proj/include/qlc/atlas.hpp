#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qlc/enumerator.hpp"
#include "qlc/observables_types.hpp"
#include "qlc/wgraph.hpp"

namespace qlc {

/// Compressed adjacency over vertices 0..V-1. Neighbour lists are sorted and
/// hold no self entries; loops live in separate per-vertex counters.
struct Csr {
  std::vector<std::uint64_t> offsets{0};
  std::vector<std::uint32_t> targets;

  std::size_t vertex_count() const noexcept { return offsets.size() - 1; }
  std::size_t degree(std::size_t v) const noexcept { return offsets[v + 1] - offsets[v]; }
  std::size_t edge_count() const noexcept { return targets.size() / 2; }
  const std::uint32_t* begin(std::size_t v) const noexcept { return targets.data() + offsets[v]; }
  const std::uint32_t* end(std::size_t v) const noexcept { return targets.data() + offsets[v + 1]; }
};

/// Builds a symmetric CSR from directed pairs (duplicates and self pairs dropped).
Csr csr_from_pairs(std::size_t vertices, std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs);

/// Orbit atlas: vertices are canonical codes, edges single local operations.
struct OrbitAtlas {
  unsigned n = 1;
  unsigned d = 2;
  std::vector<GraphCode> codes;  // sorted; vertex id = position
  Csr adjacency;
  /// Admissible operations that change the matrix yet return the same class.
  std::vector<std::uint16_t> loop_counts;
  /// Admissible operations that leave the matrix literally unchanged.
  std::vector<std::uint16_t> identity_counts;

  std::size_t vertex_count() const noexcept { return codes.size(); }
  std::optional<std::uint32_t> find(const GraphCode& c) const;
};

/// Self-loop reading of the atlas. ChangedImage: a vertex has a loop iff some
/// operation alters the matrix but lands on the same class. AnySelfImage also
/// counts operations that are the identity on the matrix.
enum class LoopPolicy : std::uint8_t { ChangedImage, AnySelfImage };

struct AtlasProgress {
  /// Called after each completed chunk of vertices with (done, total).
  std::function<void(std::size_t, std::size_t)> on_chunk;
  std::size_t chunk = 4096;
};

/// Atlas over a precomputed vertex set. Per-vertex neighbourhoods are
/// computed on `jobs` threads; the result is independent of the job count.
OrbitAtlas build_atlas(const Enumeration& e, unsigned jobs = 1, const AtlasProgress* progress = nullptr);
OrbitAtlas build_atlas(unsigned n, unsigned d, unsigned jobs = 1);

/// Per-vertex neighbour slots for vertices [begin, end): op_count(n,d) entries
/// each, holding the image id, or kSelfChanged / kSelfIdentity markers.
inline constexpr std::uint32_t kSelfChanged = 0xFFFFFFFEu;
inline constexpr std::uint32_t kSelfIdentity = 0xFFFFFFFFu;
std::vector<std::uint32_t> atlas_slots(const std::vector<GraphCode>& codes, std::size_t begin,
                                       std::size_t end, unsigned jobs);
OrbitAtlas atlas_from_slots(unsigned n, unsigned d, std::vector<GraphCode> codes,
                            const std::vector<std::uint32_t>& slots);

/// One orbit's graph, reindexed locally (member i = members[i]).
struct OrbitGraph {
  std::vector<GraphCode> members;  // sorted
  Csr adjacency;
  std::vector<std::uint16_t> loop_counts;
  std::vector<std::uint16_t> identity_counts;

  std::size_t size() const noexcept { return members.size(); }
  bool has_loop(std::size_t v, LoopPolicy p) const noexcept {
    return loop_counts[v] != 0 || (p == LoopPolicy::AnySelfImage && identity_counts[v] != 0);
  }
};

/// Orbit graph rebuilt from a member list alone by applying every operation.
OrbitGraph orbit_graph_from_members(std::vector<GraphCode> members, unsigned jobs = 1);

/// Third component of the orbit ordering key. Colex compares members by
/// colex_canonical_bits (upper triangle with the first pair least
/// significant); Code compares the canonical GraphCode itself.
enum class OrderEncoding : std::uint8_t { Colex, Code };

struct OrbitRecord {
  unsigned index = 0;  // 1-based after sort_orbits
  unsigned n = 1;
  unsigned d = 2;
  OrbitGraph og;
  WeightedGraph representative;
  GraphCode representative_code;
  CodeBits representative_order_bits = 0;
  std::size_t representative_edges = 0;
  std::optional<ObservableRow> observables;
  std::optional<SchmidtBounds> schmidt;
};

/// BFS partition of the atlas; components listed by smallest member code.
std::vector<OrbitRecord> connected_components(const OrbitAtlas& atlas);

/// Member minimising (edge count, total weight, encoding).
WeightedGraph select_representative(const OrbitGraph& og, OrderEncoding enc = OrderEncoding::Colex);
void assign_representative(OrbitRecord& r, OrderEncoding enc = OrderEncoding::Colex);

/// Orders by (n, representative edges, total weight, encoding) and numbers 1..k.
/// Representatives must have been assigned with the same encoding.
void sort_orbits(std::vector<OrbitRecord>& orbits);

/// Atlas, components, representatives and ordering for every n in [n_min, n_max].
std::vector<OrbitRecord> classify(unsigned n_min, unsigned n_max, unsigned d, unsigned jobs = 1,
                                  OrderEncoding enc = OrderEncoding::Colex);

/// LC-equivalence by bidirectional BFS over canonical images.
bool are_lc_equivalent(const WeightedGraph& a, const WeightedGraph& b);

}  // namespace qlc
