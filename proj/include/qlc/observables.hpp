#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qlc/atlas.hpp"
#include "qlc/kernels.hpp"
#include "qlc/observables_types.hpp"

namespace qlc {

class ObservableError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Greedy "largest first" vertex colouring of the orbit graph. Vertices are
/// visited by descending degree; the degree used for ordering adds
/// `loop_degree` for a vertex with a self-loop (2, as a loop touches the
/// vertex twice), and equal-degree vertices are visited in ascending (or
/// descending) member-code order.
struct ColoringPolicy {
  enum class Tie : std::uint8_t { AscendingCode, DescendingCode };
  Tie tie = Tie::AscendingCode;
  unsigned loop_degree = 2;
  LoopPolicy loops = LoopPolicy::AnySelfImage;
};

struct ObservableConfig {
  LoopPolicy loops = LoopPolicy::AnySelfImage;
  ColoringPolicy coloring{};
  unsigned og_degree_loop_weight = 0;  // added to deg(OG) per self-loop
  std::size_t exact_threshold = 20000;  // exact distances below this |V|
  unsigned diameter_seeds = 1000;
  std::size_t aspl_pairs = 1000;
  unsigned aspl_rounds = 10;
  std::uint64_t seed = 20240601;
  kernels::Isa isa = kernels::active_isa();
};

unsigned og_chromatic_greedy(const OrbitGraph& og, const ColoringPolicy& policy = {});
/// The colour assigned to each vertex by og_chromatic_greedy.
std::vector<unsigned> og_greedy_coloring(const OrbitGraph& og, const ColoringPolicy& policy = {});

std::uint64_t og_self_loops(const OrbitGraph& og, LoopPolicy policy = LoopPolicy::AnySelfImage);

/// (non-loop edges + loops) / C(|V|, 2); needs |V| >= 2.
double og_density(const OrbitGraph& og, LoopPolicy policy = LoopPolicy::AnySelfImage);

struct DistanceSummary {
  double aspl = 0.0;       // mean over ordered distinct pairs
  unsigned diameter = 0;   // max eccentricity
};

/// All-sources BFS, batched 64*words sources at a time through the kernel.
DistanceSummary og_distances_exact(const Csr& g, kernels::Isa isa = kernels::active_isa());
double og_aspl_exact(const OrbitGraph& og);
unsigned og_diameter_exact(const OrbitGraph& og);

/// Mean distance over `rounds` independent sets of `pairs` uniform random
/// distinct vertex pairs, averaged across rounds.
double og_aspl_sampled(const Csr& g, std::size_t pairs, unsigned rounds, std::uint64_t seed,
                       kernels::Isa isa = kernels::active_isa());
/// Largest eccentricity over min(seeds, |V|) distinct random start vertices.
unsigned og_diameter_heuristic(const Csr& g, unsigned seeds, std::uint64_t seed,
                               kernels::Isa isa = kernels::active_isa());

/// Eccentricity-capped BFS distances from each source (reference path, no kernel).
std::vector<std::uint32_t> bfs_distances(const Csr& g, std::uint32_t source);

/// Maximum non-loop degree, plus `loop_weight` per self-loop when nonzero.
unsigned og_max_degree(const OrbitGraph& og, unsigned loop_weight = 0,
                       LoopPolicy policy = LoopPolicy::AnySelfImage);

unsigned orbit_min_chromatic(const OrbitGraph& og);
unsigned orbit_min_max_degree(const OrbitGraph& og);

ObservableRow compute_observables(const OrbitGraph& og, const ObservableConfig& cfg = {});

/// Values rounded to Table I precision: ln(N_L+1) and ASPL to 2 decimals,
/// density to 5.
double round_to(double x, int decimals);

}  // namespace qlc
