#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>

#include "qlc/atlas.hpp"
#include "qlc/observables_types.hpp"
#include "qlc/wgraph.hpp"

namespace qlc {

class SchmidtError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Max over bipartitions (A, B) of rank over F_d of the off-diagonal block
/// Γ_AB. Equals log_d of the largest bipartite Schmidt rank.
unsigned bipartition_lower_bound(const WeightedGraph& g);

/// Bounds from colourability. Two-colourable: lower ceil(rank Γ / 2) (at least
/// the bipartition bound), upper floor(n/2), exact floor(n/2) if Γ has full
/// rank. Three-colourable: upper also n1 + n2, the two smallest class sizes,
/// minimised over every proper 3-colouring. Otherwise (0, n - 1).
/// Isolated vertices are dropped first; they carry no entanglement.
std::pair<unsigned, unsigned> colorability_bounds(const WeightedGraph& g);

/// Removing a vertex lowers E_S by at most one, so
/// E_S(g) <= min_v upper(g - v) + 1, where upper(g - v) is the colourability
/// bound or, while budget remains, this bound again.
unsigned vertex_removal_upper_bound(const WeightedGraph& g, unsigned budget = 2);

struct SchmidtConfig {
  unsigned removal_budget = 2;
  unsigned jobs = 1;
};

/// All rules on one graph.
SchmidtBounds graph_schmidt_bounds(const WeightedGraph& g, const SchmidtConfig& cfg = {});

/// E_S is constant on an orbit: lower is the max of every member's lower
/// bounds, upper the min of every member's upper bounds. All lower bounds are
/// computed before any upper bound. Throws SchmidtError if lower > upper.
SchmidtBounds orbit_schmidt_bounds(const OrbitGraph& og, const SchmidtConfig& cfg = {});

}  // namespace qlc
