#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qlc/wgraph.hpp"

namespace qlc {

enum class OpKind : std::uint8_t { Scaling, Complementation };

/// One graphical local operation: gamma-local scaling or gamma-local
/// complementation about vertex `w`.
struct LocalOp {
  OpKind kind;
  unsigned vertex;
  unsigned gamma;

  friend bool operator==(const LocalOp&, const LocalOp&) = default;
};

std::string to_string(const LocalOp& op);

/// Multiplies every weight incident to w by gamma. gamma = 0 is rejected.
WeightedGraph local_scaling(const WeightedGraph& g, unsigned w, unsigned gamma);

/// Adds gamma * G_uw * G_vw to every pair u != v; weights at w are unchanged.
WeightedGraph local_complementation(const WeightedGraph& g, unsigned w, unsigned gamma);

WeightedGraph apply(const WeightedGraph& g, const LocalOp& op);

/// Identity-free factor sets: scaling gamma in {2..d-1}, complementation
/// gamma in {1..d-1}. For d = 3 that is three operations per vertex.
std::vector<LocalOp> admissible_ops(unsigned n, unsigned d);

/// Size of the admissible set, n(d-2) + n(d-1).
inline unsigned op_count(unsigned n, unsigned d) { return n * (d - 2) + n * (d - 1); }

struct OpImage {
  LocalOp op;
  GraphCode code;        // canonical code of the image
  bool changed_matrix;   // image adjacency differs from the input before relabeling
};

/// Every admissible operation applied to `g`, with canonical image codes.
std::vector<OpImage> op_neighbors(const WeightedGraph& g);

/// Allocation-free variant for the atlas hot loop; `out` is cleared first.
void op_neighbors_into(const WeightedGraph& g, std::vector<OpImage>& out);

}  // namespace qlc
