#include "qlc/local_ops.hpp"

#include "qlc/canonical.hpp"

namespace qlc {

std::string to_string(const LocalOp& op) {
  return std::string(op.kind == OpKind::Scaling ? "scale" : "lc") + "(w=" + std::to_string(op.vertex) +
         ",gamma=" + std::to_string(op.gamma) + ")";
}

namespace {
void check_vertex(const WeightedGraph& g, unsigned w) {
  if (w >= g.n()) throw GraphError("operation vertex out of range");
}
}  // namespace

WeightedGraph local_scaling(const WeightedGraph& g, unsigned w, unsigned gamma) {
  check_vertex(g, w);
  const unsigned d = g.d();
  gamma %= d;
  if (gamma == 0) throw FieldError("local scaling factor must be nonzero");
  WeightedGraph out = g;
  for (unsigned u = 0; u < g.n(); ++u)
    if (u != w) out.put(u, w, static_cast<std::uint8_t>(g.weight(u, w) * gamma % d));
  return out;
}

WeightedGraph local_complementation(const WeightedGraph& g, unsigned w, unsigned gamma) {
  check_vertex(g, w);
  const unsigned d = g.d();
  gamma %= d;
  WeightedGraph out = g;
  if (gamma == 0) return out;
  const std::uint8_t* rw = g.row(w);
  for (unsigned u = 0; u < g.n(); ++u) {
    if (rw[u] == 0) continue;
    for (unsigned v = u + 1; v < g.n(); ++v) {
      if (rw[v] == 0) continue;
      const unsigned add = gamma * rw[u] * rw[v] % d;
      out.put(u, v, static_cast<std::uint8_t>((g.weight(u, v) + add) % d));
    }
  }
  return out;
}

WeightedGraph apply(const WeightedGraph& g, const LocalOp& op) {
  return op.kind == OpKind::Scaling ? local_scaling(g, op.vertex, op.gamma)
                                    : local_complementation(g, op.vertex, op.gamma);
}

std::vector<LocalOp> admissible_ops(unsigned n, unsigned d) {
  std::vector<LocalOp> ops;
  ops.reserve(op_count(n, d));
  for (unsigned w = 0; w < n; ++w) {
    for (unsigned gamma = 2; gamma < d; ++gamma) ops.push_back({OpKind::Scaling, w, gamma});
    for (unsigned gamma = 1; gamma < d; ++gamma) ops.push_back({OpKind::Complementation, w, gamma});
  }
  return ops;
}

void op_neighbors_into(const WeightedGraph& g, std::vector<OpImage>& out) {
  out.clear();
  for (const LocalOp& op : admissible_ops(g.n(), g.d())) {
    WeightedGraph img = apply(g, op);
    const bool changed = !(img == g);
    out.push_back({op, canonical_code(img), changed});
  }
}

std::vector<OpImage> op_neighbors(const WeightedGraph& g) {
  std::vector<OpImage> out;
  op_neighbors_into(g, out);
  return out;
}

}  // namespace qlc
