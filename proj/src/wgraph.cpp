#include "qlc/wgraph.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <regex>
#include <sstream>

namespace qlc {

std::string to_decimal(CodeBits v) {
  if (v == 0) return "0";
  std::string s;
  while (v != 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

CodeBits parse_decimal(std::string_view s) {
  if (s.empty()) throw GraphError("empty graph code");
  CodeBits v = 0;
  const CodeBits limit = ~CodeBits{0} / 10;
  for (char c : s) {
    if (c < '0' || c > '9') throw GraphError("graph code is not a decimal integer: " + std::string(s));
    if (v > limit) throw GraphError("graph code overflows 128 bits");
    v = v * 10 + static_cast<unsigned>(c - '0');
  }
  return v;
}

WeightedGraph::WeightedGraph(unsigned n, const Field& f)
    : n_(static_cast<std::uint8_t>(n)), d_(static_cast<std::uint8_t>(f.modulus())) {
  if (n < 1 || n > kMaxVertices)
    throw GraphError("vertex count must be in [1, " + std::to_string(kMaxVertices) + "]");
}

WeightedGraph WeightedGraph::from_upper(unsigned n, const Field& f, const std::vector<unsigned>& upper) {
  WeightedGraph g(n, f);
  if (upper.size() != n * (n - 1) / 2) throw GraphError("upper-triangle length mismatch");
  std::size_t k = 0;
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = i + 1; j < n; ++j) g.set_weight(i, j, upper[k++]);
  return g;
}

WeightedGraph WeightedGraph::from_edges(unsigned n, const Field& f, const std::vector<Edge>& edges) {
  WeightedGraph g(n, f);
  for (const Edge& e : edges) g.set_weight(e.u, e.v, e.w);
  return g;
}

void WeightedGraph::set_weight(unsigned u, unsigned v, unsigned w) {
  if (u >= n_ || v >= n_) throw GraphError("vertex index out of range");
  if (u == v) throw GraphError("graph states carry no self-loops");
  if (w >= d_) throw GraphError("weight " + std::to_string(w) + " not in F_" + std::to_string(d_));
  put(u, v, static_cast<std::uint8_t>(w));
}

std::vector<unsigned> WeightedGraph::upper() const {
  std::vector<unsigned> out;
  out.reserve(n_ * (n_ - 1) / 2);
  for (unsigned i = 0; i < n_; ++i)
    for (unsigned j = i + 1; j < n_; ++j) out.push_back(weight(i, j));
  return out;
}

std::vector<Edge> WeightedGraph::edges() const {
  std::vector<Edge> out;
  for (unsigned i = 0; i < n_; ++i)
    for (unsigned j = i + 1; j < n_; ++j)
      if (unsigned w = weight(i, j)) out.push_back({i, j, w});
  return out;
}

std::size_t WeightedGraph::edge_count() const noexcept {
  std::size_t c = 0;
  for (unsigned i = 0; i < n_; ++i)
    for (unsigned j = i + 1; j < n_; ++j) c += weight(i, j) != 0;
  return c;
}

unsigned WeightedGraph::total_weight() const noexcept {
  unsigned s = 0;
  for (unsigned i = 0; i < n_; ++i)
    for (unsigned j = i + 1; j < n_; ++j) s += weight(i, j);
  return s;
}

unsigned WeightedGraph::weighted_degree(unsigned v) const {
  if (v >= n_) throw GraphError("vertex index out of range");
  unsigned s = 0;
  for (unsigned u = 0; u < n_; ++u) s += weight(v, u);
  return s;
}

unsigned WeightedGraph::max_weighted_degree() const noexcept {
  unsigned best = 0;
  for (unsigned v = 0; v < n_; ++v) {
    unsigned s = 0;
    for (unsigned u = 0; u < n_; ++u) s += weight(v, u);
    best = std::max(best, s);
  }
  return best;
}

WeightedGraph WeightedGraph::permuted(const std::vector<unsigned>& perm) const {
  if (perm.size() != n_) throw GraphError("permutation length mismatch");
  WeightedGraph g = *this;
  for (unsigned i = 0; i < n_; ++i)
    for (unsigned j = 0; j < n_; ++j) g.adj_[i * kMaxVertices + j] = weight(perm[i], perm[j]);
  return g;
}

WeightedGraph WeightedGraph::induced(const std::vector<bool>& keep) const {
  std::vector<unsigned> idx;
  for (unsigned v = 0; v < n_; ++v)
    if (keep[v]) idx.push_back(v);
  if (idx.empty()) throw GraphError("induced subgraph would be empty");
  WeightedGraph g(static_cast<unsigned>(idx.size()), Field(d_));
  for (unsigned i = 0; i < idx.size(); ++i)
    for (unsigned j = 0; j < idx.size(); ++j) g.adj_[i * kMaxVertices + j] = weight(idx[i], idx[j]);
  return g;
}

unsigned code_width(unsigned n, unsigned d) {
  return Field(d).bits_per_element() * (n * (n - 1) / 2);
}

GraphCode encode(const WeightedGraph& g) {
  const unsigned n = g.n();
  const unsigned b = static_cast<unsigned>(std::bit_width(g.d() - 1u));
  if (b * (n * (n - 1) / 2) > 128) throw GraphError("code wider than 128 bits");
  CodeBits bits = 0;
  for (unsigned i = 0; i < n; ++i) {
    const std::uint8_t* r = g.row(i);
    for (unsigned j = i + 1; j < n; ++j) bits = (bits << b) | r[j];
  }
  return {bits, static_cast<std::uint8_t>(n), static_cast<std::uint8_t>(g.d())};
}

WeightedGraph decode(const GraphCode& code) {
  const Field f(code.d);
  const unsigned n = code.n;
  WeightedGraph g(n, f);
  const unsigned b = f.bits_per_element();
  const unsigned pairs = n * (n - 1) / 2;
  if (b * pairs > 128) throw GraphError("code wider than 128 bits");
  if (b * pairs < 128 && (code.bits >> (b * pairs)) != 0)
    throw GraphError("malformed code: bits beyond the upper triangle");
  const CodeBits mask = (CodeBits{1} << b) - 1;
  unsigned shift = b * pairs;
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = i + 1; j < n; ++j) {
      shift -= b;
      const auto w = static_cast<unsigned>((code.bits >> shift) & mask);
      if (w >= f.modulus())
        throw GraphError("malformed code: weight field " + std::to_string(w) + " >= d");
      g.put(i, j, static_cast<std::uint8_t>(w));
    }
  return g;
}

std::vector<std::uint32_t> support_masks(const WeightedGraph& g) {
  std::vector<std::uint32_t> m(g.n(), 0);
  for (unsigned i = 0; i < g.n(); ++i)
    for (unsigned j = 0; j < g.n(); ++j)
      if (g.weight(i, j)) m[i] |= 1u << j;
  return m;
}

bool is_connected(const WeightedGraph& g) {
  const auto adj = support_masks(g);
  std::uint32_t seen = 1, frontier = 1;
  while (frontier) {
    std::uint32_t next = 0;
    for (std::uint32_t f = frontier; f; f &= f - 1) next |= adj[std::countr_zero(f)];
    frontier = next & ~seen;
    seen |= next;
  }
  return seen == (g.n() == 32 ? ~0u : (1u << g.n()) - 1);
}

unsigned weighted_degree(const WeightedGraph& g, unsigned v) { return g.weighted_degree(v); }
unsigned total_weight(const WeightedGraph& g) { return g.total_weight(); }

namespace {

bool color_from(const std::vector<std::uint32_t>& adj, std::vector<unsigned>& color, unsigned v,
                unsigned k, unsigned used) {
  const unsigned n = static_cast<unsigned>(adj.size());
  if (v == n) return true;
  // symmetry break: a new color class may only open as the next unused color
  const unsigned limit = std::min(k, used + 1);
  for (unsigned c = 0; c < limit; ++c) {
    bool ok = true;
    for (std::uint32_t a = adj[v] & ((1u << v) - 1); a; a &= a - 1)
      if (color[std::countr_zero(a)] == c) { ok = false; break; }
    if (!ok) continue;
    color[v] = c;
    if (color_from(adj, color, v + 1, k, std::max(used, c + 1))) return true;
  }
  return false;
}

}  // namespace

bool is_k_colorable(const WeightedGraph& g, unsigned k, std::vector<unsigned>* colors) {
  if (k == 0) return false;
  const auto adj = support_masks(g);
  std::vector<unsigned> color(g.n(), 0);
  const bool ok = color_from(adj, color, 0, k, 0);
  if (ok && colors) *colors = color;
  return ok;
}

unsigned chromatic_number_exact(const WeightedGraph& g) {
  for (unsigned k = 1;; ++k)
    if (is_k_colorable(g, k)) return k;
}

std::string to_dot(const WeightedGraph& g, std::string_view name) {
  std::ostringstream os;
  os << "graph " << name << " {\n";
  os << "  // n=" << g.n() << " d=" << g.d() << "\n";
  for (unsigned v = 0; v < g.n(); ++v) os << "  " << v << ";\n";
  for (const Edge& e : g.edges()) os << "  " << e.u << " -- " << e.v << " [label=\"" << e.w << "\"];\n";
  os << "}\n";
  return os.str();
}

WeightedGraph parse_dot(std::string_view text, const Field& f) {
  static const std::regex node_re(R"(^\s*(\d+)\s*;\s*$)");
  static const std::regex edge_re(R"(^\s*(\d+)\s*--\s*(\d+)\s*\[label=\"(\d+)\"\]\s*;\s*$)");
  unsigned n = 0;
  std::vector<Edge> edges;
  std::istringstream is{std::string(text)};
  std::string line;
  std::smatch m;
  while (std::getline(is, line)) {
    if (std::regex_match(line, m, node_re)) {
      n = std::max(n, static_cast<unsigned>(std::stoul(m[1])) + 1);
    } else if (std::regex_match(line, m, edge_re)) {
      Edge e{static_cast<unsigned>(std::stoul(m[1])), static_cast<unsigned>(std::stoul(m[2])),
             static_cast<unsigned>(std::stoul(m[3]))};
      n = std::max({n, e.u + 1, e.v + 1});
      edges.push_back(e);
    }
  }
  if (n == 0) throw GraphError("DOT text declares no vertices");
  return WeightedGraph::from_edges(n, f, edges);
}

WeightedGraph parse_edge_list(std::string_view text, const Field& f, unsigned n) {
  std::vector<Edge> edges;
  unsigned max_v = 0;
  bool any = false;
  std::istringstream is{std::string(text)};
  std::string line;
  unsigned lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    long long u, v, w;
    if (!(ls >> u)) continue;
    if (!(ls >> v >> w) || u < 0 || v < 0 || w < 0)
      throw GraphError("edge list line " + std::to_string(lineno) + ": expected \"u v w\"");
    std::string extra;
    if (ls >> extra) throw GraphError("edge list line " + std::to_string(lineno) + ": trailing text");
    edges.push_back({static_cast<unsigned>(u), static_cast<unsigned>(v), static_cast<unsigned>(w)});
    max_v = std::max({max_v, static_cast<unsigned>(u), static_cast<unsigned>(v)});
    any = true;
  }
  if (n == 0) n = any ? max_v + 1 : 0;
  if (n == 0) throw GraphError("edge list is empty and no vertex count given");
  if (any && max_v >= n) throw GraphError("edge list references a vertex beyond n");
  return WeightedGraph::from_edges(n, f, edges);
}

}  // namespace qlc
