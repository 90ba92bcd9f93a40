#pragma once
// Independent brute-force references used by the unit and acceptance suites.
// Nothing here calls into the library paths it is used to check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace oracle {

// rank over F_d as log_d |row span|, enumerating all d^rows combinations
inline std::size_t rank_by_span(const std::vector<std::vector<unsigned>>& rows, unsigned d) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  std::set<std::vector<unsigned>> span;
  std::vector<unsigned> coef(rows.size(), 0);
  for (;;) {
    std::vector<unsigned> v(cols, 0);
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t c = 0; c < cols; ++c) v[c] = (v[c] + coef[r] * rows[r][c]) % d;
    span.insert(v);
    std::size_t i = 0;
    while (i < coef.size() && ++coef[i] == d) coef[i++] = 0;
    if (i == coef.size()) break;
  }
  std::size_t rank = 0;
  for (std::size_t s = span.size(); s > 1; s /= d) ++rank;
  return rank;
}

// pairwise classification, pairs tied in both series dropped entirely
inline double kendall_pairs(const std::vector<double>& x, const std::vector<double>& y) {
  long long p = 0, q = 0, tx = 0, ty = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      const double dx = x[i] - x[j], dy = y[i] - y[j];
      if (dx == 0 && dy == 0) continue;
      if (dx == 0) ++tx;
      else if (dy == 0) ++ty;
      else if ((dx > 0) == (dy > 0)) ++p;
      else ++q;
    }
  return static_cast<double>(p - q) / std::sqrt(static_cast<double>(p + q + tx) * static_cast<double>(p + q + ty));
}

constexpr unsigned kInf = 0xFFFFFFFFu;

inline std::vector<std::vector<unsigned>> floyd_warshall(std::size_t n,
                                                         const std::vector<std::pair<unsigned, unsigned>>& edges) {
  std::vector<std::vector<unsigned>> dist(n, std::vector<unsigned>(n, kInf));
  for (std::size_t i = 0; i < n; ++i) dist[i][i] = 0;
  for (auto [u, v] : edges)
    if (u != v) dist[u][v] = dist[v][u] = 1;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (dist[i][k] != kInf && dist[k][j] != kInf && dist[i][k] + dist[k][j] < dist[i][j])
          dist[i][j] = dist[i][k] + dist[k][j];
  return dist;
}

// Labeled graphs as weight vectors over the upper triangle, pair (i,j) i<j in
// row-major order.
struct Labeled {
  unsigned n;
  unsigned d;
  std::vector<std::pair<unsigned, unsigned>> pairs;
  std::vector<std::vector<unsigned>> pair_index;  // [i][j] -> position

  Labeled(unsigned n_, unsigned d_) : n(n_), d(d_), pair_index(n_, std::vector<unsigned>(n_, 0)) {
    for (unsigned i = 0; i < n; ++i)
      for (unsigned j = i + 1; j < n; ++j) {
        pair_index[i][j] = pair_index[j][i] = static_cast<unsigned>(pairs.size());
        pairs.emplace_back(i, j);
      }
  }
  std::uint64_t count() const {
    std::uint64_t c = 1;
    for (std::size_t i = 0; i < pairs.size(); ++i) c *= d;
    return c;
  }
  std::vector<unsigned> unpack(std::uint64_t id) const {
    std::vector<unsigned> w(pairs.size());
    for (std::size_t i = pairs.size(); i-- > 0;) {
      w[i] = static_cast<unsigned>(id % d);
      id /= d;
    }
    return w;
  }
  std::uint64_t pack(const std::vector<unsigned>& w) const {
    std::uint64_t id = 0;
    for (unsigned x : w) id = id * d + x;
    return id;
  }
  unsigned at(const std::vector<unsigned>& w, unsigned i, unsigned j) const {
    return i == j ? 0 : w[pair_index[i][j]];
  }
  bool connected(const std::vector<unsigned>& w) const {
    std::vector<bool> seen(n, false);
    std::vector<unsigned> stack{0};
    seen[0] = true;
    std::size_t reached = 1;
    while (!stack.empty()) {
      const unsigned v = stack.back();
      stack.pop_back();
      for (unsigned u = 0; u < n; ++u)
        if (!seen[u] && at(w, u, v) != 0) {
          seen[u] = true;
          ++reached;
          stack.push_back(u);
        }
    }
    return reached == n;
  }
  // minimum packed id over all vertex relabelings
  std::uint64_t canonical(const std::vector<unsigned>& w) const {
    std::vector<unsigned> perm(n);
    std::iota(perm.begin(), perm.end(), 0u);
    std::uint64_t best = ~std::uint64_t{0};
    std::vector<unsigned> img(pairs.size());
    do {
      for (std::size_t k = 0; k < pairs.size(); ++k) img[k] = at(w, perm[pairs[k].first], perm[pairs[k].second]);
      best = std::min(best, pack(img));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
  }
  std::vector<unsigned> scale(std::vector<unsigned> w, unsigned v, unsigned g) const {
    for (unsigned u = 0; u < n; ++u)
      if (u != v) w[pair_index[u][v]] = (w[pair_index[u][v]] * g) % d;
    return w;
  }
  std::vector<unsigned> complement(const std::vector<unsigned>& w, unsigned v, unsigned g) const {
    std::vector<unsigned> out = w;
    for (unsigned a = 0; a < n; ++a)
      for (unsigned b = a + 1; b < n; ++b) {
        if (a == v || b == v) continue;
        const unsigned add = (g * at(w, a, v) % d) * at(w, b, v) % d;
        out[pair_index[a][b]] = (out[pair_index[a][b]] + add) % d;
      }
    return out;
  }
};

// Number of connected weighted graphs up to isomorphism, by brute force.
inline std::size_t count_connected_classes(unsigned n, unsigned d) {
  const Labeled L(n, d);
  std::set<std::uint64_t> classes;
  for (std::uint64_t id = 0; id < L.count(); ++id) {
    const auto w = L.unpack(id);
    if (L.connected(w)) classes.insert(L.canonical(w));
  }
  return classes.size();
}

// Local-Clifford classes of connected graphs: BFS over labeled graphs under
// every scaling and complementation, then merged through isomorphism.
// Returns class sizes counted in isomorphism classes, sorted.
inline std::vector<std::size_t> lc_class_sizes(unsigned n, unsigned d) {
  const Labeled L(n, d);
  const std::uint64_t total = L.count();
  std::unordered_map<std::uint64_t, std::uint64_t> canon;  // labeled id -> canonical id
  std::vector<std::uint64_t> parent_of;
  std::map<std::uint64_t, std::size_t> slot;  // canonical id -> union-find slot
  std::vector<std::size_t> uf;
  auto find = [&](std::size_t a) {
    while (uf[a] != a) a = uf[a] = uf[uf[a]];
    return a;
  };
  auto class_slot = [&](std::uint64_t c) {
    auto [it, fresh] = slot.emplace(c, uf.size());
    if (fresh) uf.push_back(uf.size());
    return it->second;
  };
  std::vector<std::uint64_t> ids;
  for (std::uint64_t id = 0; id < total; ++id) {
    const auto w = L.unpack(id);
    if (!L.connected(w)) continue;
    canon[id] = L.canonical(w);
    ids.push_back(id);
  }
  for (std::uint64_t id : ids) {
    const auto w = L.unpack(id);
    const std::size_t a = class_slot(canon[id]);
    for (unsigned v = 0; v < n; ++v)
      for (unsigned g = 1; g < d; ++g) {
        for (const auto& img : {L.scale(w, v, g), L.complement(w, v, g)}) {
          const std::size_t b = class_slot(canon.at(L.pack(img)));
          uf[find(a)] = find(b);
        }
      }
  }
  std::map<std::size_t, std::size_t> sizes;
  for (const auto& [c, s] : slot) ++sizes[find(s)];
  std::vector<std::size_t> out;
  for (const auto& [root, s] : sizes) out.push_back(s);
  std::sort(out.begin(), out.end());
  return out;
}

// Table I rows as shipped in tests/data/table1.csv.
struct TableRow {
  unsigned orbit, n, V, e, chi_og;
  double ln_loops;
  unsigned chi_i;
  double density, aspl;
  unsigned diameter, deg_g_min, deg_og_max;
  unsigned es_lower, es_upper;
  std::string es_text;
  std::string line;  // raw CSV line
};

inline std::vector<TableRow> read_table1(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  std::string line;
  std::getline(f, line);
  std::vector<TableRow> rows;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::string cur;
    bool quoted = false;
    for (char c : line) {
      if (c == '"') quoted = !quoted;
      else if (c == ',' && !quoted) {
        cells.push_back(cur);
        cur.clear();
      } else cur.push_back(c);
    }
    cells.push_back(cur);
    if (cells.size() != 13) throw std::runtime_error("bad table row: " + line);
    TableRow r;
    r.orbit = std::stoul(cells[0]);
    r.n = std::stoul(cells[1]);
    r.V = std::stoul(cells[2]);
    r.e = std::stoul(cells[3]);
    r.chi_og = std::stoul(cells[4]);
    r.ln_loops = std::stod(cells[5]);
    r.chi_i = std::stoul(cells[6]);
    r.density = std::stod(cells[7]);
    r.aspl = std::stod(cells[8]);
    r.diameter = std::stoul(cells[9]);
    r.deg_g_min = std::stoul(cells[10]);
    r.deg_og_max = std::stoul(cells[11]);
    r.es_text = cells[12];
    if (cells[12].front() == '(') {
      std::sscanf(cells[12].c_str(), "(%u, %u)", &r.es_lower, &r.es_upper);
    } else {
      r.es_lower = r.es_upper = std::stoul(cells[12]);
    }
    r.line = line;
    rows.push_back(r);
  }
  return rows;
}

}  // namespace oracle
