#include "qlc/state.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <set>

#include "qlc/canonical.hpp"
#include "qlc/gf.hpp"

namespace qlc {

namespace {

Amplitude omega_pow(unsigned d, long e) {
  const long r = ((e % static_cast<long>(d)) + static_cast<long>(d)) % static_cast<long>(d);
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(r) / d);
}

std::size_t checked_dim(unsigned d, unsigned n) {
  std::size_t dim = 1;
  for (unsigned i = 0; i < n; ++i) {
    dim *= d;
    if (dim > kMaxAmplitudes) throw StateError("state exceeds the d^n <= 1e6 size cap");
  }
  return dim;
}

LocalMatrix matmul(const LocalMatrix& a, const LocalMatrix& b, unsigned d) {
  LocalMatrix c(d * d);
  for (unsigned r = 0; r < d; ++r)
    for (unsigned k = 0; k < d; ++k)
      for (unsigned col = 0; col < d; ++col) c[r * d + col] += a[r * d + k] * b[k * d + col];
  return c;
}

LocalMatrix identity(unsigned d) {
  LocalMatrix m(d * d);
  for (unsigned i = 0; i < d; ++i) m[i * d + i] = 1.0;
  return m;
}

LocalMatrix base_matrix(Gate gate, unsigned d, long param) {
  LocalMatrix m(d * d);
  const double s = 1.0 / std::sqrt(static_cast<double>(d));
  switch (gate) {
    case Gate::H:
      for (unsigned j = 0; j < d; ++j)
        for (unsigned k = 0; k < d; ++k) m[k * d + j] = s * omega_pow(d, static_cast<long>(j) * k);
      break;
    case Gate::Hdg:
      for (unsigned j = 0; j < d; ++j)
        for (unsigned k = 0; k < d; ++k) m[k * d + j] = s * omega_pow(d, -static_cast<long>(j) * k);
      break;
    case Gate::M: {
      const Field f(d);
      const unsigned g = f.reduce(static_cast<unsigned>(((param % static_cast<long>(d)) + d) % d));
      if (g == 0) throw StateError("M(gamma) needs gamma != 0");
      for (unsigned k = 0; k < d; ++k) m[f.mul(g, k) * d + k] = 1.0;
      break;
    }
    case Gate::P:
      // x(x-1)/2 in integers, then reduced
      for (unsigned x = 0; x < d; ++x) m[x * d + x] = omega_pow(d, static_cast<long>(x) * (x - 1L) / 2);
      break;
    case Gate::Q:
      if (d == 2) {
        m[0] = 1.0;
        m[3] = Amplitude(0.0, 1.0);
      } else {
        const Field f(d);
        const unsigned half = f.inv(2);
        for (unsigned x = 0; x < d; ++x) m[x * d + x] = omega_pow(d, static_cast<long>(f.mul(half, f.mul(x, x))));
      }
      break;
    case Gate::PTilde:
      return matmul(matmul(base_matrix(Gate::Hdg, d, 1), base_matrix(Gate::P, d, 1), d),
                    base_matrix(Gate::H, d, 1), d);
    case Gate::QTilde:
      return matmul(matmul(base_matrix(Gate::Hdg, d, 1), base_matrix(Gate::Q, d, 1), d),
                    base_matrix(Gate::H, d, 1), d);
    case Gate::X:
      for (unsigned k = 0; k < d; ++k) m[((k + 1) % d) * d + k] = 1.0;
      break;
    case Gate::Z:
      for (unsigned k = 0; k < d; ++k) m[k * d + k] = omega_pow(d, k);
      break;
  }
  return m;
}

}  // namespace

double StateVector::norm() const {
  double s = 0.0;
  for (const Amplitude& a : amp) s += std::norm(a);
  return std::sqrt(s);
}

unsigned gate_order(Gate gate, unsigned d) {
  switch (gate) {
    case Gate::Q:
    case Gate::QTilde:
      return d == 2 ? 4 : d;
    case Gate::P:
    case Gate::PTilde:
    case Gate::X:
    case Gate::Z:
      return d;
    default:
      return 1;
  }
}

LocalMatrix gate_matrix(Gate gate, unsigned d, long param) {
  if (!is_prime(d)) throw StateError("dimension must be prime");
  if (gate == Gate::H || gate == Gate::Hdg || gate == Gate::M) return base_matrix(gate, d, param);
  const long order = static_cast<long>(gate_order(gate, d));
  const long power = ((param % order) + order) % order;
  const LocalMatrix base = base_matrix(gate, d, 1);
  LocalMatrix out = identity(d);
  for (long i = 0; i < power; ++i) out = matmul(out, base, d);
  return out;
}

StateVector build_graph_state(const WeightedGraph& g) {
  const unsigned d = g.d(), n = g.n();
  const std::size_t dim = checked_dim(d, n);
  StateVector s{d, n, std::vector<Amplitude>(dim)};
  const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
  const auto edges = g.edges();
  std::vector<unsigned> k(n, 0);
  for (std::size_t idx = 0; idx < dim; ++idx) {
    long e = 0;
    for (const Edge& ed : edges) e += static_cast<long>(ed.w) * k[ed.u] * k[ed.v];
    s.amp[idx] = scale * omega_pow(d, e);
    for (int i = static_cast<int>(n) - 1; i >= 0; --i) {
      if (++k[i] < d) break;
      k[i] = 0;
    }
  }
  return s;
}

void apply_local(StateVector& s, unsigned site, const LocalMatrix& m) {
  if (site >= s.n) throw StateError("site index out of range");
  const unsigned d = s.d;
  if (m.size() != std::size_t{d} * d) throw StateError("gate matrix has the wrong size");
  std::size_t stride = 1;
  for (unsigned i = site + 1; i < s.n; ++i) stride *= d;
  const std::size_t block = stride * d;
  std::vector<Amplitude> in(d);
  for (std::size_t base = 0; base < s.amp.size(); base += block)
    for (std::size_t off = 0; off < stride; ++off) {
      for (unsigned k = 0; k < d; ++k) in[k] = s.amp[base + off + k * stride];
      for (unsigned r = 0; r < d; ++r) {
        Amplitude acc = 0.0;
        for (unsigned c = 0; c < d; ++c) acc += m[r * d + c] * in[c];
        s.amp[base + off + r * stride] = acc;
      }
    }
}

void apply_gate(StateVector& s, unsigned site, Gate gate, long param) {
  apply_local(s, site, gate_matrix(gate, s.d, param));
}

void apply_cz(StateVector& s, unsigned u, unsigned v, unsigned r) {
  if (u >= s.n || v >= s.n || u == v) throw StateError("invalid CZ sites");
  const unsigned d = s.d;
  std::size_t su = 1, sv = 1;
  for (unsigned i = u + 1; i < s.n; ++i) su *= d;
  for (unsigned i = v + 1; i < s.n; ++i) sv *= d;
  for (std::size_t idx = 0; idx < s.amp.size(); ++idx) {
    const long ku = static_cast<long>(idx / su % d), kv = static_cast<long>(idx / sv % d);
    s.amp[idx] *= omega_pow(d, static_cast<long>(r) * ku * kv);
  }
}

Amplitude overlap(const StateVector& a, const StateVector& b) {
  if (a.d != b.d || a.n != b.n) throw StateError("states differ in shape");
  Amplitude acc = 0.0;
  for (std::size_t i = 0; i < a.amp.size(); ++i) acc += std::conj(a.amp[i]) * b.amp[i];
  return acc;
}

double fidelity(const StateVector& a, const StateVector& b) { return std::abs(overlap(a, b)); }

Amplitude scaling_overlap(const WeightedGraph& g, unsigned w, unsigned gamma) {
  const Field f(g.d());
  if (f.reduce(gamma) == 0) throw StateError("scaling needs gamma != 0");
  StateVector rhs = build_graph_state(g);
  apply_gate(rhs, w, Gate::M, f.inv(f.reduce(gamma)));
  return overlap(build_graph_state(local_scaling(g, w, gamma)), rhs);
}

Amplitude complementation_overlap(const WeightedGraph& g, unsigned w, unsigned gamma, PhaseForm form) {
  const Gate phase = form == PhaseForm::Symmetric ? Gate::Q : Gate::P;
  const Gate tilde = form == PhaseForm::Symmetric ? Gate::QTilde : Gate::PTilde;
  StateVector rhs = build_graph_state(g);
  for (unsigned v = 0; v < g.n(); ++v) {
    const long gw = g.weight(v, w);
    if (gw != 0) apply_gate(rhs, v, phase, -static_cast<long>(gamma) * gw * gw);
  }
  apply_gate(rhs, w, tilde, static_cast<long>(gamma));
  return overlap(build_graph_state(local_complementation(g, w, gamma % g.d())), rhs);
}

double verify_scaling(const WeightedGraph& g, unsigned w, unsigned gamma) {
  return std::abs(scaling_overlap(g, w, gamma));
}

double verify_complementation(const WeightedGraph& g, unsigned w, unsigned gamma, PhaseForm form) {
  return std::abs(complementation_overlap(g, w, gamma, form));
}

unsigned schmidt_rank_across(const StateVector& s, std::uint32_t side_a) {
  const std::uint32_t all = s.n >= 32 ? ~0u : (1u << s.n) - 1;
  side_a &= all;
  if (side_a == 0 || side_a == all) throw StateError("bipartition has an empty side");
  const unsigned na = static_cast<unsigned>(std::popcount(side_a));
  std::size_t rows = 1, cols = 1;
  for (unsigned i = 0; i < na; ++i) rows *= s.d;
  for (unsigned i = na; i < s.n; ++i) cols *= s.d;
  Eigen::MatrixXcd m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  std::vector<unsigned> k(s.n, 0);
  for (std::size_t idx = 0; idx < s.amp.size(); ++idx) {
    std::size_t r = 0, c = 0;
    for (unsigned i = 0; i < s.n; ++i) {
      if (side_a >> i & 1u)
        r = r * s.d + k[i];
      else
        c = c * s.d + k[i];
    }
    m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = s.amp[idx];
    for (int i = static_cast<int>(s.n) - 1; i >= 0; --i) {
      if (++k[i] < s.d) break;
      k[i] = 0;
    }
  }
  const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  unsigned rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > 1e-9 * sv(0)) ++rank;
  return rank;
}

unsigned schmidt_rank_across(const WeightedGraph& g, std::uint32_t side_a) {
  return schmidt_rank_across(build_graph_state(g), side_a);
}

namespace {

std::vector<WeightedGraph> labeled_graphs(unsigned n, unsigned d) {
  const Field f(d);
  const unsigned pairs = n * (n - 1) / 2;
  std::vector<unsigned> upper(pairs, 0);
  std::vector<WeightedGraph> out;
  for (;;) {
    out.push_back(WeightedGraph::from_upper(n, f, upper));
    unsigned i = 0;
    while (i < pairs && ++upper[i] == d) upper[i++] = 0;
    if (i == pairs) break;
  }
  return out;
}

}  // namespace

VerifyReport verify_sweep(unsigned n_max, unsigned d, double tol) {
  VerifyReport rep;
  rep.d = d;
  rep.n_max = n_max;
  checked_dim(d, n_max);
  auto record = [&](const WeightedGraph& g, LocalOp op, Amplitude ov) {
    ++rep.cases;
    const double fid = std::abs(ov);
    rep.max_deviation = std::max(rep.max_deviation, 1.0 - fid);
    const double phase = std::arg(ov);
    if (fid >= 1.0 - tol && std::abs(phase) < 1e-9) ++rep.phase_free;
    if (fid < 1.0 - tol) {
      ++rep.failures;
      if (rep.failed.size() < 32) rep.failed.push_back({g, op, fid, phase});
    }
  };
  rep.canonical_cases.assign(n_max + 1, 0);
  for (unsigned n = 1; n <= n_max; ++n)
    for (const WeightedGraph& g : labeled_graphs(n, d)) {
      const bool canonical = is_connected(g) && canonical_form(g).graph == g;
      for (unsigned w = 0; w < n; ++w)
        for (unsigned gamma = 1; gamma < d; ++gamma) {
          record(g, {OpKind::Scaling, w, gamma}, scaling_overlap(g, w, gamma));
          record(g, {OpKind::Complementation, w, gamma}, complementation_overlap(g, w, gamma));
          if (verify_complementation(g, w, gamma, PhaseForm::Literal) < 1.0 - tol) ++rep.literal_failures;
          if (canonical) rep.canonical_cases[n] += gamma >= 2 ? 2 : 1;
        }
    }
  return rep;
}

std::size_t verify_schmidt_rank_oracle(unsigned n_max, unsigned d) {
  std::size_t checks = 0;
  const double log_d = std::log(static_cast<double>(d));
  for (unsigned n = 2; n <= n_max; ++n) {
    std::set<GraphCode> seen;
    for (const WeightedGraph& raw : labeled_graphs(n, d)) {
      const CanonicalForm cf = canonical_form(raw);
      if (!seen.insert(cf.code).second) continue;
      const WeightedGraph& g = cf.graph;
      const StateVector s = build_graph_state(g);
      const Field f(d);
      for (std::uint32_t a = 1; a + 1 < (1u << n); ++a) {
        if (!(a & 1u)) continue;  // each split once: site 0 on side A
        const unsigned r_state = schmidt_rank_across(s, a);
        const unsigned log_r = static_cast<unsigned>(std::lround(std::log(static_cast<double>(r_state)) / log_d));
        FieldMatrix block(f, static_cast<std::size_t>(std::popcount(a)),
                          static_cast<std::size_t>(n - std::popcount(a)));
        std::size_t r = 0;
        for (unsigned u = 0; u < n; ++u) {
          if (!(a >> u & 1u)) continue;
          std::size_t c = 0;
          for (unsigned v = 0; v < n; ++v)
            if (!(a >> v & 1u)) block.set(r, c++, g.weight(u, v));
          ++r;
        }
        const std::size_t r_field = matrix_rank(block);
        std::size_t power = 1;
        for (std::size_t i = 0; i < r_field; ++i) power *= d;
        if (power != r_state || log_r != r_field)
          throw StateError("Schmidt rank mismatch on " + to_dot(g) + ": state rank " +
                           std::to_string(r_state) + ", block rank " + std::to_string(r_field));
        ++checks;
      }
    }
  }
  return checks;
}

}  // namespace qlc
