#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "qlc/local_ops.hpp"
#include "qlc/wgraph.hpp"

namespace qlc {

class StateError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using Amplitude = std::complex<double>;
inline constexpr std::size_t kMaxAmplitudes = 1'000'000;

/// Dense state of n qudits; basis index = sum_i k_i d^(n-1-i) (site 0 most significant).
struct StateVector {
  unsigned d = 2;
  unsigned n = 0;
  std::vector<Amplitude> amp;

  double norm() const;
};

/// |G> = prod CZ_uv^Γuv |+>^n, amplitude d^(-n/2) ω^(Σ_{u<v} Γuv k_u k_v).
StateVector build_graph_state(const WeightedGraph& g);

/// d x d matrix, row-major: m[r * d + c] = <r|U|c>.
using LocalMatrix = std::vector<Amplitude>;

/// P|x> = ω^(x(x-1)/2) and P̃ = H† P H as written in the local complementation
/// rule. Q|x> = ω^(x^2/2), with 1/2 the inverse of 2 in F_d, and Q̃ = H† Q H;
/// for d = 2, Q = diag(1, i). Q = P Z^(1/2) for odd d.
enum class Gate : std::uint8_t { H, Hdg, M, P, PTilde, Q, QTilde, X, Z };

/// Single-site gate matrix. `param` is γ for M and the power for the others
/// (reduced by the gate's order; negative powers allowed). H and H† ignore it.
LocalMatrix gate_matrix(Gate gate, unsigned d, long param = 1);
unsigned gate_order(Gate gate, unsigned d);

void apply_local(StateVector& s, unsigned site, const LocalMatrix& m);
void apply_gate(StateVector& s, unsigned site, Gate gate, long param = 1);
/// CZ^r on (u, v): |k_u k_v> -> ω^(r k_u k_v) |k_u k_v>.
void apply_cz(StateVector& s, unsigned u, unsigned v, unsigned r);

/// |<a|b>|, insensitive to global phase.
double fidelity(const StateVector& a, const StateVector& b);
/// <a|b>.
Amplitude overlap(const StateVector& a, const StateVector& b);

/// Fidelity of |G ∘γ w> with M_w(γ^-1)|G>.
double verify_scaling(const WeightedGraph& g, unsigned w, unsigned gamma);
/// Which phase gate the complementation identity uses. Literal (P, P̃) is
/// off by a local Z power for odd d and is the identity for d = 2;
/// Symmetric (Q, Q̃) makes the identity exact.
enum class PhaseForm : std::uint8_t { Symmetric, Literal };

/// Fidelity of |G ⋆γ w> with P̃_w^γ prod_v P_v^(-γ Γvw^2) |G>.
double verify_complementation(const WeightedGraph& g, unsigned w, unsigned gamma,
                              PhaseForm form = PhaseForm::Symmetric);
/// Same comparison, returning the overlap so the relative phase is visible.
Amplitude complementation_overlap(const WeightedGraph& g, unsigned w, unsigned gamma,
                                  PhaseForm form = PhaseForm::Symmetric);
Amplitude scaling_overlap(const WeightedGraph& g, unsigned w, unsigned gamma);

/// Numerical rank of the amplitudes reshaped d^|A| x d^|B|; singular values
/// below 1e-9 of the largest are dropped. Bit i of side_a puts site i in A.
unsigned schmidt_rank_across(const StateVector& s, std::uint32_t side_a);
unsigned schmidt_rank_across(const WeightedGraph& g, std::uint32_t side_a);

struct VerifyCase {
  WeightedGraph graph;
  LocalOp op;
  double fidelity = 0.0;
  double phase = 0.0;  // arg <graphical|unitary>, radians
};

struct VerifyReport {
  unsigned d = 0;
  unsigned n_max = 0;
  std::size_t cases = 0;
  std::size_t failures = 0;
  double max_deviation = 0.0;  // max of 1 - fidelity
  std::size_t phase_free = 0;  // passing cases with overlap phase 0 (no global phase)
  std::size_t literal_failures = 0;  // complementation cases failing with PhaseForm::Literal
  std::vector<VerifyCase> failed;
  /// Per n: checks on canonical connected graphs with admissible operations
  /// (scaling by gamma >= 2, complementation by any gamma), all included in `cases`.
  std::vector<std::size_t> canonical_cases;
};

/// Every labeled weighted graph with 1 <= n <= n_max vertices, every vertex,
/// every nonzero γ, both rules.
VerifyReport verify_sweep(unsigned n_max, unsigned d, double tol = 1e-10);

/// Checks log_d(state Schmidt rank) = rank_Fd(Γ_AB) for every bipartition of
/// every canonical graph with 2 <= n <= n_max. Returns the number of checks;
/// throws StateError describing the first mismatch.
std::size_t verify_schmidt_rank_oracle(unsigned n_max, unsigned d);

}  // namespace qlc
