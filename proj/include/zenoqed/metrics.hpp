#pragma once
// Scalar figures of merit: state fidelity, the closed-form two-qubit state of
// the flip-flop model, its reduced-density-matrix entries, and both
// concurrence measures (Wootters and the closed-form expression, which equals
// the squared Wootters concurrence, i.e. the tangle, on this state family).

#include "zenoqed/qcore.hpp"

namespace zenoqed {

// Two-qubit reduced state over {|gg>, |gf>, |fg>, |ff>}. trace_deficit is
// the population that sat outside the qubit levels before the projection.
struct QubitRho {
  Eigen::Matrix4cd rho;
  double trace_deficit = 0.0;
};

QubitRho reduce_to_qubits(const DensityMatrix& rho);
QubitRho reduce_to_qubits(const StateVector& psi);

// Weights of the initial state alpha|gf> + beta|fg> and the flip-flop rate
// lambda = Omega^2/Delta driving it.
struct EntanglementParams {
  Complex alpha{1.0, 0.0};
  Complex beta{0.0, 0.0};
  double lambda = 0.0;

  static EntanglementParams from_weights(Complex alpha, Complex beta, double lambda);
  static EntanglementParams from_ratio(double r, double lambda);

  Complex ratio() const;  // alpha / beta
  void validate() const;  // normalization within 1e-12
};

// F = <target| rho |target>.
double fidelity(const StateVector& target, const DensityMatrix& rho);
double fidelity(const StateVector& target, const StateVector& psi);

// Amplitudes (on |gf>, |fg>) of the closed-form evolved state
//   e^{-i lambda t/2} [ (alpha cos(lambda t/2) + i beta sin(lambda t/2)) |gf>
//                     + (i alpha sin(lambda t/2) + beta cos(lambda t/2)) |fg> ].
Eigen::Vector2cd pair_state_amplitudes(const EntanglementParams& p, double t);

// The four nonzero entries of 4*rho_q for the closed-form state: rho_q =
// (1/4) [[0,0,0,0],[0,a,b,0],[0,c,d,0],[0,0,0,0]].
struct ReducedEntries {
  Complex a, b, c, d;
};

// Entries evaluated from the state amplitudes directly. Requires real
// weights; throws std::invalid_argument otherwise.
ReducedEntries reduced_entries(const EntanglementParams& p, double t);
// The as-published variant, whose b/c carry the opposite imaginary sign
// (i.e. the transpose). Magnitudes and both concurrences agree.
ReducedEntries reduced_entries_printed(const EntanglementParams& p, double t);
// Entries read off an arbitrary two-qubit state (a = 4 rho_gf,gf etc.).
ReducedEntries reduced_entries(const QubitRho& q);

QubitRho assemble_from_entries(const ReducedEntries& e);

enum class LeakagePolicy {
  Strict,       // trace_deficit <= 1e-6 required
  Renormalize,  // deficit <= 1e-3 renormalized, larger is an error
};

// Wootters concurrence of the two-qubit state. Throws std::invalid_argument
// on excessive leakage per the policy.
double concurrence_wootters(const QubitRho& q, LeakagePolicy policy = LeakagePolicy::Strict);

// sqrt((a c* + a* b)(c d* + b* d)) / 8 evaluated exactly as written; on the
// flip-flop state family this equals the squared Wootters concurrence.
double tangle_from_entries(const ReducedEntries& e);

}  // namespace zenoqed
