#pragma once
// Hamiltonians for two driven NV centers coupled to one cavity mode: the full
// rotating-frame model, the Zeno eigenbasis of the cavity term, the
// intermediate-picture form used for the rotating-term audit, and the reduced
// three-state / two-state models obtained inside the Zeno subspace.

#include "zenoqed/qcore.hpp"

#include <string>
#include <vector>

namespace zenoqed {

struct SystemParams {
  double g1 = 1.0, g2 = 1.0;          // NV-cavity couplings (units of g)
  double omega1 = 0.0, omega2 = 0.0;  // classical Rabi frequencies
  double phi1 = 0.0, phi2 = 0.0;      // laser phases, radians
  double delta = 0.0;                 // shared detuning, sign-carrying
  double kappa = 0.0;                 // cavity decay rate
  double gamma = 0.0;                 // spontaneous emission per channel
  int n_max = 1;                      // photon truncation

  SpaceSpec space() const { return SpaceSpec{n_max}; }
  bool symmetric_coupling() const { return g1 == g2; }
  bool symmetric_drive() const { return omega1 == omega2; }
  // Flip-flop rate Omega^2 / Delta of the two-state model.
  double lambda() const;

  void validate() const;  // throws std::invalid_argument
  // Advisory only: the reductions assume Omega << g and |Delta| << 2*sqrt(2)*g.
  std::vector<std::string> zeno_warnings() const;
};

struct ZenoEigensystem {
  StateVector psi1, psi2, psi3;
  double lambda1 = 0.0, lambda2 = 0.0, lambda3 = 0.0;
};

// H = H_c + H_l + H_de with
//   H_c  = sum_i g_i (|e>_i<g| a + h.c.)
//   H_l  = sum_i Omega_i (e^{i phi_i} |e>_i<f| + h.c.)
//   H_de = Delta (|e>_1<e| + |e>_2<e|)
// Level i stays strictly uncoupled.
OperatorMatrix build_full(const SystemParams& p);
OperatorMatrix build_cavity_term(const SystemParams& p);
OperatorMatrix build_drive_term(const SystemParams& p);
OperatorMatrix build_detuning_term(const SystemParams& p);

// Single-excitation eigenvectors of H_c for g1 = g2:
//   psi1 = (|ge0> - |eg0>)/sqrt(2)            at 0
//   psi2 = (|ge0> - sqrt(2)|gg1> + |eg0>)/2   at -sqrt(2) g
//   psi3 = (|ge0> + sqrt(2)|gg1> + |eg0>)/2   at +sqrt(2) g
// Throws on asymmetric couplings.
ZenoEigensystem zeno_eigensystem(const SystemParams& p);

// U_c^dagger (H_l + H_de) U_c with U_c = exp(-i H_c t). Only used to audit
// which terms rotate fast enough to discard.
OperatorMatrix intermediate_picture(const SystemParams& p, double t);

// Three-state model on the ordered span {|gf0>, |fg0>, psi1}. Laser phases
// enter on the excited-state column as e^{-i phi} so that eliminating psi1
// reproduces build_effective's phase convention.
Eigen::Matrix3cd build_zeno_reduced(const SystemParams& p);

// Two-state model on the ordered basis {|gf0>, |fg0>}:
//   (Omega^2 / 2 Delta) [[-1, e^{i Phi}], [e^{-i Phi}, -1]],  Phi = phi2 - phi1.
// Throws on zero detuning or asymmetric drive.
Eigen::Matrix2cd build_effective(const SystemParams& p);

// Numerical adiabatic elimination of the third basis state: exact
// eigendecomposition, selection of the two eigenvectors dominated by the
// first two basis states, and re-orthonormalization of their projections
// (polar decomposition). Independent of the closed-form route above.
Eigen::Matrix2cd eliminate_excited_state(const Eigen::Matrix3cd& three_state);

// Embeddings back into the composite space (zero outside their span).
OperatorMatrix embed_two_state(const Eigen::Matrix2cd& h, SpaceSpec space);
OperatorMatrix embed_three_state(const Eigen::Matrix3cd& h, const SystemParams& p);

// Samples the matrix elements discarded between the intermediate picture and
// the three-state model and locates their dominant oscillation frequency by
// discrete Fourier transform. All peaks must sit at or above
// sqrt(2) g - |Delta|.
struct FrequencyAudit {
  struct Element {
    std::string label;
    double peak_frequency;
    double peak_amplitude;
  };
  std::vector<Element> elements;
  double min_peak_frequency = 0.0;
};
FrequencyAudit rotating_term_audit(const SystemParams& p, int n_samples = 512,
                                   double t_span = 64.0);

}  // namespace zenoqed
