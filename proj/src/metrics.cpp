#include "zenoqed/metrics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace zenoqed {

namespace {
double qubit_trace(const Eigen::Matrix4cd& m) { return m.trace().real(); }
}  // namespace

QubitRho reduce_to_qubits(const DensityMatrix& rho) {
  QubitRho q;
  q.rho = partial_trace_to_qubits(rho);
  q.trace_deficit = rho.trace_real() - qubit_trace(q.rho);
  return q;
}

QubitRho reduce_to_qubits(const StateVector& psi) {
  QubitRho q;
  q.rho = partial_trace_to_qubits(psi);
  q.trace_deficit = psi.amps.squaredNorm() - qubit_trace(q.rho);
  return q;
}

EntanglementParams EntanglementParams::from_weights(Complex alpha, Complex beta,
                                                    double lambda) {
  const double nrm = std::sqrt(std::norm(alpha) + std::norm(beta));
  if (nrm == 0.0) throw std::invalid_argument("EntanglementParams: zero weights");
  EntanglementParams p{alpha / nrm, beta / nrm, lambda};
  return p;
}

EntanglementParams EntanglementParams::from_ratio(double r, double lambda) {
  const double beta = 1.0 / std::sqrt(1.0 + r * r);
  return EntanglementParams{Complex(r * beta, 0.0), Complex(beta, 0.0), lambda};
}

Complex EntanglementParams::ratio() const {
  if (beta == Complex(0.0, 0.0)) {
    throw std::invalid_argument("EntanglementParams::ratio: beta is zero");
  }
  return alpha / beta;
}

void EntanglementParams::validate() const {
  if (std::abs(std::norm(alpha) + std::norm(beta) - 1.0) > 1e-12) {
    throw std::invalid_argument("EntanglementParams: weights not normalized");
  }
}

double fidelity(const StateVector& target, const DensityMatrix& rho) {
  if (!(target.space == rho.space)) {
    throw std::invalid_argument("fidelity: dimension mismatch");
  }
  const Complex f = target.amps.dot(rho.mat * target.amps);
  return f.real();
}

double fidelity(const StateVector& target, const StateVector& psi) {
  return std::norm(target.overlap(psi));
}

Eigen::Vector2cd pair_state_amplitudes(const EntanglementParams& p, double t) {
  p.validate();
  const double half = 0.5 * p.lambda * t;
  const Complex phase = std::exp(Complex(0.0, -half));
  const Complex i(0.0, 1.0);
  Eigen::Vector2cd amps;
  amps(0) = phase * (p.alpha * std::cos(half) + i * p.beta * std::sin(half));
  amps(1) = phase * (i * p.alpha * std::sin(half) + p.beta * std::cos(half));
  return amps;
}

namespace {
void require_real_weights(const EntanglementParams& p) {
  if (std::abs(p.alpha.imag()) > 1e-12 || std::abs(p.beta.imag()) > 1e-12) {
    throw std::invalid_argument("reduced_entries: weights must be real");
  }
}
}  // namespace

ReducedEntries reduced_entries(const EntanglementParams& p, double t) {
  p.validate();
  require_real_weights(p);
  const Eigen::Vector2cd amps = pair_state_amplitudes(p, t);
  return ReducedEntries{4.0 * std::norm(amps(0)), 4.0 * amps(0) * std::conj(amps(1)),
                        4.0 * amps(1) * std::conj(amps(0)), 4.0 * std::norm(amps(1))};
}

ReducedEntries reduced_entries_printed(const EntanglementParams& p, double t) {
  p.validate();
  require_real_weights(p);
  const double a = p.alpha.real();
  const double b = p.beta.real();
  const double c = std::cos(p.lambda * t);
  const double s = std::sin(p.lambda * t);
  const Complex i(0.0, 1.0);
  ReducedEntries e;
  e.a = 2.0 * (a * a + b * b) + 2.0 * (a * a - b * b) * c;
  e.b = 4.0 * a * b + 2.0 * i * (a * a - b * b) * s;
  e.c = 4.0 * a * b - 2.0 * i * (a * a - b * b) * s;
  e.d = 2.0 * (a * a + b * b) - 2.0 * (a * a - b * b) * c;
  return e;
}

ReducedEntries reduced_entries(const QubitRho& q) {
  return ReducedEntries{4.0 * q.rho(1, 1), 4.0 * q.rho(1, 2), 4.0 * q.rho(2, 1),
                        4.0 * q.rho(2, 2)};
}

QubitRho assemble_from_entries(const ReducedEntries& e) {
  QubitRho q;
  q.rho = Eigen::Matrix4cd::Zero();
  q.rho(1, 1) = e.a / 4.0;
  q.rho(1, 2) = e.b / 4.0;
  q.rho(2, 1) = e.c / 4.0;
  q.rho(2, 2) = e.d / 4.0;
  q.trace_deficit = 1.0 - qubit_trace(q.rho);
  return q;
}

double concurrence_wootters(const QubitRho& q, LeakagePolicy policy) {
  Eigen::Matrix4cd rho = q.rho;
  if (policy == LeakagePolicy::Strict) {
    if (std::abs(q.trace_deficit) > 1e-6) {
      throw std::invalid_argument("concurrence_wootters: excessive leakage");
    }
  } else {
    if (std::abs(q.trace_deficit) > 1e-3) {
      throw std::invalid_argument("concurrence_wootters: leakage beyond 1e-3");
    }
    const double tr = qubit_trace(rho);
    if (tr <= 0.0) throw std::invalid_argument("concurrence_wootters: empty qubit block");
    rho /= tr;
  }

  // Spin flip Y = sigma_y (x) sigma_y in the {gg, gf, fg, ff} ordering.
  Eigen::Matrix4cd y = Eigen::Matrix4cd::Zero();
  y(0, 3) = -1.0;
  y(1, 2) = 1.0;
  y(2, 1) = 1.0;
  y(3, 0) = -1.0;

  const Eigen::Matrix4cd r = rho * y * rho.conjugate() * y;
  Eigen::ComplexEigenSolver<Eigen::Matrix4cd> solver(r);
  double lam_max = 0.0;
  for (int k = 0; k < 4; ++k) {
    lam_max = std::max(lam_max, solver.eigenvalues()(k).real());
  }
  // Eigenvalues of R are products of PSD spectra; anything at rounding scale
  // relative to the largest one is noise and must not leak into the
  // square-root differences.
  std::array<double, 4> roots{};
  for (int k = 0; k < 4; ++k) {
    double lam = solver.eigenvalues()(k).real();
    if (lam < lam_max * 1e-13) lam = 0.0;
    roots[k] = std::sqrt(lam);
  }
  std::sort(roots.begin(), roots.end(), std::greater<>());
  const double c = roots[0] - roots[1] - roots[2] - roots[3];
  return std::clamp(c, 0.0, 1.0);
}

double tangle_from_entries(const ReducedEntries& e) {
  const Complex product = (e.a * std::conj(e.c) + std::conj(e.a) * e.b) *
                          (e.c * std::conj(e.d) + std::conj(e.b) * e.d);
  return std::sqrt(std::abs(product)) / 8.0;
}

}  // namespace zenoqed
