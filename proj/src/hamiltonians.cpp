#include "zenoqed/hamiltonians.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace zenoqed {

namespace {
constexpr double kSqrt2 = std::numbers::sqrt2;
using enum NVLevel;
}  // namespace

double SystemParams::lambda() const {
  if (delta == 0.0) throw std::invalid_argument("SystemParams::lambda: delta is zero");
  return omega1 * omega1 / delta;
}

void SystemParams::validate() const {
  if (g1 < 0 || g2 < 0) throw std::invalid_argument("SystemParams: negative coupling");
  if (omega1 < 0 || omega2 < 0)
    throw std::invalid_argument("SystemParams: negative Rabi frequency");
  if (kappa < 0) throw std::invalid_argument("SystemParams: negative kappa");
  if (gamma < 0) throw std::invalid_argument("SystemParams: negative gamma");
  if (n_max < 1) throw std::invalid_argument("SystemParams: n_max must be >= 1");
}

std::vector<std::string> SystemParams::zeno_warnings() const {
  std::vector<std::string> warnings;
  const double g_min = std::min(g1, g2);
  const double omega_max = std::max(omega1, omega2);
  if (g_min <= 0.0) {
    warnings.push_back("zeno regime: couplings must be positive");
    return warnings;
  }
  if (omega_max > 0.1 * g_min) {
    warnings.push_back("zeno regime marginal: Omega = " + std::to_string(omega_max) +
                       " is not small against g = " + std::to_string(g_min));
  }
  if (std::abs(delta) > 0.25 * 2.0 * kSqrt2 * g_min) {
    warnings.push_back("zeno regime marginal: |Delta| = " + std::to_string(std::abs(delta)) +
                       " is not small against 2*sqrt(2)*g");
  }
  return warnings;
}

OperatorMatrix build_cavity_term(const SystemParams& p) {
  const SpaceSpec sp = p.space();
  const Matrix a = photon_annihilator(sp).mat;
  Matrix h = Matrix::Zero(sp.dim(), sp.dim());
  const double g[2] = {p.g1, p.g2};
  for (int site = 1; site <= 2; ++site) {
    const Matrix raise = lift_nv_operator(site, E, G, sp).mat * a;
    h += g[site - 1] * (raise + raise.adjoint());
  }
  return OperatorMatrix{std::move(h), sp, true};
}

OperatorMatrix build_drive_term(const SystemParams& p) {
  const SpaceSpec sp = p.space();
  Matrix h = Matrix::Zero(sp.dim(), sp.dim());
  const double omega[2] = {p.omega1, p.omega2};
  const double phi[2] = {p.phi1, p.phi2};
  for (int site = 1; site <= 2; ++site) {
    const Matrix up = lift_nv_operator(site, E, F, sp).mat;
    const Complex amp = omega[site - 1] * std::exp(Complex(0.0, phi[site - 1]));
    h += amp * up + std::conj(amp) * up.adjoint();
  }
  return OperatorMatrix{std::move(h), sp, true};
}

OperatorMatrix build_detuning_term(const SystemParams& p) {
  const SpaceSpec sp = p.space();
  Matrix h = p.delta * (lift_nv_operator(1, E, E, sp).mat + lift_nv_operator(2, E, E, sp).mat);
  return OperatorMatrix{std::move(h), sp, true};
}

OperatorMatrix build_full(const SystemParams& p) {
  p.validate();
  OperatorMatrix h = build_cavity_term(p) + build_drive_term(p) + build_detuning_term(p);
  h.hermitian_hint = true;
  return h;
}

ZenoEigensystem zeno_eigensystem(const SystemParams& p) {
  p.validate();
  if (!p.symmetric_coupling()) {
    throw std::invalid_argument("zeno_eigensystem: requires g1 == g2");
  }
  const SpaceSpec sp = p.space();
  const StateVector ge0 = StateVector::basis(G, E, 0, sp);
  const StateVector eg0 = StateVector::basis(E, G, 0, sp);
  const StateVector gg1 = StateVector::basis(G, G, 1, sp);

  ZenoEigensystem sys;
  sys.psi1 = StateVector{(ge0.amps - eg0.amps) / kSqrt2, sp};
  sys.psi2 = StateVector{(ge0.amps - kSqrt2 * gg1.amps + eg0.amps) / 2.0, sp};
  sys.psi3 = StateVector{(ge0.amps + kSqrt2 * gg1.amps + eg0.amps) / 2.0, sp};
  sys.lambda1 = 0.0;
  sys.lambda2 = -kSqrt2 * p.g1;
  sys.lambda3 = kSqrt2 * p.g1;
  return sys;
}

OperatorMatrix intermediate_picture(const SystemParams& p, double t) {
  if (!p.symmetric_coupling() || !p.symmetric_drive()) {
    throw std::invalid_argument("intermediate_picture: requires symmetric couplings and drives");
  }
  const OperatorMatrix hc = build_cavity_term(p);
  const OperatorMatrix rest = build_drive_term(p) + build_detuning_term(p);

  Eigen::SelfAdjointEigenSolver<Matrix> solver(hc.mat);
  const Matrix& v = solver.eigenvectors();
  const Eigen::VectorXd& e = solver.eigenvalues();
  Vector phases(e.size());
  for (int k = 0; k < e.size(); ++k) phases(k) = std::exp(Complex(0.0, -e(k) * t));
  const Matrix uc = v * phases.asDiagonal() * v.adjoint();
  return OperatorMatrix{uc.adjoint() * rest.mat * uc, p.space(), true};
}

Eigen::Matrix3cd build_zeno_reduced(const SystemParams& p) {
  p.validate();
  if (!p.symmetric_coupling() || !p.symmetric_drive()) {
    throw std::invalid_argument("build_zeno_reduced: requires symmetric couplings and drives");
  }
  const double omega = p.omega1;
  const Complex e1 = std::exp(Complex(0.0, p.phi1));
  const Complex e2 = std::exp(Complex(0.0, p.phi2));

  Eigen::Matrix3cd h = Eigen::Matrix3cd::Zero();
  h(0, 2) = omega / kSqrt2 * e2;
  h(1, 2) = -omega / kSqrt2 * e1;
  h(2, 0) = std::conj(h(0, 2));
  h(2, 1) = std::conj(h(1, 2));
  h(2, 2) = p.delta;
  return h;
}

Eigen::Matrix2cd build_effective(const SystemParams& p) {
  p.validate();
  if (p.delta == 0.0) {
    throw std::invalid_argument("build_effective: zero detuning");
  }
  if (!p.symmetric_drive()) {
    throw std::invalid_argument("build_effective: requires omega1 == omega2");
  }
  const double shift = p.omega1 * p.omega1 / (2.0 * p.delta);
  const Complex flip = shift * std::exp(Complex(0.0, p.phi2 - p.phi1));
  Eigen::Matrix2cd h;
  h << -shift, flip, std::conj(flip), -shift;
  return h;
}

Eigen::Matrix2cd eliminate_excited_state(const Eigen::Matrix3cd& three_state) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> solver(three_state);
  const Eigen::Matrix3cd& v = solver.eigenvectors();
  const Eigen::Vector3d& e = solver.eigenvalues();

  // The two eigenvectors living mostly on the first two basis states.
  int order[3] = {0, 1, 2};
  auto weight = [&](int k) { return std::norm(v(0, k)) + std::norm(v(1, k)); };
  std::sort(order, order + 3, [&](int a, int b) { return weight(a) > weight(b); });
  if (order[0] > order[1]) std::swap(order[0], order[1]);

  Eigen::Matrix2cd projected;
  projected << v(0, order[0]), v(0, order[1]), v(1, order[0]), v(1, order[1]);

  // Polar decomposition of the projected frame gives the closest unitary.
  Eigen::JacobiSVD<Eigen::Matrix2cd> svd(projected,
                                         Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::Matrix2cd w = svd.matrixU() * svd.matrixV().adjoint();

  Eigen::Vector2d kept(e(order[0]), e(order[1]));
  return w * kept.asDiagonal() * w.adjoint();
}

OperatorMatrix embed_two_state(const Eigen::Matrix2cd& h, SpaceSpec space) {
  const int i_gf = space.index(G, F, 0);
  const int i_fg = space.index(F, G, 0);
  OperatorMatrix op = OperatorMatrix::zero(space);
  op.mat(i_gf, i_gf) = h(0, 0);
  op.mat(i_gf, i_fg) = h(0, 1);
  op.mat(i_fg, i_gf) = h(1, 0);
  op.mat(i_fg, i_fg) = h(1, 1);
  return op;
}

OperatorMatrix embed_three_state(const Eigen::Matrix3cd& h, const SystemParams& p) {
  const SpaceSpec sp = p.space();
  const ZenoEigensystem zs = zeno_eigensystem(p);
  Matrix frame(sp.dim(), 3);
  frame.col(0) = StateVector::basis(G, F, 0, sp).amps;
  frame.col(1) = StateVector::basis(F, G, 0, sp).amps;
  frame.col(2) = zs.psi1.amps;
  return OperatorMatrix{frame * h * frame.adjoint(), sp, true};
}

FrequencyAudit rotating_term_audit(const SystemParams& p, int n_samples, double t_span) {
  if (n_samples < 8 || t_span <= 0.0) {
    throw std::invalid_argument("rotating_term_audit: bad sampling request");
  }
  const SpaceSpec sp = p.space();
  const ZenoEigensystem zs = zeno_eigensystem(p);
  const OperatorMatrix rest = build_drive_term(p) + build_detuning_term(p);

  Eigen::SelfAdjointEigenSolver<Matrix> cavity(build_cavity_term(p).mat);
  const Matrix& v = cavity.eigenvectors();
  const Eigen::VectorXd& e = cavity.eigenvalues();
  const Matrix core = v.adjoint() * rest.mat * v;

  struct Pair {
    std::string label;
    Vector bra, ket;  // cavity-eigenbasis frames
  };
  auto framed = [&](const StateVector& s) { return Vector(v.adjoint() * s.amps); };
  const Vector gf0 = framed(StateVector::basis(G, F, 0, sp));
  const Vector fg0 = framed(StateVector::basis(F, G, 0, sp));
  const Vector psi2 = framed(zs.psi2);
  const Vector psi3 = framed(zs.psi3);
  const std::vector<Pair> pairs = {
      {"psi2|gf0", psi2, gf0}, {"psi3|gf0", psi3, gf0}, {"psi2|fg0", psi2, fg0},
      {"psi3|fg0", psi3, fg0}, {"psi2|psi3", psi2, psi3}};

  FrequencyAudit audit;
  audit.min_peak_frequency = std::numeric_limits<double>::infinity();
  const double dt = t_span / n_samples;
  const int dim = sp.dim();

  for (const Pair& pair : pairs) {
    // <bra| U_c^dag H U_c |ket> = sum_ab conj(bra_a) core_ab e^{i(e_a - e_b)t} ket_b
    std::vector<Complex> series(n_samples);
    for (int j = 0; j < n_samples; ++j) {
      const double t = j * dt;
      Complex val = 0.0;
      for (int a = 0; a < dim; ++a) {
        if (pair.bra(a) == 0.0) continue;
        for (int b = 0; b < dim; ++b) {
          if (core(a, b) == 0.0 || pair.ket(b) == 0.0) continue;
          val += std::conj(pair.bra(a)) * core(a, b) * pair.ket(b) *
                 std::exp(Complex(0.0, (e(a) - e(b)) * t));
        }
      }
      series[j] = val;
    }
    // Direct DFT; the signals are few-tone, a peak bin is all we need.
    double best_mag = -1.0;
    int best_bin = 0;
    for (int k = 0; k < n_samples; ++k) {
      Complex acc = 0.0;
      for (int j = 0; j < n_samples; ++j) {
        acc += series[j] * std::exp(Complex(0.0, -2.0 * std::numbers::pi * j * k / n_samples));
      }
      if (std::abs(acc) > best_mag) {
        best_mag = std::abs(acc);
        best_bin = k;
      }
    }
    const int signed_bin = best_bin <= n_samples / 2 ? best_bin : best_bin - n_samples;
    const double freq = std::abs(2.0 * std::numbers::pi * signed_bin / t_span);
    audit.elements.push_back({pair.label, freq, best_mag / n_samples});
    audit.min_peak_frequency = std::min(audit.min_peak_frequency, freq);
  }
  return audit;
}

}  // namespace zenoqed
