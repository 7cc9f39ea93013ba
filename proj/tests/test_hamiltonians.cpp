#include "zenoqed/hamiltonians.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace zenoqed;
using enum NVLevel;

namespace {
constexpr double kSqrt2 = std::numbers::sqrt2;

SystemParams operating_point() {
  SystemParams p;
  p.omega1 = p.omega2 = 0.05;
  p.delta = 0.5;
  return p;
}

Complex element(const OperatorMatrix& h, const StateVector& bra, const StateVector& ket) {
  return bra.amps.dot(h.mat * ket.amps);
}
}  // namespace

TEST_CASE("full Hamiltonian matrix elements") {
  SystemParams p = operating_point();
  p.phi1 = 0.3;
  p.phi2 = -1.1;
  const SpaceSpec sp = p.space();
  const OperatorMatrix h = build_full(p);

  CHECK(h.hermiticity_defect() == 0.0);
  CHECK(h.apply(StateVector::basis(G, G, 0, sp)).norm() == 0.0);
  CHECK(h.apply(StateVector::basis(I, I, 0, sp)).norm() == 0.0);

  const Complex drive = element(h, StateVector::basis(E, F, 0, sp),
                                StateVector::basis(F, F, 0, sp));
  CHECK(std::abs(drive - 0.05 * std::exp(Complex(0.0, 0.3))) < 1e-15);

  const Complex cavity = element(h, StateVector::basis(G, G, 1, sp),
                                 StateVector::basis(E, G, 0, sp));
  CHECK(std::abs(cavity - Complex(1.0)) < 1e-15);
}

TEST_CASE("ancilla level stays uncoupled") {
  SystemParams p = operating_point();
  p.kappa = 0.2;
  p.gamma = 0.01;
  const OperatorMatrix h = build_full(p);
  const OperatorMatrix proj = level_projector(I, p.space());
  CHECK(((h * proj).mat - (proj * h).mat).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("cavity eigensystem") {
  const SystemParams p = operating_point();
  const ZenoEigensystem zs = zeno_eigensystem(p);
  CHECK(zs.lambda1 == 0.0);
  CHECK(zs.lambda2 == doctest::Approx(-kSqrt2).epsilon(1e-14));
  CHECK(zs.lambda3 == doctest::Approx(kSqrt2).epsilon(1e-14));

  SystemParams cavity_only = p;
  cavity_only.omega1 = cavity_only.omega2 = 0.0;
  cavity_only.delta = 0.0;
  const OperatorMatrix hc = build_full(cavity_only);
  const StateVector* vecs[3] = {&zs.psi1, &zs.psi2, &zs.psi3};
  const double vals[3] = {zs.lambda1, zs.lambda2, zs.lambda3};
  for (int a = 0; a < 3; ++a) {
    CHECK((hc.mat * vecs[a]->amps - vals[a] * vecs[a]->amps).norm() < 1e-10);
    for (int b = 0; b < 3; ++b) {
      const Complex ov = vecs[a]->overlap(*vecs[b]);
      CHECK(std::abs(ov - (a == b ? 1.0 : 0.0)) < 1e-10);
    }
  }

  SystemParams lopsided = p;
  lopsided.g2 = 1.5;
  CHECK_THROWS_AS(zeno_eigensystem(lopsided), std::invalid_argument);
}

TEST_CASE("drive-term elements in the cavity eigenbasis") {
  const SystemParams p = operating_point();
  const ZenoEigensystem zs = zeno_eigensystem(p);
  const OperatorMatrix hl = build_drive_term(p);
  const SpaceSpec sp = p.space();
  const StateVector gf0 = StateVector::basis(G, F, 0, sp);
  CHECK(std::abs(element(hl, zs.psi1, gf0) - Complex(0.05 / kSqrt2)) < 1e-12);
  CHECK(std::abs(element(hl, zs.psi2, gf0) - Complex(0.05 / 2.0)) < 1e-12);
  const StateVector fg0 = StateVector::basis(F, G, 0, sp);
  CHECK(std::abs(element(hl, zs.psi1, fg0) + Complex(0.05 / kSqrt2)) < 1e-12);
}

TEST_CASE("intermediate picture reduces to H_l + H_de at t = 0") {
  const SystemParams p = operating_point();
  const OperatorMatrix rest = build_drive_term(p) + build_detuning_term(p);
  const OperatorMatrix h0 = intermediate_picture(p, 0.0);
  CHECK((h0.mat - rest.mat).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("intermediate-picture elements rotate at the cavity gaps") {
  const SystemParams p = operating_point();
  const ZenoEigensystem zs = zeno_eigensystem(p);
  const StateVector gf0 = StateVector::basis(G, F, 0, p.space());

  const double dt = 0.31;
  Complex prev2 = 0.0, prev23 = 0.0;
  for (int k = 0; k < 6; ++k) {
    const OperatorMatrix hi = intermediate_picture(p, k * dt);
    const Complex e2 = element(hi, zs.psi2, gf0);
    CHECK(std::abs(std::abs(e2) - 0.05 / 2.0) < 1e-12);  // constant modulus
    const Complex e23 = element(hi, zs.psi2, zs.psi3);
    if (k > 0) {
      // phase advances at -sqrt(2) g (psi2|gf0) and -2 sqrt(2) g (psi2|psi3)
      const double step2 = std::arg(e2 / prev2);
      const double step23 = std::arg(e23 / prev23);
      CHECK(step2 == doctest::Approx(-kSqrt2 * dt).epsilon(1e-9));
      CHECK(step23 == doctest::Approx(-2.0 * kSqrt2 * dt).epsilon(1e-9));
    }
    prev2 = e2;
    prev23 = e23;
  }
}

TEST_CASE("three-state model") {
  SystemParams p = operating_point();
  const Eigen::Matrix3cd h = build_zeno_reduced(p);
  CHECK(std::abs(h(2, 0) - Complex(0.05 / kSqrt2)) < 1e-15);
  CHECK(std::abs(h(2, 1) + Complex(0.05 / kSqrt2)) < 1e-15);
  CHECK(std::abs(h(2, 2) - Complex(0.5)) < 1e-15);

  // the symmetric qubit combination decouples
  Eigen::Vector3cd triplet(1.0 / kSqrt2, 1.0 / kSqrt2, 0.0);
  CHECK((h * triplet).norm() < 1e-15);

  // level shift of the driven combination: exact 2x2 diagonalization oracle
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> solver(h);
  const double omega = 0.05, delta = 0.5;
  const double exact = (delta - std::sqrt(delta * delta + 4.0 * omega * omega)) / 2.0;
  CHECK(solver.eigenvalues()(0) == doctest::Approx(exact).epsilon(1e-12));
  CHECK(std::abs(exact + omega * omega / delta) < 2.0 * std::pow(omega, 4) / std::pow(delta, 3));

  SystemParams lopsided = p;
  lopsided.omega2 = 0.06;
  CHECK_THROWS_AS(build_zeno_reduced(lopsided), std::invalid_argument);
}

TEST_CASE("two-state model") {
  SystemParams p = operating_point();
  Eigen::Matrix2cd h = build_effective(p);
  CHECK(std::abs(h(0, 1) - Complex(0.0025)) < 1e-15);
  CHECK(std::abs(h(0, 0) + Complex(0.0025)) < 1e-15);

  // eigensystem: {0, -Omega^2/Delta}, the lower branch on (|gf> - |fg>)/sqrt(2)
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> solver(h);
  CHECK(solver.eigenvalues()(0) == doctest::Approx(-0.005).epsilon(1e-12));
  CHECK(solver.eigenvalues()(1) == doctest::Approx(0.0).epsilon(1e-12));
  const Eigen::Vector2cd low = solver.eigenvectors().col(0);
  CHECK(std::abs(std::abs(low(0)) - 1.0 / kSqrt2) < 1e-12);
  CHECK(std::abs(low(0) + low(1)) < 1e-12);

  // advancing phi2 by pi flips the off-diagonal sign only
  SystemParams flipped = p;
  flipped.phi2 += std::numbers::pi;
  const Eigen::Matrix2cd hf = build_effective(flipped);
  CHECK(std::abs(hf(0, 1) + h(0, 1)) < 1e-15);
  CHECK(std::abs(hf(0, 0) - h(0, 0)) < 1e-15);

  SystemParams resonant = p;
  resonant.delta = 0.0;
  CHECK_THROWS_AS(build_effective(resonant), std::invalid_argument);
}

TEST_CASE("two-state model matches numerical elimination") {
  for (const auto& [omega, delta, phi1, phi2] :
       {std::tuple{0.05, 0.5, 0.0, 0.0}, std::tuple{0.05, 0.5, 0.4, -0.9},
        std::tuple{0.01, 0.2, 0.0, 1.2}, std::tuple{0.06, 0.4, 0.0, 0.0}}) {
    SystemParams p;
    p.omega1 = p.omega2 = omega;
    p.delta = delta;
    p.phi1 = phi1;
    p.phi2 = phi2;
    const Eigen::Matrix2cd direct = build_effective(p);
    const Eigen::Matrix2cd eliminated = eliminate_excited_state(build_zeno_reduced(p));
    const double err = (direct - eliminated).cwiseAbs().maxCoeff();
    CHECK(err <= 5.0 * omega * omega * omega / (delta * delta));
  }
}

TEST_CASE("embedded models act only on their span") {
  const SystemParams p = operating_point();
  const SpaceSpec sp = p.space();
  const OperatorMatrix h2 = embed_two_state(build_effective(p), sp);
  CHECK(h2.apply(StateVector::basis(G, G, 0, sp)).norm() == 0.0);
  CHECK(h2.apply(StateVector::basis(F, I, 0, sp)).norm() == 0.0);

  const OperatorMatrix h3 = embed_three_state(build_zeno_reduced(p), p);
  CHECK(h3.hermiticity_defect() < 1e-15);
  const ZenoEigensystem zs = zeno_eigensystem(p);
  CHECK(std::abs(element(h3, zs.psi1, StateVector::basis(G, F, 0, sp)) -
                 Complex(0.05 / kSqrt2)) < 1e-12);
}

TEST_CASE("discarded rotating terms sit at or above the cavity gap") {
  const SystemParams p = operating_point();
  const FrequencyAudit audit = rotating_term_audit(p);
  CHECK(audit.min_peak_frequency >= kSqrt2 - 0.5);
  for (const auto& el : audit.elements) {
    const double expected = el.label == "psi2|psi3" ? 2.0 * kSqrt2 : kSqrt2;
    CHECK(el.peak_frequency == doctest::Approx(expected).epsilon(0.06));
  }
}

TEST_CASE("zeno-regime advisories") {
  CHECK(operating_point().zeno_warnings().empty());
  SystemParams hot = operating_point();
  hot.omega1 = hot.omega2 = 0.3;
  CHECK(hot.zeno_warnings().size() == 1);
  hot.delta = 1.5;
  CHECK(hot.zeno_warnings().size() == 2);
}

TEST_CASE("parameter validation") {
  SystemParams p = operating_point();
  p.kappa = -0.1;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = operating_point();
  p.n_max = 0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = operating_point();
  p.omega1 = -0.05;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}
