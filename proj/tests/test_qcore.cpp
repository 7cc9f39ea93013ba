#include "zenoqed/qcore.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace zenoqed;
using enum NVLevel;

namespace {
const SpaceSpec kSpace{1};
}

TEST_CASE("basis indexing follows the documented ordering") {
  CHECK(kSpace.index(G, G, 0) == 0);
  CHECK(kSpace.index(F, G, 0) == 8);
  CHECK(kSpace.index(G, F, 1) == 3);
  CHECK(kSpace.dim() == 32);
  CHECK(SpaceSpec{2}.dim() == 48);
}

TEST_CASE("unindex inverts index over the whole space") {
  for (int n_max : {1, 2}) {
    const SpaceSpec sp{n_max};
    for (int idx = 0; idx < sp.dim(); ++idx) {
      const auto lbl = sp.unindex(idx);
      CHECK(sp.index(lbl.nv1, lbl.nv2, lbl.n) == idx);
    }
  }
}

TEST_CASE("photon count out of range is rejected") {
  CHECK_THROWS_AS(kSpace.index(G, G, 2), std::out_of_range);
  CHECK_THROWS_AS(kSpace.index(G, G, -1), std::out_of_range);
  CHECK_THROWS_AS(kSpace.unindex(32), std::out_of_range);
}

TEST_CASE("lifted NV operators act on one site only") {
  const OperatorMatrix lift_eg = lift_nv_operator(1, E, G, kSpace);
  const StateVector gg0 = StateVector::basis(G, G, 0, kSpace);
  const StateVector eg0 = StateVector::basis(E, G, 0, kSpace);
  CHECK((lift_eg.apply(gg0).amps - eg0.amps).norm() == doctest::Approx(0.0));

  // adjoint pairs
  const OperatorMatrix a = lift_nv_operator(2, E, F, kSpace);
  const OperatorMatrix b = lift_nv_operator(2, F, E, kSpace);
  CHECK((a.adjoint().mat - b.mat).cwiseAbs().maxCoeff() == 0.0);

  // disjoint sites commute
  const OperatorMatrix c = lift_nv_operator(1, E, G, kSpace);
  const OperatorMatrix d = lift_nv_operator(2, E, F, kSpace);
  CHECK(((c * d).mat - (d * c).mat).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("lifted operators are 0/1 on basis states with the right count") {
  for (int n_max : {1, 2}) {
    const SpaceSpec sp{n_max};
    const OperatorMatrix lift = lift_nv_operator(1, E, G, sp);
    int nonzeros = 0;
    for (int r = 0; r < sp.dim(); ++r) {
      for (int c = 0; c < sp.dim(); ++c) {
        const Complex v = lift.mat(r, c);
        CHECK((v == Complex(0.0) || v == Complex(1.0)));
        if (v != Complex(0.0)) ++nonzeros;
      }
    }
    CHECK(nonzeros == (n_max + 1) * 16 / 4);
  }
}

TEST_CASE("photon annihilator lowers Fock states") {
  const OperatorMatrix a = photon_annihilator(kSpace);
  const StateVector gg1 = StateVector::basis(G, G, 1, kSpace);
  const StateVector gg0 = StateVector::basis(G, G, 0, kSpace);
  CHECK((a.apply(gg1).amps - gg0.amps).norm() == doctest::Approx(0.0));
  CHECK(a.apply(gg0).norm() == 0.0);

  // a^dag a is diagonal with eigenvalues 0..n_max, 16-fold each
  const SpaceSpec sp{2};
  const OperatorMatrix num = photon_annihilator(sp).adjoint() * photon_annihilator(sp);
  CHECK((num.mat - photon_number(sp).mat).cwiseAbs().maxCoeff() < 1e-14);
  std::array<int, 3> mult{};
  for (int i = 0; i < sp.dim(); ++i) {
    mult[static_cast<int>(std::lround(num.mat(i, i).real()))]++;
  }
  CHECK(mult == std::array<int, 3>{16, 16, 16});
}

TEST_CASE("exact propagation: trivial limits") {
  const StateVector psi0 =
      StateVector{(StateVector::basis(G, F, 0, kSpace).amps +
                   StateVector::basis(F, G, 0, kSpace).amps) /
                      std::numbers::sqrt2,
                  kSpace};
  CHECK((propagate_exact(OperatorMatrix::zero(kSpace), psi0, 7.3).amps - psi0.amps).norm() <
        1e-12);

  OperatorMatrix h = OperatorMatrix::zero(kSpace);
  h.mat(0, 3) = 0.4;
  h.mat(3, 0) = 0.4;
  CHECK((propagate_exact(h, psi0, 0.0).amps - psi0.amps).norm() < 1e-12);
}

TEST_CASE("exact propagation matches the closed-form two-level flop") {
  // Omega sigma_x embedded on {|gg0>, |gf0>}; oracle is the 2x2 exponential
  // exp(-i Omega t sigma_x) = cos(Omega t) I - i sin(Omega t) sigma_x.
  const double omega = 0.37;
  OperatorMatrix h = OperatorMatrix::zero(kSpace);
  const int i0 = kSpace.index(G, G, 0);
  const int i1 = kSpace.index(G, F, 0);
  h.mat(i0, i1) = omega;
  h.mat(i1, i0) = omega;

  const StateVector psi0 = StateVector::basis(G, G, 0, kSpace);
  for (double t : {0.3, 1.7, std::numbers::pi / omega}) {
    const StateVector psi = propagate_exact(h, psi0, t);
    CHECK(std::abs(psi.amps(i0) - std::cos(omega * t)) < 1e-12);
    CHECK(std::abs(psi.amps(i1) - Complex(0.0, -std::sin(omega * t))) < 1e-12);
    CHECK(std::abs(psi.norm() - 1.0) < 1e-10);
  }
  // full flop period: back to the start up to sign
  const StateVector flop = propagate_exact(h, psi0, std::numbers::pi / omega);
  CHECK(std::abs(flop.amps(i0) + 1.0) < 1e-12);
}

TEST_CASE("propagation group property") {
  OperatorMatrix h = OperatorMatrix::zero(kSpace);
  h.mat(kSpace.index(G, G, 0), kSpace.index(E, G, 0)) = Complex(0.3, 0.2);
  h.mat(kSpace.index(E, G, 0), kSpace.index(G, G, 0)) = Complex(0.3, -0.2);
  h.mat(kSpace.index(E, G, 0), kSpace.index(E, G, 0)) = 0.8;
  h.mat(kSpace.index(G, F, 1), kSpace.index(E, G, 0)) = Complex(0.0, -0.45);
  h.mat(kSpace.index(E, G, 0), kSpace.index(G, F, 1)) = Complex(0.0, 0.45);

  StateVector psi0 = StateVector::basis(G, G, 0, kSpace);
  const double t1 = 2.1, t2 = 5.6;
  const StateVector once = propagate_exact(h, psi0, t1 + t2);
  const StateVector twice = propagate_exact(h, propagate_exact(h, psi0, t1), t2);
  CHECK((once.amps - twice.amps).norm() < 1e-9);
}

TEST_CASE("non-Hermitian input is rejected") {
  OperatorMatrix h = OperatorMatrix::zero(kSpace);
  h.mat(0, 1) = 1.0;  // no conjugate partner
  CHECK_THROWS_AS(propagate_exact(h, StateVector::basis(G, G, 0, kSpace), 1.0),
                  std::invalid_argument);
}

TEST_CASE("partial trace to the qubit block") {
  const StateVector gf0 = StateVector::basis(G, F, 0, kSpace);
  Eigen::Matrix4cd q = partial_trace_to_qubits(DensityMatrix::pure(gf0));
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      CHECK(std::abs(q(i, j) - (i == 1 && j == 1 ? 1.0 : 0.0)) < 1e-15);
    }
  }

  // equal-weight singlet-triplet mix: every central entry is 1/2
  StateVector bell = StateVector::zero(kSpace);
  bell.amps(kSpace.index(G, F, 0)) = 1.0 / std::numbers::sqrt2;
  bell.amps(kSpace.index(F, G, 0)) = 1.0 / std::numbers::sqrt2;
  q = partial_trace_to_qubits(bell);
  for (int i : {1, 2}) {
    for (int j : {1, 2}) {
      CHECK(std::abs(q(i, j) - 0.5) < 1e-12);
    }
  }

  // population outside the qubit levels vanishes from the block
  const StateVector eg0 = StateVector::basis(E, G, 0, kSpace);
  CHECK(partial_trace_to_qubits(DensityMatrix::pure(eg0)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("partial trace preserves trace on qubit-supported states") {
  StateVector psi = StateVector::zero(kSpace);
  psi.amps(kSpace.index(G, G, 0)) = 0.5;
  psi.amps(kSpace.index(G, F, 1)) = Complex(0.1, 0.6);
  psi.amps(kSpace.index(F, G, 0)) = Complex(-0.3, 0.2);
  psi.amps(kSpace.index(F, F, 1)) = 0.4;
  psi.normalize();
  const Eigen::Matrix4cd q = partial_trace_to_qubits(psi);
  CHECK(std::abs(q.trace().real() - 1.0) < 1e-12);

  // matches the density-matrix route
  const Eigen::Matrix4cd q2 = partial_trace_to_qubits(DensityMatrix::pure(psi));
  CHECK((q - q2).cwiseAbs().maxCoeff() < 1e-14);
}
