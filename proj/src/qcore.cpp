#include "zenoqed/qcore.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace zenoqed {

int SpaceSpec::index(NVLevel nv1, NVLevel nv2, int n) const {
  if (n < 0 || n > n_max) {
    throw std::out_of_range("SpaceSpec::index: photon count " + std::to_string(n) +
                            " outside [0, " + std::to_string(n_max) + "]");
  }
  return (level_code(nv1) * 4 + level_code(nv2)) * fock_dim() + n;
}

SpaceSpec::Label SpaceSpec::unindex(int idx) const {
  if (idx < 0 || idx >= dim()) {
    throw std::out_of_range("SpaceSpec::unindex: index out of range");
  }
  const int n = idx % fock_dim();
  const int pair = idx / fock_dim();
  return Label{static_cast<NVLevel>(pair / 4), static_cast<NVLevel>(pair % 4), n};
}

StateVector StateVector::zero(SpaceSpec space) {
  return StateVector{Vector::Zero(space.dim()), space};
}

StateVector StateVector::basis(NVLevel nv1, NVLevel nv2, int n, SpaceSpec space) {
  StateVector psi = zero(space);
  psi.amps(space.index(nv1, nv2, n)) = 1.0;
  return psi;
}

StateVector& StateVector::normalize() {
  const double nrm = amps.norm();
  if (nrm == 0.0) throw std::invalid_argument("StateVector::normalize: zero vector");
  amps /= nrm;
  return *this;
}

Complex StateVector::overlap(const StateVector& other) const {
  if (!(space == other.space)) {
    throw std::invalid_argument("StateVector::overlap: space mismatch");
  }
  return amps.dot(other.amps);  // conjugates *this
}

double StateVector::population(int basis_index) const {
  return std::norm(amps(basis_index));
}

OperatorMatrix OperatorMatrix::zero(SpaceSpec space) {
  return OperatorMatrix{Matrix::Zero(space.dim(), space.dim()), space, true};
}

OperatorMatrix OperatorMatrix::identity(SpaceSpec space) {
  return OperatorMatrix{Matrix::Identity(space.dim(), space.dim()), space, true};
}

OperatorMatrix OperatorMatrix::adjoint() const {
  return OperatorMatrix{mat.adjoint(), space, hermitian_hint};
}

StateVector OperatorMatrix::apply(const StateVector& psi) const {
  if (!(space == psi.space)) {
    throw std::invalid_argument("OperatorMatrix::apply: space mismatch");
  }
  return StateVector{mat * psi.amps, space};
}

double OperatorMatrix::hermiticity_defect() const {
  return (mat - mat.adjoint()).cwiseAbs().maxCoeff();
}

OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b) {
  if (!(a.space == b.space)) throw std::invalid_argument("operator*: space mismatch");
  return OperatorMatrix{a.mat * b.mat, a.space, false};
}

OperatorMatrix operator+(const OperatorMatrix& a, const OperatorMatrix& b) {
  if (!(a.space == b.space)) throw std::invalid_argument("operator+: space mismatch");
  return OperatorMatrix{a.mat + b.mat, a.space, a.hermitian_hint && b.hermitian_hint};
}

OperatorMatrix operator*(Complex c, const OperatorMatrix& a) {
  return OperatorMatrix{c * a.mat, a.space, false};
}

DensityMatrix DensityMatrix::pure(const StateVector& psi) {
  return DensityMatrix{psi.amps * psi.amps.adjoint(), psi.space};
}

double DensityMatrix::trace_real() const { return mat.trace().real(); }

double DensityMatrix::hermiticity_defect() const {
  return (mat - mat.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (mat + mat.adjoint()),
                                               Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

OperatorMatrix lift_nv_operator(int site, NVLevel bra, NVLevel ket, SpaceSpec space) {
  if (site != 1 && site != 2) {
    throw std::invalid_argument("lift_nv_operator: site must be 1 or 2");
  }
  OperatorMatrix op = OperatorMatrix::zero(space);
  for (int other = 0; other < 4; ++other) {
    const auto o = static_cast<NVLevel>(other);
    for (int n = 0; n <= space.n_max; ++n) {
      const int row = site == 1 ? space.index(bra, o, n) : space.index(o, bra, n);
      const int col = site == 1 ? space.index(ket, o, n) : space.index(o, ket, n);
      op.mat(row, col) = 1.0;
    }
  }
  op.hermitian_hint = (bra == ket);
  return op;
}

OperatorMatrix photon_annihilator(SpaceSpec space) {
  OperatorMatrix op = OperatorMatrix::zero(space);
  op.hermitian_hint = false;
  for (int l1 = 0; l1 < 4; ++l1) {
    for (int l2 = 0; l2 < 4; ++l2) {
      const auto a = static_cast<NVLevel>(l1);
      const auto b = static_cast<NVLevel>(l2);
      for (int n = 1; n <= space.n_max; ++n) {
        op.mat(space.index(a, b, n - 1), space.index(a, b, n)) = std::sqrt(double(n));
      }
    }
  }
  return op;
}

OperatorMatrix photon_number(SpaceSpec space) {
  OperatorMatrix op = OperatorMatrix::zero(space);
  for (int i = 0; i < space.dim(); ++i) {
    op.mat(i, i) = double(space.unindex(i).n);
  }
  return op;
}

OperatorMatrix level_projector(NVLevel l, SpaceSpec space) {
  OperatorMatrix op = OperatorMatrix::zero(space);
  for (int i = 0; i < space.dim(); ++i) {
    const auto lbl = space.unindex(i);
    if (lbl.nv1 == l || lbl.nv2 == l) op.mat(i, i) = 1.0;
  }
  return op;
}

namespace {
void require_hermitian(const OperatorMatrix& h, const char* who) {
  const double scale = std::max(1.0, h.mat.cwiseAbs().maxCoeff());
  if (h.hermiticity_defect() > 1e-10 * scale) {
    throw std::invalid_argument(std::string(who) + ": Hamiltonian is not Hermitian");
  }
}
}  // namespace

SpectralPropagator::SpectralPropagator(const OperatorMatrix& hamiltonian)
    : space_(hamiltonian.space) {
  require_hermitian(hamiltonian, "SpectralPropagator");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hamiltonian.mat);
  if (solver.info() != Eigen::Success) {
    throw std::invalid_argument("SpectralPropagator: eigendecomposition failed");
  }
  energies_ = solver.eigenvalues();
  vectors_ = solver.eigenvectors();
}

StateVector SpectralPropagator::evolve(const StateVector& psi0, double t) const {
  if (!(psi0.space == space_)) {
    throw std::invalid_argument("SpectralPropagator::evolve: space mismatch");
  }
  Vector coeffs = vectors_.adjoint() * psi0.amps;
  for (int k = 0; k < coeffs.size(); ++k) {
    coeffs(k) *= std::exp(Complex(0.0, -energies_(k) * t));
  }
  return StateVector{vectors_ * coeffs, space_};
}

Vector SpectralPropagator::frame(const StateVector& psi) const {
  if (!(psi.space == space_)) {
    throw std::invalid_argument("SpectralPropagator::frame: space mismatch");
  }
  return vectors_.adjoint() * psi.amps;
}

StateVector propagate_exact(const OperatorMatrix& hamiltonian, const StateVector& psi0,
                            double t) {
  return SpectralPropagator(hamiltonian).evolve(psi0, t);
}

Eigen::Matrix4cd partial_trace_to_qubits(const DensityMatrix& rho) {
  Eigen::Matrix4cd out = Eigen::Matrix4cd::Zero();
  const SpaceSpec& sp = rho.space;
  const NVLevel q[2] = {NVLevel::G, NVLevel::F};
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 2; ++d) {
          Complex sum = 0.0;
          for (int n = 0; n <= sp.n_max; ++n) {
            sum += rho.mat(sp.index(q[a], q[b], n), sp.index(q[c], q[d], n));
          }
          out(a * 2 + b, c * 2 + d) = sum;
        }
  return out;
}

Eigen::Matrix4cd partial_trace_to_qubits(const StateVector& psi) {
  Eigen::Matrix4cd out = Eigen::Matrix4cd::Zero();
  const SpaceSpec& sp = psi.space;
  const NVLevel q[2] = {NVLevel::G, NVLevel::F};
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 2; ++d) {
          Complex sum = 0.0;
          for (int n = 0; n <= sp.n_max; ++n) {
            sum += psi.amps(sp.index(q[a], q[b], n)) *
                   std::conj(psi.amps(sp.index(q[c], q[d], n)));
          }
          out(a * 2 + b, c * 2 + d) = sum;
        }
  return out;
}

}  // namespace zenoqed
