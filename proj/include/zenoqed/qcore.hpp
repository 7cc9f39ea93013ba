#pragma once
// Composite Hilbert space for two four-level NV centers sharing one cavity
// mode, plus the operator algebra everything else is built from.
//
// Basis ordering is fixed and serialized data depends on it:
//   index(nv1, nv2, n) = (code(nv1)*4 + code(nv2)) * (n_max + 1) + n
// with level codes G=0, F=1, E=2, I=3 and photon numbers n = 0..n_max.

#include <Eigen/Dense>

#include <complex>

namespace zenoqed {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Ground qubit levels g/f, optical excited level e, uncoupled ancilla i.
enum class NVLevel : int { G = 0, F = 1, E = 2, I = 3 };

constexpr int level_code(NVLevel l) { return static_cast<int>(l); }

struct SpaceSpec {
  int n_max = 1;  // photon truncation, n = 0..n_max

  int fock_dim() const { return n_max + 1; }
  int dim() const { return 16 * (n_max + 1); }

  // Throws std::out_of_range when n is outside [0, n_max].
  int index(NVLevel nv1, NVLevel nv2, int n) const;

  struct Label {
    NVLevel nv1;
    NVLevel nv2;
    int n;
  };
  Label unindex(int idx) const;

  bool operator==(const SpaceSpec&) const = default;
};

struct StateVector {
  Vector amps;
  SpaceSpec space;

  static StateVector zero(SpaceSpec space);
  static StateVector basis(NVLevel nv1, NVLevel nv2, int n, SpaceSpec space);

  double norm() const { return amps.norm(); }
  StateVector& normalize();
  Complex overlap(const StateVector& other) const;  // <this|other>
  double population(int basis_index) const;
};

struct OperatorMatrix {
  Matrix mat;
  SpaceSpec space;
  bool hermitian_hint = false;

  static OperatorMatrix zero(SpaceSpec space);
  static OperatorMatrix identity(SpaceSpec space);

  OperatorMatrix adjoint() const;
  StateVector apply(const StateVector& psi) const;
  double hermiticity_defect() const;  // max_ij |A - A^dagger|
};

OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b);
OperatorMatrix operator+(const OperatorMatrix& a, const OperatorMatrix& b);
OperatorMatrix operator*(Complex c, const OperatorMatrix& a);

struct DensityMatrix {
  Matrix mat;
  SpaceSpec space;

  static DensityMatrix pure(const StateVector& psi);

  double trace_real() const;
  double hermiticity_defect() const;
  double min_eigenvalue() const;
};

// |bra><ket| on the named NV site (1 or 2), identity on the other tensor
// factors.
OperatorMatrix lift_nv_operator(int site, NVLevel bra, NVLevel ket, SpaceSpec space);

// a|..., n> = sqrt(n) |..., n-1>
OperatorMatrix photon_annihilator(SpaceSpec space);

// a^dagger a
OperatorMatrix photon_number(SpaceSpec space);

// Projector onto "either NV occupies level l".
OperatorMatrix level_projector(NVLevel l, SpaceSpec space);

// Cached Hermitian eigendecomposition of one Hamiltonian; evaluates
// exp(-iHt)|psi> without step-size error for any t.
class SpectralPropagator {
 public:
  // Throws std::invalid_argument when H is not Hermitian.
  explicit SpectralPropagator(const OperatorMatrix& hamiltonian);

  StateVector evolve(const StateVector& psi0, double t) const;

  // Overlap scans: with c = frame(psi0) and w = frame(target),
  //   <target|psi(t)> = sum_k conj(w_k) exp(-i E_k t) c_k
  // which makes fidelity-vs-time sweeps O(D) per sample.
  Vector frame(const StateVector& psi) const;
  const Eigen::VectorXd& energies() const { return energies_; }
  const SpaceSpec& space() const { return space_; }

 private:
  Eigen::VectorXd energies_;
  Matrix vectors_;
  SpaceSpec space_;
};

StateVector propagate_exact(const OperatorMatrix& hamiltonian, const StateVector& psi0,
                            double t);

// Trace out the cavity mode and keep the {G, F} block of both NVs.
// Result is 4x4 over the ordered basis {|gg>, |gf>, |fg>, |ff>}; the trace
// falls short of the input trace by exactly the population outside the
// qubit levels.
Eigen::Matrix4cd partial_trace_to_qubits(const DensityMatrix& rho);
Eigen::Matrix4cd partial_trace_to_qubits(const StateVector& psi);

}  // namespace zenoqed
