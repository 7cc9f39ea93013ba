#pragma once
// Propagation over piecewise-constant Hamiltonian schedules: closed-system
// evolution by exact spectral propagation, open-system evolution by an
// embedded Dormand-Prince 5(4) integrator on the density matrix.

#include "zenoqed/hamiltonians.hpp"

#include <map>
#include <vector>

namespace zenoqed {

struct Segment {
  OperatorMatrix hamiltonian;
  double duration;
};

struct Schedule {
  std::vector<Segment> segments;
  double sample_dt = 0.0;  // <= 0 selects total duration / 400

  double total_duration() const;
  double effective_sample_dt() const;
};

struct CollapseOp {
  OperatorMatrix op;
  double rate;
};

struct CollapseSet {
  std::vector<CollapseOp> ops;
  bool empty() const { return ops.empty(); }
};

struct Trajectory {
  std::vector<double> times;
  std::vector<StateVector> states;       // closed runs
  std::vector<DensityMatrix> densities;  // open runs (when stored)
  std::map<std::string, std::vector<double>> observables;

  const StateVector& final_state() const;
  const DensityMatrix& final_density() const;
};

struct LindbladOptions {
  double rel_tol = 1e-8;
  double abs_tol = 1e-10;
  bool store_densities = true;  // false keeps only the last sample
};

// Exact propagation segment by segment; samples on the sample_dt grid and at
// every segment boundary. Records the "norm" observable.
Trajectory evolve_schedule(const Schedule& schedule, const StateVector& psi0);

// One cavity operator a at rate kappa plus the four NV lowering operators
// sigma_fe, sigma_ge on each site, each at rate gamma. Zero-rate channels are
// omitted.
CollapseSet build_collapse_set(const SystemParams& p);

// d rho/dt = -i[H, rho] + sum_k r_k (L_k rho L_k^dag - {L_k^dag L_k, rho}/2).
// The integration runs on the subspace actually reachable from rho0 under the
// schedule Hamiltonians and collapse operators (an exact, deterministic
// restriction found by support closure on the canonical basis); results are
// identical to full-space integration. Records the "trace" observable.
// Throws std::invalid_argument on a non-physical rho0 and std::runtime_error
// when step control cannot satisfy the tolerances.
Trajectory lindblad_evolve(const Schedule& schedule, const CollapseSet& collapse,
                           const DensityMatrix& rho0, const LindbladOptions& options = {});

// Population |<basis_index|state>|^2 (or <basis_index|rho|basis_index>)
// along a trajectory.
std::vector<double> population_series(const Trajectory& traj, int basis_index);

}  // namespace zenoqed
