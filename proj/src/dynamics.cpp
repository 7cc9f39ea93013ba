#include "zenoqed/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace zenoqed {

namespace {
using enum NVLevel;

// Sample grid: multiples of dt across the whole schedule plus every segment
// boundary, deduplicated.
std::vector<double> sample_times(const Schedule& schedule) {
  const double total = schedule.total_duration();
  const double dt = schedule.effective_sample_dt();
  std::vector<double> times;
  const int n = static_cast<int>(std::floor(total / dt * (1.0 + 1e-12)));
  times.reserve(n + schedule.segments.size() + 2);
  for (int k = 0; k <= n; ++k) times.push_back(k * dt);
  double boundary = 0.0;
  for (const Segment& seg : schedule.segments) {
    boundary += seg.duration;
    times.push_back(std::min(boundary, total));
  }
  std::sort(times.begin(), times.end());
  const double tol = 1e-9 * std::max(1.0, total);
  times.erase(std::unique(times.begin(), times.end(),
                          [tol](double a, double b) { return std::abs(a - b) <= tol; }),
              times.end());
  return times;
}

void validate_schedule(const Schedule& schedule, SpaceSpec space) {
  if (schedule.segments.empty()) {
    throw std::invalid_argument("Schedule: no segments");
  }
  for (const Segment& seg : schedule.segments) {
    if (seg.duration <= 0.0) throw std::invalid_argument("Schedule: non-positive duration");
    if (!(seg.hamiltonian.space == space)) {
      throw std::invalid_argument("Schedule: segment space mismatch");
    }
  }
}
}  // namespace

double Schedule::total_duration() const {
  double total = 0.0;
  for (const Segment& seg : segments) total += seg.duration;
  return total;
}

double Schedule::effective_sample_dt() const {
  if (sample_dt > 0.0) return sample_dt;
  return total_duration() / 400.0;
}

const StateVector& Trajectory::final_state() const {
  if (states.empty()) throw std::logic_error("Trajectory: no states stored");
  return states.back();
}

const DensityMatrix& Trajectory::final_density() const {
  if (densities.empty()) throw std::logic_error("Trajectory: no densities stored");
  return densities.back();
}

Trajectory evolve_schedule(const Schedule& schedule, const StateVector& psi0) {
  validate_schedule(schedule, psi0.space);
  if (std::abs(psi0.norm() - 1.0) > 1e-9) {
    throw std::invalid_argument("evolve_schedule: psi0 is not normalized");
  }

  const std::vector<double> times = sample_times(schedule);
  Trajectory traj;
  traj.times = times;
  traj.states.reserve(times.size());
  std::vector<double>& norms = traj.observables["norm"];

  StateVector seg_start = psi0;
  double t0 = 0.0;
  size_t cursor = 0;
  for (size_t s = 0; s < schedule.segments.size(); ++s) {
    const Segment& seg = schedule.segments[s];
    const double t1 = t0 + seg.duration;
    const SpectralPropagator prop(seg.hamiltonian);
    const bool last = s + 1 == schedule.segments.size();
    const double tol = 1e-9 * std::max(1.0, schedule.total_duration());
    while (cursor < times.size() && (times[cursor] <= t1 + tol || last)) {
      const StateVector sampled = prop.evolve(seg_start, times[cursor] - t0);
      norms.push_back(sampled.norm());
      traj.states.push_back(sampled);
      ++cursor;
    }
    seg_start = prop.evolve(seg_start, seg.duration);
    t0 = t1;
  }
  return traj;
}

CollapseSet build_collapse_set(const SystemParams& p) {
  p.validate();
  const SpaceSpec sp = p.space();
  CollapseSet set;
  if (p.kappa > 0.0) {
    set.ops.push_back({photon_annihilator(sp), p.kappa});
  }
  if (p.gamma > 0.0) {
    for (int site = 1; site <= 2; ++site) {
      set.ops.push_back({lift_nv_operator(site, F, E, sp), p.gamma});
      set.ops.push_back({lift_nv_operator(site, G, E, sp), p.gamma});
    }
  }
  return set;
}

namespace {

// Indices reachable from `seed` under repeated application of the given
// operators (column -> nonzero rows). Exact pattern closure, no thresholds.
std::vector<int> support_closure(const std::vector<const Matrix*>& ops,
                                 std::vector<char> in_set) {
  const int dim = static_cast<int>(in_set.size());
  std::vector<int> work;
  for (int i = 0; i < dim; ++i) {
    if (in_set[i]) work.push_back(i);
  }
  while (!work.empty()) {
    const int col = work.back();
    work.pop_back();
    for (const Matrix* op : ops) {
      for (int row = 0; row < dim; ++row) {
        if (!in_set[row] && (*op)(row, col) != 0.0) {
          in_set[row] = 1;
          work.push_back(row);
        }
      }
    }
  }
  std::vector<int> support;
  for (int i = 0; i < dim; ++i) {
    if (in_set[i]) support.push_back(i);
  }
  return support;
}

Matrix restrict_to(const Matrix& m, const std::vector<int>& s) {
  Matrix out(s.size(), s.size());
  for (size_t r = 0; r < s.size(); ++r)
    for (size_t c = 0; c < s.size(); ++c) out(r, c) = m(s[r], s[c]);
  return out;
}

// Right-hand side of the master equation on the compressed subspace, written
// with the non-Hermitian drift G = -iH - (1/2) sum_k r_k L_k^dag L_k:
//   d rho/dt = G rho + rho G^dag + sum_k (sqrt(r_k) L_k) rho (sqrt(r_k) L_k)^dag
struct MasterRhs {
  Matrix drift;
  std::vector<Matrix> jumps;  // sqrt(rate) * L
  mutable Matrix scratch;

  void operator()(const Matrix& y, Matrix& dydt) const {
    dydt.noalias() = drift * y;
    dydt.noalias() += y * drift.adjoint();
    for (const Matrix& l : jumps) {
      scratch.noalias() = l * y;
      dydt.noalias() += scratch * l.adjoint();
    }
  }
};

// Dormand-Prince 5(4) with FSAL, stepping a density matrix between the
// requested sample times.
class Dp54 {
 public:
  Dp54(const MasterRhs& rhs, const LindbladOptions& opt, int n)
      : rhs_(rhs), opt_(opt) {
    for (Matrix& k : k_) k.resize(n, n);
    ytmp_.resize(n, n);
    err_.resize(n, n);
  }

  // Advances y from t to t_end. Throws std::runtime_error when the step size
  // underflows.
  void advance(Matrix& y, double t, double t_end, double& h) {
    int consecutive_rejects = 0;
    bool have_k1 = false;
    while (t < t_end) {
      if (!have_k1) {
        rhs_(y, k_[0]);
        have_k1 = true;
      }
      const double remaining = t_end - t;
      const bool capped = h >= remaining;
      const double h_try = capped ? remaining : h;

      const double err = stage(y, h_try);
      if (err <= 1.0) {
        y = ytmp_;
        k_[0] = k_[6];  // FSAL
        t = capped ? t_end : t + h_try;
        consecutive_rejects = 0;
        const double grow = 0.9 * std::pow(std::max(err, 1e-10), -0.2);
        if (!capped) {
          h = h_try * std::clamp(grow, 0.2, 5.0);
        } else {
          h = std::max(h, h_try * std::clamp(grow, 0.2, 5.0));
        }
      } else {
        const double shrink = std::max(0.2, 0.9 * std::pow(err, -0.2));
        h = h_try * shrink;
        if (++consecutive_rejects > 60 || h < 1e-13 * std::max(1.0, std::abs(t_end))) {
          throw std::runtime_error(
              "lindblad_evolve: step control failed to meet tolerances");
        }
      }
    }
  }

 private:
  // One trial step of size h from y; fills ytmp_ (5th order result), k_[6]
  // (FSAL slope) and returns the scaled error norm.
  double stage(const Matrix& y, double h) {
    auto axpy = [&](std::initializer_list<std::pair<double, int>> terms) {
      ytmp_ = y;
      for (const auto& [coef, idx] : terms) ytmp_.noalias() += (h * coef) * k_[idx];
    };

    axpy({{1.0 / 5, 0}});
    rhs_(ytmp_, k_[1]);
    axpy({{3.0 / 40, 0}, {9.0 / 40, 1}});
    rhs_(ytmp_, k_[2]);
    axpy({{44.0 / 45, 0}, {-56.0 / 15, 1}, {32.0 / 9, 2}});
    rhs_(ytmp_, k_[3]);
    axpy({{19372.0 / 6561, 0}, {-25360.0 / 2187, 1}, {64448.0 / 6561, 2}, {-212.0 / 729, 3}});
    rhs_(ytmp_, k_[4]);
    axpy({{9017.0 / 3168, 0},
          {-355.0 / 33, 1},
          {46732.0 / 5247, 2},
          {49.0 / 176, 3},
          {-5103.0 / 18656, 4}});
    rhs_(ytmp_, k_[5]);
    axpy({{35.0 / 384, 0}, {500.0 / 1113, 2}, {125.0 / 192, 3},
          {-2187.0 / 6784, 4}, {11.0 / 84, 5}});
    rhs_(ytmp_, k_[6]);

    err_ = (h * 71.0 / 57600) * k_[0];
    err_.noalias() += (h * -71.0 / 16695) * k_[2];
    err_.noalias() += (h * 71.0 / 1920) * k_[3];
    err_.noalias() += (h * -17253.0 / 339200) * k_[4];
    err_.noalias() += (h * 22.0 / 525) * k_[5];
    err_.noalias() += (h * -1.0 / 40) * k_[6];

    double acc = 0.0;
    const auto* yp = y.data();
    const auto* np = ytmp_.data();
    const auto* ep = err_.data();
    const Eigen::Index m = y.size();
    for (Eigen::Index i = 0; i < m; ++i) {
      const double scale =
          opt_.abs_tol + opt_.rel_tol * std::max(std::abs(yp[i]), std::abs(np[i]));
      const double r = std::abs(ep[i]) / scale;
      acc += r * r;
    }
    return std::sqrt(acc / double(m));
  }

  const MasterRhs& rhs_;
  const LindbladOptions& opt_;
  Matrix k_[7];
  Matrix ytmp_;
  Matrix err_;
};

void validate_density(const DensityMatrix& rho) {
  if (rho.hermiticity_defect() > 1e-9) {
    throw std::invalid_argument("lindblad_evolve: rho0 is not Hermitian");
  }
  if (std::abs(rho.trace_real() - 1.0) > 1e-8) {
    throw std::invalid_argument("lindblad_evolve: rho0 trace is not 1");
  }
  if (rho.min_eigenvalue() < -1e-8) {
    throw std::invalid_argument("lindblad_evolve: rho0 is not positive semidefinite");
  }
}

}  // namespace

Trajectory lindblad_evolve(const Schedule& schedule, const CollapseSet& collapse,
                           const DensityMatrix& rho0, const LindbladOptions& options) {
  validate_schedule(schedule, rho0.space);
  validate_density(rho0);
  for (const CollapseOp& c : collapse.ops) {
    if (!(c.op.space == rho0.space)) {
      throw std::invalid_argument("lindblad_evolve: collapse operator space mismatch");
    }
    if (c.rate < 0.0) throw std::invalid_argument("lindblad_evolve: negative rate");
  }

  const int dim = rho0.space.dim();

  // Reachable support: seed on rho0, close under every segment Hamiltonian,
  // every L, and every L^dag L.
  std::vector<char> seed(dim, 0);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      if (rho0.mat(i, j) != 0.0) {
        seed[i] = 1;
        seed[j] = 1;
      }
    }
  }
  std::vector<Matrix> closure_ops;
  for (const Segment& seg : schedule.segments) closure_ops.push_back(seg.hamiltonian.mat);
  for (const CollapseOp& c : collapse.ops) {
    closure_ops.push_back(c.op.mat);
    closure_ops.push_back(c.op.mat.adjoint() * c.op.mat);
  }
  std::vector<const Matrix*> op_ptrs;
  for (const Matrix& m : closure_ops) op_ptrs.push_back(&m);
  const std::vector<int> support = support_closure(op_ptrs, std::move(seed));
  const int n = static_cast<int>(support.size());

  // Compressed collapse operators, shared across segments.
  std::vector<Matrix> jumps;
  for (const CollapseOp& c : collapse.ops) {
    jumps.push_back(std::sqrt(c.rate) * restrict_to(c.op.mat, support));
  }
  Matrix damping = Matrix::Zero(n, n);  // -(1/2) sum r L^dag L, compressed
  for (const Matrix& l : jumps) damping -= 0.5 * (l.adjoint() * l);

  const std::vector<double> times = sample_times(schedule);
  Trajectory traj;
  traj.times = times;
  std::vector<double>& traces = traj.observables["trace"];

  Matrix rho = restrict_to(rho0.mat, support);
  auto expand = [&](const Matrix& small) {
    Matrix full = Matrix::Zero(dim, dim);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) full(support[r], support[c]) = small(r, c);
    return DensityMatrix{std::move(full), rho0.space};
  };
  auto record = [&](const Matrix& small) {
    traces.push_back(small.trace().real());
    if (options.store_densities) {
      traj.densities.push_back(expand(small));
    }
  };

  const double total = schedule.total_duration();
  const double tol = 1e-9 * std::max(1.0, total);
  size_t cursor = 0;
  if (!times.empty() && times[0] <= tol) {
    record(rho);
    cursor = 1;
  }

  double t0 = 0.0;
  for (size_t s = 0; s < schedule.segments.size(); ++s) {
    const Segment& seg = schedule.segments[s];
    const double t1 = t0 + seg.duration;
    MasterRhs rhs;
    rhs.drift = Complex(0.0, -1.0) * restrict_to(seg.hamiltonian.mat, support) + damping;
    rhs.jumps = jumps;
    rhs.scratch.resize(n, n);
    Dp54 stepper(rhs, options, n);

    const double drift_scale = std::max(1.0, rhs.drift.cwiseAbs().rowwise().sum().maxCoeff());
    double h = std::min(seg.duration, 0.1 / drift_scale);

    const bool last = s + 1 == schedule.segments.size();
    double t = t0;
    while (cursor < times.size() && (times[cursor] <= t1 + tol || last)) {
      const double target = std::min(times[cursor], t1);
      if (target > t) stepper.advance(rho, t, target, h);
      t = target;
      record(rho);
      ++cursor;
    }
    if (t < t1) {
      stepper.advance(rho, t, t1, h);
    }
    t0 = t1;
  }

  if (!options.store_densities) {
    traj.densities.push_back(expand(rho));
  }
  return traj;
}

std::vector<double> population_series(const Trajectory& traj, int basis_index) {
  std::vector<double> series;
  if (!traj.states.empty()) {
    series.reserve(traj.states.size());
    for (const StateVector& s : traj.states) series.push_back(s.population(basis_index));
  } else {
    series.reserve(traj.densities.size());
    for (const DensityMatrix& rho : traj.densities) {
      series.push_back(rho.mat(basis_index, basis_index).real());
    }
  }
  return series;
}

}  // namespace zenoqed
