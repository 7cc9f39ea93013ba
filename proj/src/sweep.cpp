#include "zenoqed/sweep.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <stdexcept>

namespace zenoqed {

namespace {
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

using AxisSetter = std::function<void(SystemParams&, ProtocolSpec&, double)>;

const std::map<std::string, AxisSetter>& axis_setters() {
  static const std::map<std::string, AxisSetter> setters = {
      {"g", [](SystemParams& p, ProtocolSpec&, double v) { p.g1 = p.g2 = v; }},
      {"g1", [](SystemParams& p, ProtocolSpec&, double v) { p.g1 = v; }},
      {"g2", [](SystemParams& p, ProtocolSpec&, double v) { p.g2 = v; }},
      {"omega", [](SystemParams& p, ProtocolSpec&, double v) { p.omega1 = p.omega2 = v; }},
      {"omega1", [](SystemParams& p, ProtocolSpec&, double v) { p.omega1 = v; }},
      {"omega2", [](SystemParams& p, ProtocolSpec&, double v) { p.omega2 = v; }},
      {"phi1", [](SystemParams& p, ProtocolSpec&, double v) { p.phi1 = v; }},
      {"phi2", [](SystemParams& p, ProtocolSpec&, double v) { p.phi2 = v; }},
      {"delta", [](SystemParams& p, ProtocolSpec&, double v) { p.delta = v; }},
      {"kappa", [](SystemParams& p, ProtocolSpec&, double v) { p.kappa = v; }},
      {"gamma", [](SystemParams& p, ProtocolSpec&, double v) { p.gamma = v; }},
      {"lambda",
       [](SystemParams& p, ProtocolSpec&, double v) {
         const double omega_sq = v * p.delta;
         if (omega_sq < 0.0) {
           throw std::invalid_argument("lambda axis: lambda and delta disagree in sign");
         }
         p.omega1 = p.omega2 = std::sqrt(omega_sq);
       }},
      {"r", [](SystemParams&, ProtocolSpec& pr, double v) { pr.r = v; }},
      {"t", [](SystemParams&, ProtocolSpec& pr, double v) { pr.t = v; }},
      {"delta_t_frac", [](SystemParams&, ProtocolSpec& pr, double v) { pr.delta_t_frac = v; }},
      {"alpha", [](SystemParams&, ProtocolSpec& pr, double v) { pr.alpha = v; }},
      {"beta", [](SystemParams&, ProtocolSpec& pr, double v) { pr.beta = v; }},
  };
  return setters;
}
}  // namespace

std::vector<double> AxisSpec::values() const {
  if (count < 2) throw std::invalid_argument("AxisSpec: count must be >= 2");
  if (!std::isfinite(min) || !std::isfinite(max)) {
    throw std::invalid_argument("AxisSpec: range must be finite");
  }
  std::vector<double> vals(count);
  if (log_scale) {
    if (min <= 0.0 || max <= 0.0) {
      throw std::invalid_argument("AxisSpec: log axis needs positive bounds");
    }
    const double lo = std::log(min), hi = std::log(max);
    for (int j = 0; j < count; ++j) {
      vals[j] = std::exp(lo + (hi - lo) * j / (count - 1));
    }
  } else {
    for (int j = 0; j < count; ++j) {
      vals[j] = min + (max - min) * j / (count - 1);
    }
  }
  vals.back() = max;  // endpoints exact
  return vals;
}

std::vector<std::string> known_axes() {
  std::vector<std::string> names;
  for (const auto& [name, setter] : axis_setters()) names.push_back(name);
  return names;
}

std::vector<std::string> metrics_for(const std::string& protocol) {
  if (protocol == "qst") return {"fidelity", "optimal_fidelity", "optimal_time", "t_prime"};
  if (protocol == "cpg") return {"fidelity", "duration", "fi_residual_phase"};
  if (protocol == "concurrence") return {"concurrence", "tangle", "trace_deficit"};
  if (protocol == "compare") return {"max_deviation"};
  throw std::invalid_argument("unknown protocol '" + protocol + "'");
}

void SweepSpec::validate() const {
  if (axes.empty() || axes.size() > 2) {
    throw std::invalid_argument("SweepSpec: need 1 or 2 axes");
  }
  for (const AxisSpec& axis : axes) {
    if (!axis_setters().count(axis.name)) {
      throw std::invalid_argument("SweepSpec: unresolvable axis name '" + axis.name + "'");
    }
    axis.values();  // validates range and count
  }
  const std::vector<std::string> allowed = metrics_for(protocol.name);
  for (const std::string& m : effective_metrics()) {
    if (std::find(allowed.begin(), allowed.end(), m) == allowed.end()) {
      throw std::invalid_argument("SweepSpec: metric '" + m + "' not provided by protocol '" +
                                  protocol.name + "'");
    }
  }
}

std::vector<std::string> SweepSpec::effective_metrics() const {
  if (!metrics.empty()) return metrics;
  if (protocol.name == "qst") return {"fidelity", "optimal_fidelity"};
  if (protocol.name == "cpg") return {"fidelity"};
  if (protocol.name == "concurrence") return {"concurrence", "tangle"};
  if (protocol.name == "compare") return {"max_deviation"};
  throw std::invalid_argument("unknown protocol '" + protocol.name + "'");
}

namespace {

std::map<std::string, double> evaluate_protocol(const SystemParams& params,
                                                const ProtocolSpec& pr) {
  std::map<std::string, double> out;
  if (pr.name == "qst") {
    QstSpec spec{params, pr.alpha, pr.beta, pr.model,
                 std::pair{pr.window_lo, pr.window_hi}};
    const GateReport rep = qst_run(spec);
    out["fidelity"] = rep.fidelity;
    out["optimal_fidelity"] = rep.optimal_fidelity.value_or(kNan);
    out["optimal_time"] = rep.optimal_time.value_or(kNan);
    out["t_prime"] = rep.t_prime;
  } else if (pr.name == "cpg") {
    CpgSpec spec;
    spec.params = params;
    spec.delta_t_frac = pr.delta_t_frac;
    spec.model = pr.model;
    spec.compensate = pr.compensate;
    spec.with_truth_table = false;
    const GateReport rep = cpg_run(spec);
    out["fidelity"] = rep.fidelity;
    out["duration"] = rep.duration;
    out["fi_residual_phase"] = rep.fi_residual_phase.value_or(kNan);
  } else if (pr.name == "concurrence") {
    const double lambda = params.lambda();
    const EntanglementParams ep = EntanglementParams::from_ratio(pr.r, lambda);
    // At t = 0 the closed-form and simulated states coincide; avoid asking the
    // open integrator for a zero-length run.
    ModelChoice model = pr.model;
    std::vector<double> grid;
    if (model == ModelChoice::FullOpen && pr.t > 0.0) {
      grid = {0.0, pr.t};
    } else {
      if (model == ModelChoice::FullOpen) model = ModelChoice::FullClosed;
      grid = {pr.t};
    }
    const ConcurrenceSeries series = entanglement_run(params, ep, grid, model);
    out["concurrence"] = series.wootters.back();
    out["tangle"] = series.tangle.back();
    out["trace_deficit"] = series.trace_deficit.back();
  } else if (pr.name == "compare") {
    const CompareResult res = compare_hamiltonians(params, pr.t_end);
    out["max_deviation"] = res.max_deviation;
  } else {
    throw std::invalid_argument("unknown protocol '" + pr.name + "'");
  }
  return out;
}

SweepRow evaluate_point(const SweepSpec& spec, const std::vector<double>& axis_values,
                        const std::vector<std::string>& metric_names) {
  SweepRow row;
  row.axis_values = axis_values;
  row.metric_values.assign(metric_names.size(), kNan);
  try {
    SystemParams params = spec.base;
    ProtocolSpec pr = spec.protocol;
    for (size_t a = 0; a < spec.axes.size(); ++a) {
      axis_setters().at(spec.axes[a].name)(params, pr, axis_values[a]);
    }
    const std::map<std::string, double> metrics = evaluate_protocol(params, pr);
    for (size_t m = 0; m < metric_names.size(); ++m) {
      row.metric_values[m] = metrics.at(metric_names[m]);
    }
  } catch (const std::invalid_argument&) {
    row.status = "err_invalid_point";
  } catch (const std::runtime_error&) {
    row.status = "err_numerical";
  } catch (...) {
    row.status = "err_unknown";
  }
  return row;
}

}  // namespace

SweepResult run_sweep(const SweepSpec& spec, ExecMode mode, int workers) {
  spec.validate();
  SweepResult result;
  result.spec = spec;
  result.metric_names = spec.effective_metrics();

  std::vector<std::vector<double>> axis_values;
  long long n_rows = 1;
  for (const AxisSpec& axis : spec.axes) {
    axis_values.push_back(axis.values());
    n_rows *= axis_values.back().size();
  }
  result.rows.resize(n_rows);

  auto point_values = [&](long long idx) {
    std::vector<double> vals(spec.axes.size());
    long long rem = idx;
    for (int a = static_cast<int>(spec.axes.size()) - 1; a >= 0; --a) {
      const long long n = axis_values[a].size();
      vals[a] = axis_values[a][rem % n];
      rem /= n;
    }
    return vals;
  };

  if (mode == ExecMode::Serial) {
    for (long long i = 0; i < n_rows; ++i) {
      result.rows[i] = evaluate_point(spec, point_values(i), result.metric_names);
    }
  } else {
    const int threads = workers > 0 ? workers : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (long long i = 0; i < n_rows; ++i) {
      result.rows[i] = evaluate_point(spec, point_values(i), result.metric_names);
    }
  }
  return result;
}

namespace {
SystemParams operating_point() {
  SystemParams p;
  p.g1 = p.g2 = 1.0;
  p.omega1 = p.omega2 = 0.05;
  p.delta = 0.5;
  return p;
}
}  // namespace

std::vector<std::string> known_figures() {
  return {"fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "fig8"};
}

SweepSpec figure_recipe(const std::string& id) {
  SweepSpec spec;
  spec.base = operating_point();

  if (id == "fig2") {
    // Both published comparison settings sit on the diagonal of this 2x2 grid.
    spec.axes = {{"omega", 0.05, 0.01, 2}, {"delta", 0.5, 0.2, 2}};
    spec.protocol.name = "compare";
    spec.metrics = {"max_deviation"};
  } else if (id == "fig3") {
    spec.axes = {{"delta", 0.4, 0.6, 21}, {"omega", 0.04, 0.06, 21}};
    spec.protocol.name = "qst";
    spec.protocol.model = ModelChoice::FullClosed;
    spec.metrics = {"fidelity", "optimal_fidelity"};
  } else if (id == "fig4") {
    spec.axes = {{"gamma", 0.0, 0.01, 11}, {"kappa", 0.0, 0.2, 11}};
    spec.protocol.name = "qst";
    spec.protocol.model = ModelChoice::FullOpen;
    spec.metrics = {"fidelity"};
  } else if (id == "fig5") {
    spec.axes = {{"delta_t_frac", -0.1, 0.1, 41}};
    spec.protocol.name = "cpg";
    spec.protocol.model = ModelChoice::FullClosed;
    spec.metrics = {"fidelity"};
  } else if (id == "fig6") {
    spec.axes = {{"gamma", 0.0, 0.01, 11}, {"kappa", 0.0, 0.2, 11}};
    spec.protocol.name = "cpg";
    spec.protocol.model = ModelChoice::FullOpen;
    spec.metrics = {"fidelity"};
  } else if (id == "fig7") {
    const double t_max = 4.0 * std::numbers::pi / spec.base.lambda();
    spec.axes = {{"r", 0.05, 3.0, 25}, {"t", 0.0, t_max, 400}};
    spec.protocol.name = "concurrence";
    spec.protocol.model = ModelChoice::Effective;
    spec.metrics = {"concurrence", "tangle"};
  } else if (id == "fig8") {
    const double t_max = 4.0 * std::numbers::pi / 0.01;
    spec.axes = {{"lambda", 0.001, 0.05, 25}, {"t", 0.0, t_max, 400}};
    spec.protocol.name = "concurrence";
    spec.protocol.model = ModelChoice::Effective;
    spec.protocol.r = 1.0 / 3.0;
    spec.metrics = {"concurrence", "tangle"};
  } else {
    throw std::invalid_argument("unknown figure id '" + id + "'");
  }
  return spec;
}

}  // namespace zenoqed
