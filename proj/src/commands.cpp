#include "zenoqed/commands.hpp"

#include "zenoqed/version.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

namespace zenoqed {

namespace {

OrderedJson base_provenance(const RunConfig& cfg, const std::string& command) {
  OrderedJson j;
  j["tool"] = kToolName;
  j["version"] = kVersion;
  j["run_id"] = cfg.output.run_id;
  j["command"] = command;
  j["model"] = model_name(cfg.protocol.model);
  j["params"] = params_to_json(cfg.params);
  if (cfg.g_ghz) j["g_GHz"] = *cfg.g_ghz;
  return j;
}

void attach_notes(CommandResult& result) {
  if (!result.notes.empty()) result.table.provenance["notes"] = result.notes;
}

void add_zeno_warnings(CommandResult& result, const SystemParams& p) {
  for (const std::string& w : p.zeno_warnings()) result.notes.push_back("warning: " + w);
}

std::vector<double> linspace(double lo, double hi, int count) {
  std::vector<double> out(count);
  for (int k = 0; k < count; ++k) out[k] = lo + (hi - lo) * k / (count - 1);
  return out;
}

}  // namespace

CommandResult run_qst_command(const RunConfig& cfg) {
  CommandResult result;
  add_zeno_warnings(result, cfg.params);

  QstSpec spec;
  spec.params = cfg.params;
  spec.alpha = cfg.protocol.alpha;
  spec.beta = cfg.protocol.beta;
  spec.model = cfg.protocol.model;
  spec.time_window = std::pair{cfg.protocol.window_lo, cfg.protocol.window_hi};
  const GateReport rep = qst_run(spec);

  ResultTable& table = result.table;
  table.columns = {"fidelity", "optimal_fidelity", "optimal_time", "t_prime", "duration"};
  std::vector<double> row = {rep.fidelity, rep.optimal_fidelity.value_or(NAN),
                             rep.optimal_time.value_or(NAN), rep.t_prime, rep.duration};
  if (cfg.g_ghz) {
    const double to_ns = cfg.time_to_ns();
    table.columns.push_back("transfer_time_ns");
    table.columns.push_back("two_step_period_ns");
    row.push_back(rep.t_prime * to_ns);
    row.push_back(2.0 * rep.t_prime * to_ns);
    result.notes.push_back(
        "timing note: the one-way transfer takes ~" +
        std::to_string(rep.t_prime * to_ns) + " ns while the two-step gate period is ~" +
        std::to_string(2.0 * rep.t_prime * to_ns) +
        " ns; quoted operation times may refer to either");
  }
  table.rows.push_back(std::move(row));
  table.provenance = base_provenance(cfg, "qst");
  table.provenance["alpha"] = {spec.alpha.real(), spec.alpha.imag()};
  table.provenance["beta"] = {spec.beta.real(), spec.beta.imag()};
  attach_notes(result);
  return result;
}

CommandResult run_cpg_command(const RunConfig& cfg) {
  CommandResult result;
  add_zeno_warnings(result, cfg.params);
  result.notes.push_back(
      "cpg fidelity is <ideal|rho|ideal> on the uniform logical superposition "
      "(-|fg>+|fi>+|ig>+|ii>)/2");

  CpgSpec spec;
  spec.params = cfg.params;
  spec.delta_t_frac = cfg.protocol.delta_t_frac;
  spec.model = cfg.protocol.model;
  spec.compensate = cfg.protocol.compensate;
  const GateReport rep = cpg_run(spec);

  ResultTable& table = result.table;
  table.columns = {"fidelity", "duration", "t_prime", "fi_residual_phase"};
  std::vector<double> row = {rep.fidelity, rep.duration, rep.t_prime,
                             rep.fi_residual_phase.value_or(NAN)};
  static const char* names[4] = {"fg", "fi", "ig", "ii"};
  for (int k = 0; k < 4; ++k) {
    table.columns.push_back(std::string("truth_") + names[k] + "_re");
    table.columns.push_back(std::string("truth_") + names[k] + "_im");
    row.push_back((*rep.truth_table)[k].real());
    row.push_back((*rep.truth_table)[k].imag());
  }
  if (cfg.g_ghz) {
    const double to_ns = cfg.time_to_ns();
    table.columns.push_back("gate_time_ns");
    row.push_back(rep.duration * to_ns);
  }
  table.rows.push_back(std::move(row));
  table.provenance = base_provenance(cfg, "cpg");
  table.provenance["delta_t_frac"] = spec.delta_t_frac;
  table.provenance["compensate"] = spec.compensate;
  attach_notes(result);
  return result;
}

CommandResult run_concurrence_command(const RunConfig& cfg) {
  CommandResult result;
  add_zeno_warnings(result, cfg.params);

  const double lambda = cfg.params.lambda();
  const EntanglementParams ep =
      EntanglementParams::from_weights(cfg.protocol.alpha, cfg.protocol.beta, lambda);
  const double period = 2.0 * std::numbers::pi / std::abs(lambda);
  const double t_max = cfg.t_max > 0.0 ? cfg.t_max : 2.0 * period;
  const std::vector<double> grid = linspace(0.0, t_max, cfg.t_count);

  const ConcurrenceSeries series =
      entanglement_run(cfg.params, ep, grid, cfg.protocol.model);

  ResultTable& table = result.table;
  table.columns = {"t", "concurrence", "tangle", "trace_deficit"};
  bool any_bad = false;
  for (size_t k = 0; k < series.times.size(); ++k) {
    table.rows.push_back(
        {series.times[k], series.wootters[k], series.tangle[k], series.trace_deficit[k]});
    if (!series.ok[k]) any_bad = true;
  }
  if (any_bad) {
    table.status.resize(series.times.size());
    for (size_t k = 0; k < series.times.size(); ++k) {
      table.status[k] = series.ok[k] ? "ok" : "err_leakage";
    }
    result.notes.push_back("warning: some samples leaked more than 1e-3 outside the qubit "
                           "space; their concurrences are reported as nan");
  }
  table.provenance = base_provenance(cfg, "concurrence");
  table.provenance["lambda"] = lambda;
  table.provenance["alpha"] = {ep.alpha.real(), ep.alpha.imag()};
  table.provenance["beta"] = {ep.beta.real(), ep.beta.imag()};
  attach_notes(result);
  return result;
}

CommandResult run_compare_command(const RunConfig& cfg) {
  CommandResult result;
  add_zeno_warnings(result, cfg.params);

  const CompareResult res = compare_hamiltonians(cfg.params, cfg.protocol.t_end);
  ResultTable& table = result.table;
  table.columns = {"t", "p1_full", "p2_full", "p1_eff", "p2_eff", "abs_deviation"};
  for (size_t k = 0; k < res.times.size(); ++k) {
    const double dev = std::max(std::abs(res.p1_full[k] - res.p1_eff[k]),
                                std::abs(res.p2_full[k] - res.p2_eff[k]));
    table.rows.push_back(
        {res.times[k], res.p1_full[k], res.p2_full[k], res.p1_eff[k], res.p2_eff[k], dev});
  }
  result.notes.push_back("max population deviation full vs effective: " +
                         std::to_string(res.max_deviation));
  table.provenance = base_provenance(cfg, "compare");
  table.provenance["max_deviation"] = res.max_deviation;
  attach_notes(result);
  return result;
}

CommandResult run_sweep_command(const RunConfig& cfg, const std::string& figure,
                                ExecMode mode) {
  CommandResult result;

  SweepSpec spec;
  if (!figure.empty()) {
    spec = figure_recipe(figure);  // canonical preset; config axes ignored
  } else {
    if (cfg.axes.empty()) {
      throw ConfigError("sweep: no axes configured and no --figure given");
    }
    spec.base = cfg.params;
    spec.axes = cfg.axes;
    spec.protocol = cfg.protocol;
    spec.metrics = cfg.metrics;
  }
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("sweep: ") + e.what());
  }

  const SweepResult res = run_sweep(spec, mode, cfg.workers);

  ResultTable& table = result.table;
  for (const AxisSpec& axis : spec.axes) table.columns.push_back(axis.name);
  for (const std::string& m : res.metric_names) table.columns.push_back(m);
  table.status.reserve(res.rows.size());
  size_t n_err = 0;
  for (const SweepRow& row : res.rows) {
    std::vector<double> cells = row.axis_values;
    cells.insert(cells.end(), row.metric_values.begin(), row.metric_values.end());
    table.rows.push_back(std::move(cells));
    table.status.push_back(row.status);
    if (row.status != "ok") ++n_err;
  }
  if (n_err > 0) {
    result.notes.push_back("warning: " + std::to_string(n_err) +
                           " grid points failed; see status column");
  }
  table.provenance = base_provenance(cfg, "sweep");
  if (!figure.empty()) table.provenance["figure"] = figure;
  table.provenance["sweep_spec"] = sweep_spec_to_json(spec);
  table.provenance["exec_mode"] = mode == ExecMode::Parallel ? "parallel" : "serial";
  table.provenance["workers"] = cfg.workers;
  attach_notes(result);
  return result;
}

namespace {

struct Check {
  std::string name;
  bool passed;
  std::string detail;
};

void format_validate_report(const std::vector<Check>& checks, CommandResult& result) {
  int n_fail = 0;
  for (const Check& c : checks) {
    result.report.push_back((c.passed ? "PASS  " : "FAIL  ") + c.name +
                            (c.detail.empty() ? "" : "  (" + c.detail + ")"));
    if (!c.passed) ++n_fail;
  }
  result.report.push_back(std::to_string(checks.size() - n_fail) + "/" +
                          std::to_string(checks.size()) + " checks passed");
  result.exit_code = n_fail == 0 ? 0 : 1;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace

CommandResult run_validate_command(const RunConfig& cfg) {
  CommandResult result;
  std::vector<Check> checks;
  const SystemParams& p = cfg.params;
  const SpaceSpec sp = p.space();
  using enum NVLevel;

  {
    const OperatorMatrix h = build_full(p);
    const double defect = h.hermiticity_defect();
    checks.push_back({"full Hamiltonian Hermitian", defect <= 1e-12,
                      "defect " + fmt(defect)});
    const StateVector gg0 = StateVector::basis(G, G, 0, sp);
    const StateVector ii0 = StateVector::basis(I, I, 0, sp);
    checks.push_back({"H |gg0> = 0", h.apply(gg0).norm() <= 1e-12, ""});
    checks.push_back({"H |ii0> = 0", h.apply(ii0).norm() <= 1e-12, ""});
  }

  try {
    const ZenoEigensystem zs = zeno_eigensystem(p);
    SystemParams cavity_only = p;
    cavity_only.omega1 = cavity_only.omega2 = 0.0;
    cavity_only.delta = 0.0;
    const OperatorMatrix hc = build_full(cavity_only);
    double resid = 0.0;
    const StateVector* vecs[3] = {&zs.psi1, &zs.psi2, &zs.psi3};
    const double vals[3] = {zs.lambda1, zs.lambda2, zs.lambda3};
    for (int k = 0; k < 3; ++k) {
      Vector r = hc.mat * vecs[k]->amps - vals[k] * vecs[k]->amps;
      resid = std::max(resid, r.norm());
    }
    checks.push_back({"cavity eigenvalues {0, -sqrt2 g, +sqrt2 g} = {" + fmt(zs.lambda1) +
                          ", " + fmt(zs.lambda2) + ", " + fmt(zs.lambda3) + "}",
                      resid <= 1e-10, "residual " + fmt(resid)});
  } catch (const std::invalid_argument& e) {
    checks.push_back({"cavity eigensystem", false, e.what()});
  }

  try {
    const Eigen::Matrix2cd eff = build_effective(p);
    const Eigen::Matrix2cd elim = eliminate_excited_state(build_zeno_reduced(p));
    const double err = (eff - elim).cwiseAbs().maxCoeff();
    const double omega = p.omega1;
    const double bound = 5.0 * omega * omega * omega / (p.delta * p.delta);
    checks.push_back({"two-state model matches numerical elimination", err <= bound,
                      "err " + fmt(err) + " bound " + fmt(bound)});
  } catch (const std::invalid_argument& e) {
    checks.push_back({"two-state model matches numerical elimination", false, e.what()});
  }

  try {
    const FrequencyAudit audit = rotating_term_audit(p);
    const double bound = std::numbers::sqrt2 * p.g1 - std::abs(p.delta);
    checks.push_back({"discarded terms rotate at >= sqrt2 g - |Delta|",
                      audit.min_peak_frequency >= bound,
                      "min peak " + fmt(audit.min_peak_frequency) + " bound " + fmt(bound)});
  } catch (const std::invalid_argument& e) {
    checks.push_back({"rotating-term audit", false, e.what()});
  }

  {
    bool ok = true;
    std::string detail;
    const double lambda = p.delta != 0.0 ? p.lambda() : 0.005;
    for (double r : {0.5, 1.0, 2.0}) {
      const EntanglementParams ep = EntanglementParams::from_ratio(r, lambda);
      const double period = 2.0 * std::numbers::pi / std::abs(lambda);
      for (int j = 0; j < 33; ++j) {
        const double t = period * j / 32.0;
        const Eigen::Vector2cd amps = pair_state_amplitudes(ep, t);
        QubitRho q;
        q.rho = Eigen::Matrix4cd::Zero();
        q.rho(1, 1) = std::norm(amps(0));
        q.rho(1, 2) = amps(0) * std::conj(amps(1));
        q.rho(2, 1) = amps(1) * std::conj(amps(0));
        q.rho(2, 2) = std::norm(amps(1));
        const double w = concurrence_wootters(q);
        const double tg = tangle_from_entries(reduced_entries(ep, t));
        if (std::abs(tg - w * w) > 1e-9) {
          ok = false;
          detail = "tangle != wootters^2 at r=" + fmt(r) + " t=" + fmt(t);
        }
        if (r == 1.0 && std::abs(w - 1.0) > 1e-9) {
          ok = false;
          detail = "r=1 concurrence drifted from 1";
        }
      }
    }
    checks.push_back({"concurrence identities", ok, detail});
  }

  format_validate_report(checks, result);
  return result;
}

namespace {

void write_output(const CommandResult& result, const OutputOptions& opt, std::ostream& out,
                  std::ostream& err) {
  const std::string payload = opt.format == "json" ? to_json(result.table)
                                                   : to_csv(result.table, opt.precision);
  if (opt.destination == "-") {
    out << payload;
  } else {
    std::ofstream file(opt.destination, std::ios::binary);
    if (!file) throw ConfigError("cannot open output file '" + opt.destination + "'");
    file << payload;
  }
  for (const std::string& note : result.notes) err << note << "\n";
}

struct CliOverrides {
  std::string config_path;
  std::string model;
  std::string format;
  std::string out_path;
  std::string run_id;
  std::string figure;
  int workers = -1;
  int precision = -1;
  bool seedless = false;
  bool serial = false;
};

void add_common_options(CLI::App* sub, CliOverrides& ov) {
  sub->add_option("--config", ov.config_path, "run configuration file");
  sub->add_option("--model", ov.model, "effective | full | open");
  sub->add_option("--format", ov.format, "csv | json");
  sub->add_option("--out", ov.out_path, "output path ('-' = stdout)");
  sub->add_option("--workers", ov.workers, "worker threads for grid evaluation");
  sub->add_option("--precision", ov.precision, "significant digits in CSV output");
  sub->add_option("--run-id", ov.run_id, "provenance run id");
  sub->add_flag("--seedless", ov.seedless,
                "assert that the run consumes no randomness (always true here)");
}

RunConfig build_config(const CliOverrides& ov) {
  RunConfig cfg =
      ov.config_path.empty() ? default_config() : load_config_file(ov.config_path);
  if (!ov.model.empty()) {
    try {
      cfg.protocol.model = parse_model(ov.model);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  if (!ov.format.empty()) {
    if (ov.format != "csv" && ov.format != "json") {
      throw ConfigError("--format must be csv or json");
    }
    cfg.output.format = ov.format;
  }
  if (!ov.out_path.empty()) cfg.output.destination = ov.out_path;
  if (ov.workers >= 0) cfg.workers = ov.workers;
  if (ov.precision >= 0) {
    if (ov.precision < 6 || ov.precision > 17) {
      throw ConfigError("--precision must be in [6, 17]");
    }
    cfg.output.precision = ov.precision;
  }
  if (!ov.run_id.empty()) cfg.output.run_id = ov.run_id;
  return cfg;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{std::string(kToolName) +
               " - deterministic two-NV-qubit cavity dynamics simulator"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  CliOverrides ov;
  CLI::App* qst = app.add_subcommand("qst", "quantum state transfer run");
  CLI::App* cpg = app.add_subcommand("cpg", "conditional phase gate run");
  CLI::App* conc = app.add_subcommand("concurrence", "entanglement dynamics series");
  CLI::App* cmp = app.add_subcommand("compare", "full vs effective model populations");
  CLI::App* sweep = app.add_subcommand("sweep", "parameter grid evaluation");
  CLI::App* validate = app.add_subcommand("validate", "built-in invariant checks");
  for (CLI::App* sub : {qst, cpg, conc, cmp, sweep, validate}) {
    add_common_options(sub, ov);
  }
  sweep->add_option("--figure", ov.figure,
                    "study preset (fig2..fig8) instead of configured axes");
  sweep->add_flag("--serial", ov.serial, "use the serial reference executor");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    const RunConfig cfg = build_config(ov);
    CommandResult result;
    if (qst->parsed()) {
      result = run_qst_command(cfg);
    } else if (cpg->parsed()) {
      result = run_cpg_command(cfg);
    } else if (conc->parsed()) {
      result = run_concurrence_command(cfg);
    } else if (cmp->parsed()) {
      result = run_compare_command(cfg);
    } else if (sweep->parsed()) {
      result = run_sweep_command(cfg, ov.figure,
                                 ov.serial ? ExecMode::Serial : ExecMode::Parallel);
    } else if (validate->parsed()) {
      result = run_validate_command(cfg);
      for (const std::string& line : result.report) out << line << "\n";
      return result.exit_code;
    }
    write_output(result, cfg.output, out, err);
    return result.exit_code;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace zenoqed
