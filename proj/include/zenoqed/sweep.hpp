#pragma once
// Declarative parameter-grid execution. Grid points are independent pure
// evaluations; the parallel kernel runs them under OpenMP while the serial
// path is kept as the reference implementation, and both must produce
// identical rows in identical order.

#include "zenoqed/protocols.hpp"

#include <string>
#include <vector>

namespace zenoqed {

struct AxisSpec {
  std::string name;
  double min = 0.0;
  double max = 0.0;
  int count = 2;
  bool log_scale = false;

  std::vector<double> values() const;
};

// Fixed (non-swept) protocol arguments of one sweep.
struct ProtocolSpec {
  std::string name = "qst";  // qst | cpg | concurrence | compare
  ModelChoice model = ModelChoice::FullClosed;
  Complex alpha{1.0 / 1.4142135623730951, 0.0};
  Complex beta{1.0 / 1.4142135623730951, 0.0};
  double r = 1.0;              // concurrence weight ratio
  double t = 0.0;              // concurrence evaluation time
  double delta_t_frac = 0.0;   // cpg timing fluctuation
  bool compensate = false;
  double window_lo = 0.9, window_hi = 1.1;
  double t_end = -1.0;         // compare horizon (<0: one flip-flop period)
};

struct SweepSpec {
  SystemParams base;
  std::vector<AxisSpec> axes;  // 1 or 2
  ProtocolSpec protocol;
  std::vector<std::string> metrics;  // empty: protocol defaults

  void validate() const;  // axis names, counts, metric names
  std::vector<std::string> effective_metrics() const;
};

struct SweepRow {
  std::vector<double> axis_values;
  std::vector<double> metric_values;  // NaN on error rows
  std::string status = "ok";          // or a machine-readable reason code
};

struct SweepResult {
  SweepSpec spec;
  std::vector<std::string> metric_names;
  std::vector<SweepRow> rows;  // row-major in axis order
};

enum class ExecMode { Serial, Parallel };

// Evaluates the protocol at every grid point. Point failures become error
// rows (status err_*), never aborts. Deterministic: rows are ordered by grid
// index and identical between serial and parallel execution.
SweepResult run_sweep(const SweepSpec& spec, ExecMode mode = ExecMode::Parallel,
                      int workers = 0);

// Canonical sweep behind each study preset (fig2..fig8).
SweepSpec figure_recipe(const std::string& id);
std::vector<std::string> known_figures();

// Axis names resolvable on SystemParams / ProtocolSpec.
std::vector<std::string> known_axes();
std::vector<std::string> metrics_for(const std::string& protocol);

}  // namespace zenoqed
