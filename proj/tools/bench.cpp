// Benchmark: OpenMP sweep kernel against the serial reference executor on a
// representative grid, verifying that both produce identical rows.
#include "zenoqed/sweep.hpp"

#include <omp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <string>

using namespace zenoqed;

namespace {

double time_sweep(const SweepSpec& spec, ExecMode mode, int workers, SweepResult& out) {
  const auto t0 = std::chrono::steady_clock::now();
  out = run_sweep(spec, mode, workers);
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(t1 - t0).count();
}

bool rows_identical(const SweepResult& a, const SweepResult& b) {
  if (a.rows.size() != b.rows.size()) return false;
  for (size_t i = 0; i < a.rows.size(); ++i) {
    if (a.rows[i].status != b.rows[i].status) return false;
    if (a.rows[i].axis_values != b.rows[i].axis_values) return false;
    const auto& x = a.rows[i].metric_values;
    const auto& y = b.rows[i].metric_values;
    if (x.size() != y.size()) return false;
    for (size_t j = 0; j < x.size(); ++j) {
      if (std::isnan(x[j]) != std::isnan(y[j])) return false;
      if (!std::isnan(x[j]) && x[j] != y[j]) return false;
    }
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  std::string figure = "fig3";
  int workers = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--figure") == 0 && i + 1 < argc) {
      figure = argv[++i];
    } else if (std::strcmp(argv[i], "--workers") == 0 && i + 1 < argc) {
      workers = std::atoi(argv[++i]);
    } else {
      std::printf("usage: %s [--figure figN] [--workers n]\n", argv[0]);
      return 2;
    }
  }

  const SweepSpec spec = figure_recipe(figure);
  long long n_rows = 1;
  for (const AxisSpec& axis : spec.axes) n_rows *= axis.count;
  const int threads = workers > 0 ? workers : omp_get_max_threads();
  std::printf("%s: %lld grid points, %d threads\n", figure.c_str(), n_rows, threads);

  SweepResult serial, parallel;
  const double t_serial = time_sweep(spec, ExecMode::Serial, workers, serial);
  std::printf("serial   : %8.3f s  (%8.1f rows/s)\n", t_serial, n_rows / t_serial);
  const double t_parallel = time_sweep(spec, ExecMode::Parallel, workers, parallel);
  std::printf("parallel : %8.3f s  (%8.1f rows/s)  speedup %.2fx\n", t_parallel,
              n_rows / t_parallel, t_serial / t_parallel);

  if (!rows_identical(serial, parallel)) {
    std::printf("MISMATCH: serial and parallel rows differ\n");
    return 1;
  }
  std::printf("rows identical: yes\n");
  return 0;
}
