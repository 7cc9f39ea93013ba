#pragma once
// Flat key-value run configuration with an optional [axes] section.
//
//   # comment
//   protocol = qst
//   model = open
//   omega = 0.05
//   delta = 0.5
//
//   [axes]
//   gamma = 0 0.01 11 linear
//
// Unknown keys are rejected. When g_GHz is present every rate key is read as
// a frequency/2pi value in GHz and normalized to units of g; times remain in
// 1/g units internally and gain ns-scaled report columns.

#include "zenoqed/sweep.hpp"

#include <optional>
#include <stdexcept>
#include <string>

namespace zenoqed {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OutputOptions {
  std::string format = "csv";     // csv | json
  std::string destination = "-";  // path, or "-" for standard output
  int precision = 12;             // significant digits for CSV, 6..17
  std::string run_id = "default";
};

struct RunConfig {
  SystemParams params;          // normalized to units of g
  std::optional<double> g_ghz;  // set in physical-units mode
  ProtocolSpec protocol;
  std::vector<AxisSpec> axes;
  std::vector<std::string> metrics;
  OutputOptions output;
  int workers = 0;
  double t_max = -1.0;  // concurrence series horizon; <0: two flip-flop periods
  int t_count = 400;

  // ns per unit of 1/g time; requires g_ghz.
  double time_to_ns() const;
};

RunConfig parse_config_text(const std::string& text);
RunConfig load_config_file(const std::string& path);

// Operating point used when no config is given: g = 1, Omega = 0.05, Delta = 0.5.
RunConfig default_config();

}  // namespace zenoqed
