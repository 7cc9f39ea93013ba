#pragma once
// Command implementations shared by the CLI binary and the tests. Each
// command maps one run configuration onto a protocol or sweep invocation and
// a result table. Exit codes: 0 success, 1 failed validation checks,
// 2 configuration errors, 3 numerical failures.

#include "zenoqed/table.hpp"

#include <iosfwd>

namespace zenoqed {

struct CommandResult {
  int exit_code = 0;
  ResultTable table;
  std::vector<std::string> notes;   // diagnostics, printed to stderr
  std::vector<std::string> report;  // validate output, printed to stdout
};

CommandResult run_qst_command(const RunConfig& cfg);
CommandResult run_cpg_command(const RunConfig& cfg);
CommandResult run_concurrence_command(const RunConfig& cfg);
CommandResult run_compare_command(const RunConfig& cfg);
CommandResult run_sweep_command(const RunConfig& cfg, const std::string& figure,
                                ExecMode mode = ExecMode::Parallel);
CommandResult run_validate_command(const RunConfig& cfg);

// Full command-line interface; returns the process exit code.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace zenoqed
