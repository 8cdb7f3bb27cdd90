#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "config.hpp"

namespace diracwalk::app {

enum ExitCode : int {
  kExitOk = 0,
  kExitError = 1,
  kExitConstraint = 2,
  kExitNoRealFrequency = 3,
};

struct RunResult {
  int exit_code = kExitOk;
  std::vector<std::filesystem::path> files;
};

/// Runs the configured experiment, writes its CSV files, report.txt and
/// manifest.csv into config.output_dir and echoes the report to `out`.
/// Errors are reported on `err` and mapped to exit codes; nothing throws.
RunResult run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace diracwalk::app
