#pragma once

#include "urep/config.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>

namespace urep::cli {

enum ExitCode : int {
  kExitConverged = 0,
  kExitIoError = 1,
  kExitMaxIterations = 2,
  kExitSubproblemFailed = 3,
  kExitOracleDisagreement = 4,
};

/// Trace rows as CSV with header iter,step_norm,residual,gap,t.
std::string trace_csv(const Trace& trace);

/// Runs the configured scheme and writes the trace CSV and JSON summary under
/// rc.output_dir. Diagnostics go to `err`.
int run(const RunConfig& rc, std::ostream& err);

/// Runs every *.cfg file in `dir` concurrently, each writing into
/// out_dir/<file stem>. Returns the largest exit code.
int run_suite(const std::filesystem::path& dir, const std::filesystem::path& out_dir,
              const std::function<void(RunConfig&)>& override_fn, std::ostream& out,
              std::ostream& err);

}  // namespace urep::cli
