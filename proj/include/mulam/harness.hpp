#pragma once

#include <cstdint>
#include <string>
#include <tuple>
#include <vector>

#include "mulam/fixtures.hpp"
#include "mulam/json_io.hpp"

namespace mulam {

/// One verification run: a fixture, a suite, tolerances, sample counts and a
/// mandatory seed. No field defaults to wall-clock anything; rerunning the
/// same config reproduces the same report byte for byte.
struct RunConfig {
  std::string fixture;
  std::string suite = "all";  // isometry | midpoint | extension | counterexamples | all
  double tol_abs = 1e-9;
  double tol_rel = 1e-9;
  std::size_t samples = 2000;
  std::uint64_t seed = 0;
  std::string out;  // report path; empty writes to stdout
  std::string csv;  // per-sample defect series; empty disables
  bool force = false;
};

struct CheckResult {
  std::string name;
  double value = 0.0;
  Json threshold;     // number, or [lo, hi] for range checks
  std::string cmp;    // "le", "ge" or "in"
  bool pass = false;
  Json witness;       // points that realize the value, when meaningful
  Json info;
};

struct RunReport {
  RunConfig config;
  std::vector<CheckResult> checks;
  bool all_pass = true;
  /// Wall time goes to stderr only; the serialized report must be
  /// byte-identical across reruns of the same config.
  double wall_ms = 0.0;
  std::vector<std::tuple<std::string, std::size_t, double>> csv_rows;
};

RunReport run_suite(const RunConfig& cfg);

Json report_to_json(const RunReport& rep);

/// Writes the JSON report (file or stdout) and the CSV series when asked.
/// Returns the process exit code: 0 all checks pass, 1 otherwise.
int write_outputs(const RunReport& rep);

/// Full CLI: subcommands verify-isometry, midpoint, extend, counterexample,
/// list-fixtures, report. Exit 0 on success, 1 on check failure, 2 on
/// config or precondition errors.
int cli_main(int argc, const char* const* argv);

}  // namespace mulam
