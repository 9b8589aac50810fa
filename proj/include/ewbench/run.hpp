#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace ewb {

/// Everything a verification run needs; fields mirror the CLI flags.
struct RunConfig {
  std::string command = "verify";  // verify | lift | limit | eval
  std::string case_name = "heisenberg";

  double ell = 1.0;
  bool ell_set = false;
  std::string beta = "y^2-2*t";
  std::string F = "1";
  std::string K;    // Class C, expression in s; overrides Phi when set
  std::string Phi = "2^(-4/3)*s^(-1/3)";
  std::string H = "1/sqrt(y^2-4*x*t)";
  std::string A = "p^2/2";
  std::string B = "0";
  std::string gauge;  // optional gauge factor f applied to the base
  std::vector<std::string> guards;  // extra "expr > 0" guards on the base chart

  double c = 0.0;       // psi = c omega
  std::string psi_c;    // Heisenberg family psi = c(x) omega + d(c + k)
  std::string psi_k;

  std::vector<std::string> checks;
  int points = 200;
  std::uint64_t seed = 1;
  double tol = 1e-7;
  std::string chart = "alpha";  // lift: alpha | regular | both
  std::vector<double> ells = {100.0, 200.0, 1000.0, 10000.0};
  bool fixed_base = false;  // limit: build the base once at --ell

  std::string expr;  // eval
  std::string vars = "x,y,t";
  std::vector<double> at;
  int order = 2;

  std::string out;
};

/// Exit statuses.
enum class RunStatus : int { Pass = 0, CheckFailed = 1, ConfigError = 2, SamplingError = 3 };

struct RunResult {
  nlohmann::ordered_json report;
  RunStatus status = RunStatus::Pass;
};

/// Merge a JSON config object into `cfg`; keys use the long flag names.
void apply_json_config(RunConfig& cfg, const nlohmann::json& j);
nlohmann::ordered_json config_to_json(const RunConfig& cfg);

/// Runs the configured checks.  Never throws for configuration, sampling or
/// domain problems; those become an `error` entry and a nonzero status.
RunResult run(const RunConfig& cfg);

/// Report text with a trailing newline.  `wall_time_s` is always the last key.
std::string serialize(const nlohmann::ordered_json& report);

/// Worker count from EWBENCH_THREADS (default 1, at least 1).
int thread_count();

}  // namespace ewb
