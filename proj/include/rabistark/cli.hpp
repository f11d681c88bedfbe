#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rabistark/sweep.hpp"

namespace rabistark {

// Exit codes: 0 success, 2 usage error, 3 I/O error, 4 numerical failure.
enum ExitCode {
  kExitOk = 0,
  kExitUsage = 2,
  kExitIo = 3,
  kExitNumerical = 4,
};

struct JobConfig {
  std::string command;
  PaperPoint point;              // omega in Omega units, g in g_s units
  std::optional<AxisSpec> grid1, grid2;
  double tol = -1.0;
  std::string law;
  std::string out;               // empty or "-" means stdout
  std::string format = "csv";
  int threads = 1;
  bool no_timestamp = false;
  int levels = 8;
  double onset_threshold = 0.1;
  double gap_ceiling = 0.02;
  std::optional<double> quad_chi, quad_lambda;
  std::optional<std::pair<double, double>> scan_x;  // variational profile range
  int scan_samples = 801;
};

// Parses argv (without the program name). Throws Error(bad_config) with a
// usage message on malformed input.
JobConfig parse_args(const std::vector<std::string>& args);

int run_job(const JobConfig& cfg);

// parse + run + exit-code mapping; the thin main() calls this.
int cli_main(int argc, char** argv);

}  // namespace rabistark
