#pragma once

// Command-line front end. `parse_command_line` fills a RunConfig from flags
// and an optional key=value file; `run` executes it and returns the exit
// status.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace lpacf {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitData = 2,
  kExitNumerical = 3,
  kExitVerification = 4,
};

struct RunConfig {
  std::string subcommand;      ///< simulate, estimate, pacf, benchmark, sweep-bandwidth, verify
  std::string process = "tvar";  ///< simulate / benchmark target: tvar or piecewise-ar
  std::string input;
  std::string output;
  std::string plot;
  std::string method = "windowed";
  long binwidth = 0;
  std::string kernel = "epanechnikov";
  int max_lag = 4;
  bool all_points = false;
  long stride = 0;
  std::vector<long> points;
  std::uint64_t seed = 1;
  int smooth_span = -1;
  int max_scale = 0;
  bool pad = false;
  bool demean = false;
  std::vector<long> widths;
  long reps = 100;
  std::vector<int> lags{1, 2};
  long length = 512;
  double phi_start = 0.9;
  double phi_end = -0.9;
  std::string segments;  ///< "85:-0.2;86:0.5,0.2;85:-0.2"
  std::string suite = "all";

  /// Options given explicitly (on the command line or in the config file).
  std::vector<std::string> given;
  bool was_given(const std::string& flag) const;
};

/// Throws InvalidArgument on bad flags. Returns false when help was printed.
bool parse_command_line(int argc, const char* const* argv, RunConfig& config,
                        std::ostream& out);

int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_command_line + run with error reporting; the body of main().
int cli_main(int argc, const char* const* argv);

}  // namespace lpacf
