#include "lpacf/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "lpacf/errors.hpp"
#include "lpacf/io.hpp"
#include "lpacf/local_pacf.hpp"
#include "lpacf/simulate.hpp"
#include "lpacf/verify.hpp"

namespace lpacf {
namespace {

// Parses "85:-0.2;86:0.5,0.2;85:-0.2".
std::vector<ArSegment> parse_segments(const std::string& text) {
  std::vector<ArSegment> segments;
  std::stringstream all(text);
  std::string item;
  while (std::getline(all, item, ';')) {
    if (item.empty()) continue;
    const std::size_t colon = item.find(':');
    if (colon == std::string::npos) {
      throw InvalidArgument("segment '" + item + "' must look like length:phi1,phi2");
    }
    ArSegment s;
    std::vector<double> phi;
    try {
      s.length = std::stol(item.substr(0, colon));
      std::stringstream coeffs(item.substr(colon + 1));
      std::string c;
      while (std::getline(coeffs, c, ',')) phi.push_back(std::stod(c));
    } catch (const std::logic_error&) {
      throw InvalidArgument("cannot parse segment '" + item + "'");
    }
    s.phi = Eigen::Map<Eigen::VectorXd>(phi.data(), static_cast<Eigen::Index>(phi.size()));
    segments.push_back(std::move(s));
  }
  if (segments.empty()) throw InvalidArgument("no segments given");
  return segments;
}

std::string default_segments() { return "85:-0.2;86:0.5,0.2;85:-0.2"; }

// Writes to the file at `path`, or to `fallback` when the path is empty.
template <typename Fn>
void emit(const std::string& path, std::ostream& fallback, Fn&& write) {
  if (path.empty()) {
    write(fallback);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw DataError("cannot open " + path + " for writing");
  write(file);
}

PointSelection selection(const RunConfig& c) {
  if (!c.points.empty()) return PointSelection::explicit_points(c.points);
  if (c.stride > 0) return PointSelection::every(c.stride);
  return PointSelection::all_points();
}

void validate(const RunConfig& c) {
  const bool wavelet_only = c.was_given("--smooth-span") || c.was_given("--max-scale") ||
                            c.was_given("--pad");
  const bool windowed_only = c.was_given("--binwidth") || c.was_given("--kernel");
  if (c.subcommand == "estimate") {
    if (c.method == "windowed" && wavelet_only) {
      throw InvalidArgument("--smooth-span, --max-scale and --pad apply to --method wavelet");
    }
    if (c.method == "wavelet" && windowed_only) {
      throw InvalidArgument("--binwidth and --kernel apply to --method windowed");
    }
  }
  if (c.subcommand == "sweep-bandwidth") {
    if (c.widths.empty()) throw InvalidArgument("--widths is required");
    if (wavelet_only) throw InvalidArgument("sweep-bandwidth runs the windowed estimator only");
    if (c.was_given("--binwidth")) {
      throw InvalidArgument("--binwidth and --widths are mutually exclusive");
    }
  }
  if ((c.subcommand == "estimate" || c.subcommand == "pacf" ||
       c.subcommand == "sweep-bandwidth") &&
      c.input.empty()) {
    throw InvalidArgument("--input is required");
  }
  if (c.max_lag < 1) throw InvalidArgument("--max-lag must be at least 1");
  if (c.reps < 2) throw InvalidArgument("--reps must be at least 2");
}

LpacfGrid estimate_grid(const RunConfig& c, const TimeSeries& ts, long bandwidth) {
  if (c.method == "windowed") {
    WindowedOptions opt;
    opt.bandwidth = bandwidth;
    opt.kernel = parse_kernel(c.kernel);
    opt.max_lag = c.max_lag;
    opt.points = selection(c);
    opt.demean = c.demean;
    return windowed_lpacf(ts, opt);
  }
  WaveletOptions opt;
  opt.spectral.max_scale = c.max_scale;
  opt.spectral.smoothing_span = c.smooth_span;
  opt.spectral.pad = c.pad;
  opt.max_lag = c.max_lag;
  opt.points = selection(c);
  opt.demean = c.demean;
  return wavelet_lpacf(ts, opt);
}

void report_grid(const LpacfGrid& g, std::ostream& err) {
  if (!g.dropped.empty()) {
    err << "note: " << g.dropped.size() << " point(s) dropped: window too short\n";
  }
  if (!g.failed.empty()) {
    err << "note: " << g.failed.size() << " point(s) failed: covariance not positive\n";
  }
  if (g.clamped > 0) err << "note: " << g.clamped << " estimate(s) clamped into [-1, 1]\n";
}

std::string suffixed(const std::string& path, long width) {
  const std::size_t dot = path.find_last_of('.');
  const std::size_t slash = path.find_last_of('/');
  const std::string tag = "_L" + std::to_string(width);
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return path + tag;
  return path.substr(0, dot) + tag + path.substr(dot);
}

int run_simulate(const RunConfig& c, std::ostream& out) {
  TimeSeries ts = c.process == "tvar"
                      ? [&] {
                          ArPathSpec spec = ArPathSpec::tvar_ramp(c.phi_start, c.phi_end);
                          return simulate_tvar(spec, c.length, c.seed);
                        }()
                      : simulate_piecewise_ar(
                            parse_segments(c.segments.empty() ? default_segments() : c.segments),
                            c.seed);
  emit(c.output, out, [&](std::ostream& o) { write_series(o, ts); });
  return kExitOk;
}

int run_estimate(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const TimeSeries ts = read_series(c.input);
  const LpacfGrid grid = estimate_grid(c, ts, c.binwidth);
  report_grid(grid, err);
  emit(c.output, out, [&](std::ostream& o) { write_lpacf_csv(o, grid); });
  if (!c.plot.empty()) {
    const std::string title = c.method == "windowed"
                                  ? "local PACF, windowed, L = " + std::to_string(grid.bandwidth)
                                  : "local PACF, wavelet";
    write_lpacf_svg(c.plot, grid, title);
  }
  return kExitOk;
}

int run_pacf(const RunConfig& c, std::ostream& out) {
  const TimeSeries ts = read_series(c.input);
  const Eigen::VectorXd pacf = classical_pacf(ts, c.max_lag, c.demean);
  emit(c.output, out, [&](std::ostream& o) { write_classical_csv(o, pacf, ts.size()); });
  return kExitOk;
}

int run_sweep(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const TimeSeries ts = read_series(c.input);
  for (long width : c.widths) {
    const LpacfGrid grid = estimate_grid(c, ts, width);
    report_grid(grid, err);
    if (c.output.empty()) {
      out << "# binwidth " << width << '\n';
      write_lpacf_csv(out, grid);
    } else {
      write_lpacf_csv(suffixed(c.output, width), grid);
    }
    if (!c.plot.empty()) {
      write_lpacf_svg(suffixed(c.plot, width), grid,
                      "local PACF, windowed, L = " + std::to_string(width));
    }
  }
  return kExitOk;
}

int run_benchmark(const RunConfig& c, std::ostream& out) {
  const BenchmarkProcess process =
      c.process == "tvar" ? tvar_benchmark(c.length) : piecewise_benchmark();
  std::vector<BenchmarkEstimator> kinds;
  if (c.method == "all" || c.method == "windowed") kinds.push_back(BenchmarkEstimator::windowed);
  if (c.method == "all" || c.method == "wavelet") kinds.push_back(BenchmarkEstimator::wavelet);
  if (c.method == "all" || c.method == "classical") {
    kinds.push_back(BenchmarkEstimator::classical);
  }
  std::vector<RmseReport> reports;
  for (BenchmarkEstimator kind : kinds) {
    EstimatorConfig config;
    config.kind = kind;
    config.bandwidth = c.binwidth;
    config.kernel = parse_kernel(c.kernel);
    config.max_scale = c.max_scale;
    config.smoothing_span = c.smooth_span;
    reports.push_back(monte_carlo_rmse(process, config, c.reps, c.lags, c.seed));
  }
  emit(c.output, out, [&](std::ostream& o) {
    o << "estimator,lag,rmse,standard_error,mean_abs_error,replicates,excluded,bandwidth,"
         "seconds\n";
    for (const RmseReport& r : reports) {
      for (const LagRmse& l : r.lags) {
        o << r.estimator << ',' << l.lag << ',' << format_real(l.rmse) << ','
          << format_real(l.standard_error) << ',' << format_real(l.mean_abs_error) << ','
          << r.replicates << ',' << r.excluded << ',' << r.bandwidth << ','
          << format_real(r.elapsed_seconds) << '\n';
      }
    }
  });
  return kExitOk;
}

int run_verify(const RunConfig& c, std::ostream& out) {
  const VerifyReport report = run_verification(parse_verify_suite(c.suite));
  for (const CheckResult& r : report.checks) {
    char time[32];
    std::snprintf(time, sizeof time, "%.2fs", r.seconds);
    out << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << " [" << time
        << "]\n";
  }
  return report.all_passed() ? kExitOk : kExitVerification;
}

}  // namespace

bool RunConfig::was_given(const std::string& flag) const {
  return std::find(given.begin(), given.end(), flag) != given.end();
}

bool parse_command_line(int argc, const char* const* argv, RunConfig& c, std::ostream& out) {
  CLI::App app{"Local partial autocorrelation of nonstationary time series", "lpacf"};
  app.set_config("--config", "", "key=value file; command-line flags take precedence");
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();

  app.add_option("--input", c.input, "input series: one value per line or single-column CSV");
  app.add_option("--output", c.output, "output file (stdout when omitted)");
  app.add_option("--plot", c.plot, "SVG plot path");
  app.add_option("--method", c.method, "windowed | wavelet (benchmark also: classical | all)")
      ->check(CLI::IsMember({"windowed", "wavelet", "classical", "all"}));
  app.add_option("--binwidth", c.binwidth, "window length L (default round(T^0.8), even)")
      ->check(CLI::PositiveNumber);
  app.add_option("--kernel", c.kernel, "rectangular | epanechnikov")
      ->check(CLI::IsMember({"rectangular", "epanechnikov"}));
  app.add_option("--max-lag", c.max_lag, "largest lag estimated")->check(CLI::Range(1, 1000));
  auto* all = app.add_flag("--all-points", c.all_points, "estimate at every time point");
  auto* stride = app.add_option("--stride", c.stride, "estimate at every n-th point")
                     ->check(CLI::PositiveNumber);
  auto* points = app.add_option("--points", c.points, "explicit comma-separated time points")
                     ->delimiter(',');
  all->excludes(stride, points);
  stride->excludes(points);
  app.add_option("--seed", c.seed, "random seed");
  app.add_option("--smooth-span", c.smooth_span, "wavelet smoothing half-width s")
      ->check(CLI::Range(0, 100000));
  app.add_option("--max-scale", c.max_scale, "wavelet scales used (J*)")->check(CLI::Range(1, 20));
  app.add_flag("--pad", c.pad, "reflect-pad non-dyadic input for the wavelet estimator");
  app.add_flag("--demean", c.demean, "subtract the (local) mean before estimation");
  app.add_option("--widths", c.widths, "comma-separated window lengths")
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  app.add_option("--reps", c.reps, "Monte-Carlo replicates")->check(CLI::Range(2L, 1000000L));
  app.add_option("--lags", c.lags, "benchmark lags")->delimiter(',')->check(CLI::Range(1, 10));
  app.add_option("--T", c.length, "simulated series length")->check(CLI::Range(8L, 1L << 26));
  app.add_option("--phi-start", c.phi_start, "TVAR coefficient at t = 0");
  app.add_option("--phi-end", c.phi_end, "TVAR coefficient at t = T");
  app.add_option("--segments", c.segments, "piecewise AR: length:phi1,phi2;...");
  app.add_option("--suite", c.suite, "verify suite: all | psi | bproducts | integral | bounds");

  const auto process_arg = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("process", c.process, "tvar | piecewise-ar")
                    ->check(CLI::IsMember({"tvar", "piecewise-ar"}));
    if (required) opt->required();
  };
  auto* simulate = app.add_subcommand("simulate", "simulate a test process");
  process_arg(simulate, true);
  auto* benchmark = app.add_subcommand("benchmark", "Monte-Carlo RMSE study");
  process_arg(benchmark, false);
  app.add_subcommand("estimate", "local PACF of a series");
  app.add_subcommand("pacf", "classical whole-series PACF");
  app.add_subcommand("sweep-bandwidth", "windowed estimate at several window lengths");
  app.add_subcommand("verify", "wavelet formula and property suites");
  for (CLI::App* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    std::vector<std::string> args;
    for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
    app.parse(std::move(args));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return false;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return false;
  } catch (const CLI::ParseError& e) {
    throw InvalidArgument(e.what());
  }
  c.subcommand = app.get_subcommands().front()->get_name();
  for (const CLI::Option* opt : app.get_options()) {
    if (opt->count() > 0) c.given.push_back(opt->get_name());
  }
  if (c.method == "classical" || c.method == "all") {
    if (c.subcommand != "benchmark") {
      throw InvalidArgument("--method " + c.method + " is only valid for benchmark");
    }
  }
  return true;
}

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  validate(c);
  if (c.subcommand == "simulate") return run_simulate(c, out);
  if (c.subcommand == "estimate") return run_estimate(c, out, err);
  if (c.subcommand == "pacf") return run_pacf(c, out);
  if (c.subcommand == "sweep-bandwidth") return run_sweep(c, out, err);
  if (c.subcommand == "benchmark") return run_benchmark(c, out);
  if (c.subcommand == "verify") return run_verify(c, out);
  throw InvalidArgument("unknown subcommand '" + c.subcommand + "'");
}

int cli_main(int argc, const char* const* argv) {
  try {
    RunConfig config;
    if (!parse_command_line(argc, argv, config, std::cout)) return kExitOk;
    return run(config, std::cout, std::cerr);
  } catch (const Error& e) {
    std::cerr << "lpacf: " << e.what() << '\n';
    switch (e.kind()) {
      case ErrorKind::invalid_argument:
        return kExitUsage;
      case ErrorKind::numerical:
        return kExitNumerical;
      case ErrorKind::data:
      case ErrorKind::boundary:
        return kExitData;
    }
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "lpacf: " << e.what() << '\n';
    return kExitData;
  }
}

}  // namespace lpacf
