#include <doctest.h>

#include <unistd.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "lpacf/cli.hpp"
#include "lpacf/errors.hpp"
#include "lpacf/io.hpp"

using namespace lpacf;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("lpacf_cli_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

int invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "lpacf");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  return cli_main(static_cast<int>(argv.size()), argv.data());
}

RunConfig parse(std::vector<std::string> args) {
  args.insert(args.begin(), "lpacf");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  RunConfig c;
  std::ostringstream out;
  parse_command_line(static_cast<int>(argv.size()), argv.data(), c, out);
  return c;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

long count_lines(const std::string& text) {
  return static_cast<long>(std::count(text.begin(), text.end(), '\n'));
}

}  // namespace

TEST_CASE("simulate then estimate end to end") {
  TempDir dir;
  const std::string series = dir / "tvar.csv";
  REQUIRE(invoke({"simulate", "tvar", "--T", "512", "--phi-start", "0.9", "--phi-end", "-0.9",
                  "--seed", "1", "--output", series}) == kExitOk);
  CHECK(read_series(series).size() == 512);

  const std::string out = dir / "est.csv";
  const std::string plot = dir / "est.svg";
  REQUIRE(invoke({"estimate", "--input", series, "--method", "windowed", "--binwidth", "40",
                  "--kernel", "epanechnikov", "--max-lag", "4", "--output", out, "--plot",
                  plot}) == kExitOk);
  const std::string csv = slurp(out);
  CHECK(csv.rfind("t,z,lag,estimate,ci_lower,ci_upper,boundary_flag\n", 0) == 0);
  CHECK(csv.find(",-0.30990321069650117,0.30990321069650117,0\n") != std::string::npos);
  CHECK(count_lines(csv) == 1 + 512 * 4);
  CHECK(slurp(plot).find("<svg") == 0);

  // Byte-identical on repeat.
  const std::string again = dir / "again.csv";
  REQUIRE(invoke({"estimate", "--input", series, "--method", "windowed", "--binwidth", "40",
                  "--max-lag", "4", "--output", again}) == kExitOk);
  CHECK(slurp(again) == csv);

  const std::string wav = dir / "wav.csv";
  REQUIRE(invoke({"estimate", "--input", series, "--method", "wavelet", "--smooth-span", "20",
                  "--max-lag", "3", "--stride", "8", "--output", wav}) == kExitOk);
  const std::string wcsv = slurp(wav);
  CHECK(count_lines(wcsv) == 1 + 64 * 3);
  CHECK(wcsv.find(",,,") != std::string::npos);

  const std::string pacf = dir / "pacf.csv";
  REQUIRE(invoke({"pacf", "--input", series, "--max-lag", "3", "--output", pacf}) == kExitOk);
  CHECK(count_lines(slurp(pacf)) == 4);
}

TEST_CASE("piecewise simulation and bandwidth sweep") {
  TempDir dir;
  const std::string series = dir / "pw.csv";
  REQUIRE(invoke({"simulate", "piecewise-ar", "--seed", "3", "--output", series}) == kExitOk);
  CHECK(read_series(series).size() == 256);
  REQUIRE(invoke({"simulate", "piecewise-ar", "--segments", "100:0.3;28:-0.5,0.1", "--output",
                  dir / "custom.csv"}) == kExitOk);
  CHECK(read_series(dir / "custom.csv").size() == 128);

  const std::string base = dir / "sweep.csv";
  REQUIRE(invoke({"sweep-bandwidth", "--input", series, "--widths", "160,80,40", "--stride",
                  "16", "--output", base}) == kExitOk);
  for (const char* w : {"160", "80", "40"}) {
    const std::string file = dir / (std::string("sweep_L") + w + ".csv");
    CHECK(fs::exists(file));
    CHECK(count_lines(slurp(file)) == 1 + 16 * 4);
  }
}

TEST_CASE("option validation and exit codes") {
  TempDir dir;
  const std::string series = dir / "s.csv";
  REQUIRE(invoke({"simulate", "tvar", "--T", "64", "--output", series}) == kExitOk);

  CHECK(invoke({"estimate", "--input", series, "--method", "windowed", "--smooth-span", "4"}) ==
        kExitUsage);
  CHECK(invoke({"estimate", "--input", series, "--method", "wavelet", "--binwidth", "20"}) ==
        kExitUsage);
  CHECK(invoke({"estimate", "--input", series, "--stride", "2", "--all-points"}) == kExitUsage);
  CHECK(invoke({"estimate", "--input", series, "--kernel", "gaussian"}) == kExitUsage);
  CHECK(invoke({"estimate"}) == kExitUsage);
  CHECK(invoke({"frobnicate"}) == kExitUsage);
  CHECK(invoke({"simulate", "tvar", "--phi-start", "1.2"}) == kExitUsage);

  std::ofstream(dir / "bad.csv") << "1\n2\nxyz\n";
  CHECK(invoke({"estimate", "--input", dir / "bad.csv"}) == kExitData);
  CHECK(invoke({"estimate", "--input", dir / "missing.csv"}) == kExitData);
  std::ofstream(dir / "short.csv") << "1\n2\n3\n";
  CHECK(invoke({"estimate", "--input", dir / "short.csv"}) == kExitData);
  CHECK(invoke({"verify", "--suite", "integral"}) == kExitOk);
}

TEST_CASE("config file precedence") {
  TempDir dir;
  const std::string cfg = dir / "run.ini";
  std::ofstream(cfg) << "binwidth=40\nkernel=rectangular\nmax-lag=2\n";
  const RunConfig from_file = parse({"estimate", "--config", cfg, "--input", "x.csv"});
  CHECK(from_file.binwidth == 40);
  CHECK(from_file.kernel == "rectangular");
  CHECK(from_file.max_lag == 2);
  const RunConfig overridden =
      parse({"estimate", "--config", cfg, "--input", "x.csv", "--binwidth", "64"});
  CHECK(overridden.binwidth == 64);
  CHECK(overridden.max_lag == 2);
  const RunConfig defaults = parse({"estimate", "--input", "x.csv"});
  CHECK(defaults.binwidth == 0);
  CHECK(defaults.kernel == "epanechnikov");
  CHECK(defaults.max_lag == 4);
  CHECK_FALSE(defaults.was_given("--binwidth"));
  CHECK(overridden.was_given("--binwidth"));
}

TEST_CASE("benchmark subcommand") {
  TempDir dir;
  const std::string out = dir / "bench.csv";
  REQUIRE(invoke({"benchmark", "tvar", "--method", "all", "--reps", "4", "--T", "256",
                  "--output", out}) == kExitOk);
  const std::string csv = slurp(out);
  CHECK(count_lines(csv) == 1 + 3 * 2);
  CHECK(csv.find("windowed,1,") != std::string::npos);
  CHECK(csv.find("classical,2,") != std::string::npos);
}
