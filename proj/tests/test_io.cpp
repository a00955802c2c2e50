#include <doctest.h>

#include <cmath>
#include <sstream>

#include "lpacf/errors.hpp"
#include "lpacf/io.hpp"
#include "lpacf/simulate.hpp"

using namespace lpacf;

namespace {

TimeSeries parse(const std::string& text) {
  std::istringstream in(text);
  return parse_series(in, "input");
}

std::string error_of(const std::string& text) {
  try {
    parse(text);
  } catch (const DataError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("reading series") {
  const TimeSeries a = parse("1.0\n2.0\n3.0\n");
  REQUIRE(a.size() == 3);
  CHECK(a[0] == 1.0);
  CHECK(a[2] == 3.0);
  CHECK(parse("value\n4\n5\n").size() == 2);
  CHECK(parse("value\r\n4\r\n5\r\n\r\n")[1] == 5.0);
  CHECK(parse("x,\n1e-3,\n+2,\n")[0] == 0.001);
  CHECK(parse("\xEF\xBB\xBFvalue\n7\n")[0] == 7.0);

  CHECK(error_of("1\nabc\n3\n").find("line 2, column 1") != std::string::npos);
  CHECK(error_of("1\n2,3\n").find("line 2, column 2") != std::string::npos);
  CHECK(error_of("1\nnan\n").find("non-finite") != std::string::npos);
  CHECK(error_of("1\ninf\n").find("line 2") != std::string::npos);
  CHECK(error_of("value\n") != "");
  CHECK_THROWS_AS(read_series("/nonexistent/file.csv"), DataError);
}

TEST_CASE("series round trip") {
  const TimeSeries s = simulate_tvar(ArPathSpec::tvar_ramp(0.9, -0.9), 128, 4);
  std::stringstream buf;
  write_series(buf, s);
  const TimeSeries back = parse_series(buf);
  REQUIRE(back.size() == s.size());
  for (long t = 0; t < s.size(); ++t) CHECK(back[t] == s[t]);
  CHECK(format_real(0.1) == "0.10000000000000001");
}

TEST_CASE("long-format CSV") {
  LpacfGrid g;
  g.kind = EstimatorKind::windowed;
  g.series_length = 8;
  g.times = {2, 4};
  g.max_lag = 2;
  g.estimates.resize(2, 2);
  g.estimates << 0.5, -0.25, 0.125, 0;
  g.boundary = {true, false};
  g.ci_halfwidth = {0.5, 0.25};
  std::ostringstream out;
  write_lpacf_csv(out, g);
  CHECK(out.str() ==
        "t,z,lag,estimate,ci_lower,ci_upper,boundary_flag\n"
        "2,0.25,1,0.5,-0.5,0.5,1\n"
        "2,0.25,2,-0.25,-0.5,0.5,1\n"
        "4,0.5,1,0.125,-0.25,0.25,0\n"
        "4,0.5,2,0,-0.25,0.25,0\n");

  g.kind = EstimatorKind::wavelet;
  g.ci_halfwidth.clear();
  std::ostringstream w;
  write_lpacf_csv(w, g);
  CHECK(w.str().find("2,0.25,1,0.5,,,1\n") != std::string::npos);

  std::ostringstream c;
  write_classical_csv(c, Eigen::Vector2d(0.5, -0.1), 100);
  CHECK(c.str() == "lag,estimate,ci_lower,ci_upper\n1,0.5,-0.19600000000000001,"
                   "0.19600000000000001\n2,-0.10000000000000001,-0.19600000000000001,"
                   "0.19600000000000001\n");
}

TEST_CASE("SVG plot") {
  LpacfGrid g;
  g.kind = EstimatorKind::windowed;
  g.series_length = 100;
  g.max_lag = 3;
  for (long t = 0; t < 100; t += 10) g.times.push_back(t);
  g.estimates = Eigen::MatrixXd::Constant(10, 3, 0.2);
  g.boundary.assign(10, false);
  g.ci_halfwidth.assign(10, 0.3);
  std::ostringstream out;
  write_lpacf_svg(out, g, "a < b");
  const std::string svg = out.str();
  CHECK(svg.rfind("<svg", 0) == 0);
  long polylines = 0;
  for (std::size_t p = svg.find("<polyline"); p != std::string::npos;
       p = svg.find("<polyline", p + 1)) {
    ++polylines;
  }
  CHECK(polylines == 3);
  CHECK(svg.find("stroke-dasharray") != std::string::npos);
  CHECK(svg.find("a &lt; b") != std::string::npos);
}
