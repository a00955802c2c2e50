#pragma once

// Series ingestion, long-format CSV output and a small SVG line plot.

#include <Eigen/Dense>

#include <iosfwd>
#include <string>

#include "lpacf/local_pacf.hpp"
#include "lpacf/time_series.hpp"

namespace lpacf {

/// One value per line, or a single-column CSV whose first line may be a
/// header. Blank lines are ignored; LF and CRLF endings are accepted.
/// Throws DataError naming line and column on malformed or non-finite input.
TimeSeries read_series(const std::string& path);
TimeSeries parse_series(std::istream& in, const std::string& origin = "stream");

/// Header "value", one number per line at 17 significant digits.
void write_series(const std::string& path, const TimeSeries& ts);
void write_series(std::ostream& out, const TimeSeries& ts);

/// Shortest-safe decimal form used by every writer: %.17g.
std::string format_real(double v);

inline constexpr const char* kLpacfCsvHeader = "t,z,lag,estimate,ci_lower,ci_upper,boundary_flag";

/// One row per (point, lag). The confidence columns hold the null band
/// -h, +h with h = 1.96/sqrt(effective window) and are empty for the
/// wavelet estimator.
void write_lpacf_csv(std::ostream& out, const LpacfGrid& grid);
void write_lpacf_csv(const std::string& path, const LpacfGrid& grid);

/// Whole-series PACF: columns lag,estimate,ci_lower,ci_upper.
void write_classical_csv(std::ostream& out, const Eigen::VectorXd& pacf, long length);

/// Static plot of q(t, tau): one polyline per lag, dashed CI rules when the
/// grid carries them.
void write_lpacf_svg(std::ostream& out, const LpacfGrid& grid, const std::string& title);
void write_lpacf_svg(const std::string& path, const LpacfGrid& grid, const std::string& title);

}  // namespace lpacf
