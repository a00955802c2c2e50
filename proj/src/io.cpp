#include "lpacf/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string_view>
#include <vector>

#include "lpacf/errors.hpp"

namespace lpacf {
namespace {

std::string_view trim(std::string_view s) {
  const auto blank = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  while (!s.empty() && blank(s.front())) s.remove_prefix(1);
  while (!s.empty() && blank(s.back())) s.remove_suffix(1);
  return s;
}

bool parse_double(std::string_view s, double& out) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

std::string where(const std::string& origin, long line, long column) {
  return origin + ": line " + std::to_string(line) + ", column " + std::to_string(column);
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open " + path + " for writing");
  return out;
}

}  // namespace

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

TimeSeries parse_series(std::istream& in, const std::string& origin) {
  std::vector<double> values;
  std::string raw;
  long line = 0;
  bool seen_content = false;
  while (std::getline(in, raw)) {
    ++line;
    std::string_view text = raw;
    if (line == 1 && text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);
    text = trim(text);
    if (text.empty()) continue;
    const bool first = !seen_content;
    seen_content = true;

    const std::size_t comma = text.find(',');
    std::string_view field = trim(text.substr(0, comma));
    if (comma != std::string_view::npos && !trim(text.substr(comma + 1)).empty()) {
      throw DataError(where(origin, line, 2) + ": expected a single column");
    }
    if (field.size() >= 2 && field.front() == '"' && field.back() == '"') {
      field = field.substr(1, field.size() - 2);
    }
    double v = 0;
    if (!parse_double(field, v)) {
      if (first) continue;  // header
      throw DataError(where(origin, line, 1) + ": cannot parse '" + std::string(field) +
                      "' as a number");
    }
    if (!std::isfinite(v)) {
      throw DataError(where(origin, line, 1) + ": non-finite value '" + std::string(field) + "'");
    }
    values.push_back(v);
  }
  if (values.empty()) throw DataError(origin + ": no numeric values");
  return TimeSeries(values, origin);
}

TimeSeries read_series(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path);
  return parse_series(in, path);
}

void write_series(std::ostream& out, const TimeSeries& ts) {
  out << "value\n";
  for (long t = 0; t < ts.size(); ++t) out << format_real(ts[t]) << '\n';
}

void write_series(const std::string& path, const TimeSeries& ts) {
  std::ofstream out = open_output(path);
  write_series(out, ts);
}

void write_lpacf_csv(std::ostream& out, const LpacfGrid& grid) {
  const bool with_ci = grid.kind == EstimatorKind::windowed && !grid.ci_halfwidth.empty();
  const double T = static_cast<double>(grid.series_length);
  out << kLpacfCsvHeader << '\n';
  for (std::size_t i = 0; i < grid.times.size(); ++i) {
    const long t = grid.times[i];
    const std::string z = format_real(static_cast<double>(t) / T);
    const char flag = grid.boundary[i] ? '1' : '0';
    for (int lag = 1; lag <= grid.max_lag; ++lag) {
      out << t << ',' << z << ',' << lag << ',' << format_real(grid(i, lag)) << ',';
      if (with_ci) {
        const double h = grid.ci_halfwidth[i];
        out << format_real(-h) << ',' << format_real(h);
      } else {
        out << ',';
      }
      out << ',' << flag << '\n';
    }
  }
}

void write_lpacf_csv(const std::string& path, const LpacfGrid& grid) {
  std::ofstream out = open_output(path);
  write_lpacf_csv(out, grid);
}

void write_classical_csv(std::ostream& out, const Eigen::VectorXd& pacf, long length) {
  const double h = 1.96 / std::sqrt(static_cast<double>(length));
  out << "lag,estimate,ci_lower,ci_upper\n";
  for (Eigen::Index k = 0; k < pacf.size(); ++k) {
    out << k + 1 << ',' << format_real(pacf(k)) << ',' << format_real(-h) << ','
        << format_real(h) << '\n';
  }
}

void write_lpacf_svg(std::ostream& out, const LpacfGrid& grid, const std::string& title) {
  constexpr double width = 800, height = 420;
  constexpr double left = 56, right = 150, top = 36, bottom = 44;
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;
  const double tmax = std::max<double>(static_cast<double>(grid.series_length - 1), 1.0);
  const auto x = [&](double t) { return left + plot_w * t / tmax; };
  const auto y = [&](double q) { return top + plot_h * (1.0 - q) / 2.0; };
  static const char* const palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                                        "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
  char buf[128];
  const auto num = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return std::string(buf);
  };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  std::string escaped;
  for (char c : title) {
    if (c == '<') escaped += "&lt;";
    else if (c == '>') escaped += "&gt;";
    else if (c == '&') escaped += "&amp;";
    else escaped += c;
  }
  out << "<text x=\"" << left << "\" y=\"22\" font-family=\"sans-serif\" font-size=\"14\">"
      << escaped << "</text>\n";

  // Axes and ticks.
  out << "<g stroke=\"black\" stroke-width=\"1\" fill=\"none\">\n";
  out << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << plot_w << "\" height=\""
      << plot_h << "\"/>\n";
  out << "</g>\n<g font-family=\"sans-serif\" font-size=\"11\">\n";
  for (double q : {-1.0, -0.5, 0.0, 0.5, 1.0}) {
    out << "<line x1=\"" << left - 4 << "\" x2=\"" << left << "\" y1=\"" << num(y(q))
        << "\" y2=\"" << num(y(q)) << "\" stroke=\"black\"/>";
    out << "<text x=\"" << left - 8 << "\" y=\"" << num(y(q) + 4)
        << "\" text-anchor=\"end\">" << num(q) << "</text>\n";
  }
  for (int k = 0; k <= 4; ++k) {
    const double t = std::round(tmax * k / 4.0);
    out << "<line x1=\"" << num(x(t)) << "\" x2=\"" << num(x(t)) << "\" y1=\""
        << top + plot_h << "\" y2=\"" << top + plot_h + 4 << "\" stroke=\"black\"/>";
    out << "<text x=\"" << num(x(t)) << "\" y=\"" << top + plot_h + 18
        << "\" text-anchor=\"middle\">" << static_cast<long>(t) << "</text>\n";
  }
  out << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << height - 8
      << "\" text-anchor=\"middle\">t</text>\n</g>\n";
  out << "<line x1=\"" << left << "\" x2=\"" << left + plot_w << "\" y1=\"" << num(y(0))
      << "\" y2=\"" << num(y(0)) << "\" stroke=\"#bbbbbb\"/>\n";

  if (grid.kind == EstimatorKind::windowed && !grid.ci_halfwidth.empty()) {
    double h = grid.ci_halfwidth.front();
    for (std::size_t i = 0; i < grid.times.size(); ++i) {
      if (!grid.boundary[i]) {
        h = grid.ci_halfwidth[i];
        break;
      }
    }
    for (double q : {-h, h}) {
      out << "<line x1=\"" << left << "\" x2=\"" << left + plot_w << "\" y1=\"" << num(y(q))
          << "\" y2=\"" << num(y(q))
          << "\" stroke=\"#d62728\" stroke-dasharray=\"4 3\" stroke-width=\"1\"/>\n";
    }
  }

  for (int lag = 1; lag <= grid.max_lag; ++lag) {
    const char* colour = palette[(lag - 1) % 10];
    out << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < grid.times.size(); ++i) {
      out << num(x(static_cast<double>(grid.times[i]))) << ',' << num(y(grid(i, lag))) << ' ';
    }
    out << "\"/>\n";
    const double ly = top + 14.0 * lag;
    out << "<line x1=\"" << left + plot_w + 12 << "\" x2=\"" << left + plot_w + 32
        << "\" y1=\"" << ly << "\" y2=\"" << ly << "\" stroke=\"" << colour
        << "\" stroke-width=\"2\"/>";
    out << "<text x=\"" << left + plot_w + 38 << "\" y=\"" << ly + 4
        << "\" font-family=\"sans-serif\" font-size=\"11\">lag " << lag << "</text>\n";
  }
  out << "</svg>\n";
}

void write_lpacf_svg(const std::string& path, const LpacfGrid& grid, const std::string& title) {
  std::ofstream out = open_output(path);
  write_lpacf_svg(out, grid, title);
}

}  // namespace lpacf
