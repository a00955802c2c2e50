#include "lpacf/simulate.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <string>

#include "lpacf/errors.hpp"
#include "lpacf/parallel.hpp"

namespace lpacf {

CoefficientPath::CoefficientPath(Shape shape, std::vector<double> knots,
                                 std::vector<double> values)
    : shape_(shape), knots_(std::move(knots)), values_(std::move(values)) {
  if (knots_.empty() || knots_.size() != values_.size()) {
    throw InvalidArgument("coefficient path needs matching, nonempty knots and values");
  }
  if (!std::is_sorted(knots_.begin(), knots_.end())) {
    throw InvalidArgument("coefficient path knots must be ascending");
  }
}

CoefficientPath CoefficientPath::constant(double value) {
  return CoefficientPath(Shape::constant, {0.0}, {value});
}

CoefficientPath CoefficientPath::ramp(double start, double end) {
  return CoefficientPath(Shape::linear, {0.0, 1.0}, {start, end});
}

double CoefficientPath::operator()(double z) const {
  // Index of the last knot <= z.
  const auto it = std::upper_bound(knots_.begin(), knots_.end(), z);
  if (it == knots_.begin()) return values_.front();
  const std::size_t k = static_cast<std::size_t>(it - knots_.begin()) - 1;
  if (shape_ == Shape::constant || k + 1 == knots_.size()) return values_[k];
  const double u = (z - knots_[k]) / (knots_[k + 1] - knots_[k]);
  return values_[k] + u * (values_[k + 1] - values_[k]);
}

Eigen::VectorXd ArPathSpec::at(double z) const {
  Eigen::VectorXd phi(order());
  for (int i = 0; i < order(); ++i) phi(i) = coefficients[static_cast<std::size_t>(i)](z);
  return phi;
}

ArPathSpec ArPathSpec::tvar_ramp(double start, double end) {
  ArPathSpec spec;
  spec.coefficients.push_back(CoefficientPath::ramp(start, end));
  return spec;
}

ArPathSpec ArPathSpec::constant(const Eigen::VectorXd& phi) {
  ArPathSpec spec;
  for (Eigen::Index i = 0; i < phi.size(); ++i) {
    spec.coefficients.push_back(CoefficientPath::constant(phi(i)));
  }
  return spec;
}

long total_length(const std::vector<ArSegment>& segments) {
  long n = 0;
  for (const ArSegment& s : segments) n += s.length;
  return n;
}

ArPathSpec piecewise_spec(const std::vector<ArSegment>& segments) {
  if (segments.empty()) throw InvalidArgument("need at least one segment");
  Eigen::Index p = 0;
  for (const ArSegment& s : segments) {
    if (s.length < 1) throw InvalidArgument("segment lengths must be positive");
    p = std::max(p, s.phi.size());
  }
  const double T = static_cast<double>(total_length(segments));
  std::vector<double> knots;
  long start = 0;
  for (const ArSegment& s : segments) {
    knots.push_back(static_cast<double>(start) / T);
    start += s.length;
  }
  ArPathSpec spec;
  for (Eigen::Index i = 0; i < p; ++i) {
    std::vector<double> values;
    for (const ArSegment& s : segments) values.push_back(i < s.phi.size() ? s.phi(i) : 0.0);
    spec.coefficients.emplace_back(CoefficientPath::Shape::constant, knots, values);
  }
  return spec;
}

Eigen::VectorXd reflection_coefficients(const Eigen::VectorXd& phi) {
  const Eigen::Index p = phi.size();
  Eigen::VectorXd a = phi;
  Eigen::VectorXd kappa(p);
  for (Eigen::Index k = p; k >= 1; --k) {
    const double kk = a(k - 1);
    kappa(k - 1) = kk;
    if (std::abs(kk) >= 1.0) {
      // Unstable: remaining coefficients are meaningless.
      kappa.head(k - 1).setConstant(std::numeric_limits<double>::quiet_NaN());
      break;
    }
    Eigen::VectorXd prev(k - 1);
    for (Eigen::Index i = 1; i < k; ++i) {
      prev(i - 1) = (a(i - 1) + kk * a(k - i - 1)) / (1.0 - kk * kk);
    }
    a = prev;
  }
  return kappa;
}

bool is_stationary(const Eigen::VectorXd& phi) {
  const Eigen::VectorXd kappa = reflection_coefficients(phi);
  for (Eigen::Index i = 0; i < kappa.size(); ++i) {
    if (!(std::abs(kappa(i)) < 1.0)) return false;
  }
  return true;
}

TimeSeries simulate_tvar(const ArPathSpec& spec, long length, std::uint64_t seed) {
  if (length < 1) throw InvalidArgument("series length must be positive");
  if (spec.burn_in < 0) throw InvalidArgument("burn-in must be nonnegative");
  const int p = spec.order();
  std::vector<Eigen::VectorXd> phis(static_cast<std::size_t>(length));
  for (long t = 0; t < length; ++t) {
    phis[static_cast<std::size_t>(t)] =
        spec.at(static_cast<double>(t) / static_cast<double>(length));
    if (!is_stationary(phis[static_cast<std::size_t>(t)])) {
      throw InvalidArgument("coefficient path is not stationary at t = " + std::to_string(t));
    }
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const long total = spec.burn_in + length;
  std::vector<double> x(static_cast<std::size_t>(total), 0.0);
  for (long n = 0; n < total; ++n) {
    const long t = n - spec.burn_in;
    const Eigen::VectorXd& phi = phis[static_cast<std::size_t>(std::max(t, 0L))];
    double v = spec.sigma * normal(rng);
    for (int i = 1; i <= p && n - i >= 0; ++i) {
      v += phi(i - 1) * x[static_cast<std::size_t>(n - i)];
    }
    x[static_cast<std::size_t>(n)] = v;
  }
  return TimeSeries(std::vector<double>(x.begin() + spec.burn_in, x.end()), "simulated");
}

TimeSeries simulate_piecewise_ar(const std::vector<ArSegment>& segments, std::uint64_t seed,
                                 double sigma, long burn_in) {
  ArPathSpec spec = piecewise_spec(segments);
  spec.sigma = sigma;
  spec.burn_in = burn_in;
  return simulate_tvar(spec, total_length(segments), seed);
}

Eigen::VectorXd ar_autocovariance(const Eigen::VectorXd& phi, double sigma, int max_lag) {
  const int p = static_cast<int>(phi.size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(p + 1, p + 1);
  for (int k = 0; k <= p; ++k) {
    for (int i = 1; i <= p; ++i) m(k, std::abs(k - i)) -= phi(i - 1);
  }
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(p + 1);
  rhs(0) = sigma * sigma;
  const Eigen::VectorXd head = m.partialPivLu().solve(rhs);
  Eigen::VectorXd gamma(std::max(max_lag, p) + 1);
  gamma.head(p + 1) = head;
  for (int k = p + 1; k < gamma.size(); ++k) {
    double v = 0;
    for (int i = 1; i <= p; ++i) v += phi(i - 1) * gamma(k - i);
    gamma(k) = v;
  }
  return gamma.head(max_lag + 1);
}

double true_tv_pacf(const ArPathSpec& spec, double z, int lag) {
  if (lag < 1) throw InvalidArgument("lag must be positive");
  Eigen::VectorXd phi = spec.at(z);
  Eigen::Index p = phi.size();
  while (p > 0 && phi(p - 1) == 0.0) --p;
  if (lag > p) return 0.0;
  phi.conservativeResize(p);
  return pacf_from_autocovariance(ar_autocovariance(phi, 1.0, lag), lag)(lag - 1);
}

std::string_view benchmark_estimator_name(BenchmarkEstimator e) {
  switch (e) {
    case BenchmarkEstimator::windowed:
      return "windowed";
    case BenchmarkEstimator::wavelet:
      return "wavelet";
    case BenchmarkEstimator::classical:
      return "classical";
  }
  return "unknown";
}

BenchmarkProcess tvar_benchmark(long length) {
  return {ArPathSpec::tvar_ramp(0.9, -0.9), length};
}

BenchmarkProcess piecewise_benchmark() {
  Eigen::VectorXd ar1(1);
  ar1 << -0.2;
  Eigen::VectorXd ar2(2);
  ar2 << 0.5, 0.2;
  const std::vector<ArSegment> segments{{85, ar1}, {86, ar2}, {85, ar1}};
  return {piecewise_spec(segments), total_length(segments)};
}

namespace {

struct ReplicateOutcome {
  bool excluded = false;
  Eigen::VectorXd rmse;
  Eigen::VectorXd mae;
  long scored = 0;
};

long resolve_margin(const EstimatorConfig& config, long bandwidth, int smoothing_span,
                    int max_lag) {
  if (config.margin >= 0) return config.margin;
  if (config.kind == BenchmarkEstimator::wavelet) return smoothing_span + max_lag;
  return bandwidth / 2;
}

}  // namespace

RmseReport monte_carlo_rmse(const BenchmarkProcess& process, const EstimatorConfig& config,
                            long replicates, const std::vector<int>& lags, std::uint64_t seed) {
  if (replicates < 2) throw InvalidArgument("need at least two replicates");
  if (lags.empty()) throw InvalidArgument("need at least one lag");
  const auto started = std::chrono::steady_clock::now();
  const long T = process.length;
  const int max_lag = *std::max_element(lags.begin(), lags.end());
  const long L = config.bandwidth > 0 ? config.bandwidth : default_bandwidth(T);
  const int span = config.smoothing_span >= 0 ? config.smoothing_span
                                              : default_smoothing_span(T);
  const long margin = resolve_margin(config, L, span, max_lag);

  std::vector<long> points;
  for (long t = margin; t <= T - 1 - margin; ++t) points.push_back(t);
  if (points.empty()) throw InvalidArgument("margin leaves no points to score");

  Eigen::MatrixXd truth(static_cast<Eigen::Index>(points.size()),
                        static_cast<Eigen::Index>(lags.size()));
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t k = 0; k < lags.size(); ++k) {
      truth(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
          true_tv_pacf(process.spec, points[i], T, lags[k]);
    }
  }

  std::vector<ReplicateOutcome> outcomes(static_cast<std::size_t>(replicates));
  parallel_for(replicates, [&](long r) {
    const TimeSeries ts = simulate_tvar(process.spec, T, seed + static_cast<std::uint64_t>(r));
    ReplicateOutcome& out = outcomes[static_cast<std::size_t>(r)];
    Eigen::ArrayXd sq = Eigen::ArrayXd::Zero(static_cast<Eigen::Index>(lags.size()));
    Eigen::ArrayXd ab = sq;
    long scored = 0;

    const auto score = [&](std::size_t i, const auto& estimate_at_lag) {
      for (std::size_t k = 0; k < lags.size(); ++k) {
        const double e = estimate_at_lag(lags[k]) -
                         truth(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k));
        sq(static_cast<Eigen::Index>(k)) += e * e;
        ab(static_cast<Eigen::Index>(k)) += std::abs(e);
      }
      ++scored;
    };

    if (config.kind == BenchmarkEstimator::classical) {
      const Eigen::VectorXd pacf = classical_pacf(ts, max_lag);
      for (std::size_t i = 0; i < points.size(); ++i) {
        score(i, [&](int lag) { return pacf(lag - 1); });
      }
    } else {
      LpacfGrid grid;
      if (config.kind == BenchmarkEstimator::windowed) {
        WindowedOptions opt;
        opt.bandwidth = L;
        opt.kernel = config.kernel;
        opt.max_lag = max_lag;
        opt.points = PointSelection::explicit_points(points);
        grid = windowed_lpacf(ts, opt);
      } else {
        WaveletOptions opt;
        opt.spectral.max_scale = config.max_scale;
        opt.spectral.smoothing_span = span;
        opt.max_lag = max_lag;
        opt.points = PointSelection::explicit_points(points);
        grid = wavelet_lpacf(ts, opt);
      }
      std::size_t i = 0;
      for (std::size_t g = 0; g < grid.times.size(); ++g) {
        while (i < points.size() && points[i] < grid.times[g]) ++i;
        if (grid.boundary[g]) continue;
        score(i, [&](int lag) { return grid(g, lag); });
      }
    }
    const long failures = static_cast<long>(points.size()) - scored;
    if (scored == 0 || failures * 10 > static_cast<long>(points.size())) {
      out.excluded = true;
      return;
    }
    out.scored = scored;
    out.rmse = (sq / static_cast<double>(scored)).sqrt().matrix();
    out.mae = (ab / static_cast<double>(scored)).matrix();
  });

  RmseReport report;
  report.estimator = std::string(benchmark_estimator_name(config.kind));
  report.bandwidth = config.kind == BenchmarkEstimator::wavelet ? 2L * span + 1 : L;
  std::vector<const ReplicateOutcome*> kept;
  for (const ReplicateOutcome& o : outcomes) {
    if (o.excluded) {
      ++report.excluded;
    } else {
      kept.push_back(&o);
    }
  }
  report.replicates = static_cast<long>(kept.size());
  report.per_replicate.resize(static_cast<Eigen::Index>(kept.size()),
                              static_cast<Eigen::Index>(lags.size()));
  Eigen::VectorXd mae_sum = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(lags.size()));
  for (std::size_t r = 0; r < kept.size(); ++r) {
    report.per_replicate.row(static_cast<Eigen::Index>(r)) = kept[r]->rmse.transpose();
    mae_sum += kept[r]->mae;
    report.scored_points = std::max(report.scored_points, kept[r]->scored);
  }
  const double n = static_cast<double>(kept.size());
  for (std::size_t k = 0; k < lags.size(); ++k) {
    LagRmse lr;
    lr.lag = lags[k];
    if (!kept.empty()) {
      const Eigen::VectorXd col = report.per_replicate.col(static_cast<Eigen::Index>(k));
      lr.rmse = col.mean();
      const double var = kept.size() > 1
                             ? (col.array() - lr.rmse).square().sum() / (n - 1.0)
                             : 0.0;
      lr.standard_error = std::sqrt(var / n);
      lr.mean_abs_error = mae_sum(static_cast<Eigen::Index>(k)) / n;
    }
    report.lags.push_back(lr);
  }
  report.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return report;
}

}  // namespace lpacf
