#pragma once

// Time-varying autoregressive generators, the frozen-model PACF truth and a
// Monte-Carlo RMSE harness for comparing local PACF estimators.

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <vector>

#include "lpacf/kernel.hpp"
#include "lpacf/local_pacf.hpp"
#include "lpacf/time_series.hpp"

namespace lpacf {

/// Scalar function of rescaled time z in [0, 1).
class CoefficientPath {
 public:
  enum class Shape { linear, constant };

  /// Linear: interpolates (knots[k], values[k]), flat outside the knots.
  /// Constant: values[k] on [knots[k], knots[k+1]); knots[0] should be 0.
  CoefficientPath(Shape shape, std::vector<double> knots, std::vector<double> values);

  static CoefficientPath constant(double value);
  static CoefficientPath ramp(double start, double end);

  double operator()(double z) const;

 private:
  Shape shape_;
  std::vector<double> knots_;
  std::vector<double> values_;
};

/// X_t = sum_i phi_i(t/T) X_{t-i} + sigma e_t.
struct ArPathSpec {
  std::vector<CoefficientPath> coefficients;
  double sigma = 1.0;
  long burn_in = 500;

  int order() const { return static_cast<int>(coefficients.size()); }
  Eigen::VectorXd at(double z) const;

  /// Order-one ramp from `start` to `end` over the series.
  static ArPathSpec tvar_ramp(double start, double end);
  static ArPathSpec constant(const Eigen::VectorXd& phi);
};

struct ArSegment {
  long length = 0;
  Eigen::VectorXd phi;
};

/// Segment model as a piecewise-constant path over the concatenated length.
ArPathSpec piecewise_spec(const std::vector<ArSegment>& segments);
long total_length(const std::vector<ArSegment>& segments);

/// All roots of 1 - sum phi_i B^i outside the unit circle (step-down test).
bool is_stationary(const Eigen::VectorXd& phi);

/// Reflection coefficients by the step-down recursion; equals the PACF at
/// lags 1..p of a stationary AR(p).
Eigen::VectorXd reflection_coefficients(const Eigen::VectorXd& phi);

/// Throws InvalidArgument naming the first unstable time.
TimeSeries simulate_tvar(const ArPathSpec& spec, long length, std::uint64_t seed);

TimeSeries simulate_piecewise_ar(const std::vector<ArSegment>& segments, std::uint64_t seed,
                                 double sigma = 1.0, long burn_in = 500);

/// gamma(0..max_lag) of the stationary AR(p) with coefficients phi.
Eigen::VectorXd ar_autocovariance(const Eigen::VectorXd& phi, double sigma, int max_lag);

/// PACF at lag tau of the AR model frozen at rescaled time z.
double true_tv_pacf(const ArPathSpec& spec, double z, int lag);
inline double true_tv_pacf(const ArPathSpec& spec, long t, long length, int lag) {
  return true_tv_pacf(spec, static_cast<double>(t) / static_cast<double>(length), lag);
}

enum class BenchmarkEstimator { windowed, wavelet, classical };

std::string_view benchmark_estimator_name(BenchmarkEstimator e);

struct EstimatorConfig {
  BenchmarkEstimator kind = BenchmarkEstimator::windowed;
  long bandwidth = 0;  ///< windowed L; 0 selects default_bandwidth
  TaperKernel kernel = kEpanechnikov;
  int max_scale = 0;        ///< wavelet J*; 0 selects the default
  int smoothing_span = -1;  ///< wavelet s; negative selects the default
  /// Points within this many samples of either end are not scored;
  /// negative selects bandwidth / 2 (windowed and classical) or s + max lag
  /// (wavelet).
  long margin = -1;
};

struct BenchmarkProcess {
  ArPathSpec spec;
  long length = 0;
};

BenchmarkProcess tvar_benchmark(long length = 512);
BenchmarkProcess piecewise_benchmark();

struct LagRmse {
  int lag = 0;
  double rmse = 0;
  double standard_error = 0;
  double mean_abs_error = 0;
};

struct RmseReport {
  std::string estimator;
  std::vector<LagRmse> lags;
  long replicates = 0;
  long excluded = 0;
  long bandwidth = 0;
  long scored_points = 0;
  double elapsed_seconds = 0;
  /// Per-replicate RMSE, replicate-major, one column per lag.
  Eigen::MatrixXd per_replicate;
};

/// Replicate r uses seed + r. Replicates in which the estimator fails at more
/// than 10% of the scored points are excluded and counted.
RmseReport monte_carlo_rmse(const BenchmarkProcess& process, const EstimatorConfig& config,
                            long replicates, const std::vector<int>& lags, std::uint64_t seed);

}  // namespace lpacf
