#pragma once

// Local partial autocorrelation estimators: the windowed estimator (classical
// PACF on a kernel-weighted window) and the wavelet plug-in estimator built
// on the local autocovariance, plus the Yule-Walker and prediction-error
// machinery they share.

#include <Eigen/Dense>

#include <functional>
#include <string_view>
#include <vector>

#include "lpacf/kernel.hpp"
#include "lpacf/spectral.hpp"
#include "lpacf/time_series.hpp"

namespace lpacf {

/// Biased (1/T) sample autocovariances for lags 0..max_lag.
Eigen::VectorXd sample_autocovariance(const Eigen::VectorXd& x, int max_lag,
                                      bool demean = false);

/// Durbin-Levinson recursion: PACF at lags 1..max_lag from gamma(0..max_lag).
/// Throws DataError when gamma(0) <= 0.
Eigen::VectorXd pacf_from_autocovariance(const Eigen::VectorXd& gamma, int max_lag);

/// Sample PACF of the whole series. Requires max_lag < T/2.
Eigen::VectorXd classical_pacf(const TimeSeries& ts, int max_lag, bool demean = false);

using AcvAccessor = std::function<double(long lag)>;

struct LocalYwSolution {
  int lag = 0;
  Eigen::VectorXd phi;  ///< phi_{tau,1} .. phi_{tau,tau}
  double ridge = 0;     ///< relative ridge added, 0 when none was needed
  double last() const { return phi(phi.size() - 1); }
};

/// Solves the tau x tau Toeplitz system Gamma phi = (c(1) .. c(tau)).
/// If the (tau+1) x (tau+1) covariance matrix is not positive definite a ridge
/// eps * c(0) I is added, eps doubling from 1e-8 to 1e-2.
LocalYwSolution local_yule_walker(const AcvAccessor& acv, int lag);

struct PredictionSystem {
  Eigen::VectorXd backward_coeffs;  ///< (-1, b_1, ..., b_{tau-1})
  Eigen::VectorXd forward_coeffs;   ///< (b_{tau-2}, ..., b_0, -1)
  Eigen::MatrixXd backward_cov;     ///< times t .. t+tau-1
  Eigen::MatrixXd forward_cov;      ///< times t+1 .. t+tau
  double backward_mspe = 0;
  double forward_mspe = 0;
  double ridge = 0;
  double ratio() const { return backward_mspe / forward_mspe; }
};

/// Backcast/forecast systems at time t and lag tau. Matrix entry (r, s) is
/// c at the midpoint of the two observation times, lag |r - s|.
PredictionSystem prediction_system(const LocalAcvGrid& acv, long t, int lag);

enum class EstimatorKind { windowed, wavelet };

std::string_view estimator_name(EstimatorKind kind);

/// Which time points to estimate at.
struct PointSelection {
  enum class Mode { all, stride, list };
  Mode mode = Mode::all;
  long stride = 1;
  std::vector<long> points;

  static PointSelection all_points() { return {}; }
  static PointSelection every(long n) { return {Mode::stride, n, {}}; }
  static PointSelection explicit_points(std::vector<long> p) {
    return {Mode::list, 1, std::move(p)};
  }
  /// Throws InvalidArgument on points outside [0, length-1] or stride < 1.
  std::vector<long> resolve(long length) const;
};

struct LpacfGrid {
  EstimatorKind kind = EstimatorKind::windowed;
  long series_length = 0;
  std::vector<long> times;          ///< estimated points, ascending
  int max_lag = 0;
  Eigen::MatrixXd estimates;        ///< times.size() x max_lag, lag tau in column tau-1
  std::vector<bool> boundary;       ///< per point
  std::vector<double> ci_halfwidth; ///< per point; windowed only
  long bandwidth = 0;               ///< L (windowed) or 2s+1 (wavelet)
  KernelKind kernel = KernelKind::rectangular;
  long clamped = 0;                 ///< estimates clamped into [-1, 1]
  std::vector<long> dropped;        ///< window too short for max_lag
  std::vector<long> failed;         ///< numerical failure

  double operator()(std::size_t point, int lag) const {
    return estimates(static_cast<Eigen::Index>(point), lag - 1);
  }
};

/// 1.96 / sqrt(L).
double confidence_halfwidth(long bandwidth);

struct WindowAcv {
  Eigen::VectorXd acv;
  long effective_length = 0;
  double weight_mass = 0;
  bool clipped = false;
};

/// Kernel-weighted autocovariance on [center - L/2 + 1, center + L/2]
/// (clipped to the series). Observation at window position p gets taper
/// sqrt(h(p/L)); the lag-tau sum of tapered products is divided by sum h.
/// With the rectangular kernel this is the classical sample autocovariance
/// of the sub-series.
WindowAcv weighted_local_acv(const TimeSeries& ts, long center, long bandwidth,
                             const TaperKernel& kernel, int max_lag, bool demean = false);

struct WindowedOptions {
  long bandwidth = 0;  ///< 0 selects default_bandwidth
  TaperKernel kernel = kEpanechnikov;
  int max_lag = 4;
  PointSelection points;
  bool demean = false;
};

LpacfGrid windowed_lpacf(const TimeSeries& ts, const WindowedOptions& options);

struct WaveletOptions {
  SpectralOptions spectral;
  int max_lag = 4;
  PointSelection points;
  bool demean = false;
};

LpacfGrid wavelet_lpacf(const TimeSeries& ts, const WaveletOptions& options);

/// Wavelet estimator on a supplied local autocovariance grid.
/// `boundary_margin` points at each end are flagged.
LpacfGrid wavelet_lpacf_from_acv(const LocalAcvGrid& acv, int max_lag,
                                 const std::vector<long>& times, long boundary_margin = 0);

}  // namespace lpacf
