#pragma once

// LSW spectral estimation: non-decimated Haar transform, raw and tapered
// local wavelet periodograms, smoothing with A^{-1} correction, the local
// autocovariance and the integrated local wavelet periodogram.

#include <Eigen/Dense>

#include <span>

#include "lpacf/kernel.hpp"
#include "lpacf/time_series.hpp"

namespace lpacf {

/// Coefficients d_{j,k} = sum_t X_t psi_{j, (t-k) mod T}; row j-1, column k.
/// Requires T = 2^J and 1 <= max_scale <= J.
Eigen::MatrixXd nondecimated_haar_transform(const TimeSeries& ts, int max_scale);

/// Series reflected onto the next power of two. Estimates computed on
/// `series` map back through `offset`.
struct PaddedSeries {
  TimeSeries series;
  long offset = 0;
  long original_length = 0;
};

PaddedSeries reflect_pad_to_dyadic(const TimeSeries& ts);

/// Raw periodogram d^2_{j,k} with the scale-j support centred on time t,
/// i.e. k = t - 2^{j-1} + 1 (mod T). Row j-1, column t.
Eigen::MatrixXd raw_wavelet_periodogram(const TimeSeries& ts, int max_scale);

enum class BoundaryPolicy { strict, clip };

struct TaperedValue {
  double value = 0;
  /// Window reached past either end of the series.
  bool clipped = false;
  /// Observations actually used.
  long retained = 0;
};

/// I*_N(z, j) = H_N^{-1} |sum_{t<N} h(t/N) X_{zT+t-N/2+1} psi_j(t)|^2 with the
/// scale-j wavelet centred in the window. Under BoundaryPolicy::clip, points
/// outside the series are dropped and H is summed over the retained points.
TaperedValue local_wavelet_periodogram_tapered(const TimeSeries& ts, long center,
                                               long window, int scale,
                                               const TaperKernel& kernel,
                                               BoundaryPolicy policy = BoundaryPolicy::strict);

/// J_N(z, phi) = sum_j phi_j I*_N(z, j), scales 1..weights.size().
TaperedValue integrated_periodogram(const TimeSeries& ts, long center, long window,
                                    std::span<const double> weights,
                                    const TaperKernel& kernel,
                                    BoundaryPolicy policy = BoundaryPolicy::strict);

/// Evolutionary wavelet spectrum estimate; row j-1, column t.
struct EwsGrid {
  Eigen::MatrixXd spectrum;
  int smoothing_span = 0;
  int max_scale() const { return static_cast<int>(spectrum.rows()); }
  long length() const { return static_cast<long>(spectrum.cols()); }
};

/// Running mean over 2s+1 neighbours per scale (reflected at the ends), then
/// A^{-1} applied to each time point's scale vector.
EwsGrid smooth_and_correct(const Eigen::MatrixXd& raw, int span);

/// c(t, tau) for tau = 0..max_lag; negative lags by symmetry.
class LocalAcvGrid {
 public:
  LocalAcvGrid() = default;
  explicit LocalAcvGrid(Eigen::MatrixXd values) : values_(std::move(values)) {}

  long length() const { return static_cast<long>(values_.rows()); }
  int max_lag() const { return static_cast<int>(values_.cols()) - 1; }
  const Eigen::MatrixXd& values() const { return values_; }

  double operator()(long t, long lag) const { return values_(t, lag < 0 ? -lag : lag); }

  /// c at a possibly half-integer time: the mean of the two neighbours.
  /// Times are clamped to the grid.
  double at_midpoint(long twice_time, long lag) const;

  /// Spectral cells floored at zero before synthesis.
  long floored_cells = 0;

 private:
  Eigen::MatrixXd values_;
};

/// c(t, tau) = sum_j max(S_j(t), 0) Psi_j(tau). Requires max_lag < 2^{J*}.
LocalAcvGrid local_autocovariance(const EwsGrid& ews, int max_lag);

/// min(J, 8).
int default_max_scale(long length);
/// Half the default window, so the running mean spans about as many
/// observations as the windowed estimator.
int default_smoothing_span(long length);

struct SpectralOptions {
  int max_scale = 0;        ///< 0 selects default_max_scale
  int smoothing_span = -1;  ///< negative selects default_smoothing_span
  bool pad = false;         ///< reflect-pad non-dyadic input
};

/// Whole pipeline: periodogram, smoothing and correction, local
/// autocovariance. With padding the grid covers the padded series; use
/// `offset` to map original indices.
struct SpectralEstimate {
  EwsGrid ews;
  LocalAcvGrid acv;
  long offset = 0;
  long original_length = 0;
};

SpectralEstimate estimate_local_acv(const TimeSeries& ts, int max_lag,
                                    const SpectralOptions& options = {});

}  // namespace lpacf
