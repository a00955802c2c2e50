#include "lpacf/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lpacf/errors.hpp"
#include "lpacf/wavelets.hpp"

namespace lpacf {
namespace {

int require_dyadic(const TimeSeries& ts) {
  const int J = dyadic_exponent(ts.size());
  if (J < 1) {
    throw InvalidArgument("series length " + std::to_string(ts.size()) +
                          " is not a power of two; enable padding");
  }
  return J;
}

void check_max_scale(int max_scale, int J) {
  if (max_scale < 1 || max_scale > J) {
    throw InvalidArgument("max scale " + std::to_string(max_scale) +
                          " outside [1, " + std::to_string(J) + "]");
  }
}

long reflect_index(long i, long n) {
  if (n == 1) return 0;
  const long period = 2 * (n - 1);
  i %= period;
  if (i < 0) i += period;
  return i < n ? i : period - i;
}

}  // namespace

Eigen::MatrixXd nondecimated_haar_transform(const TimeSeries& ts, int max_scale) {
  const int J = require_dyadic(ts);
  check_max_scale(max_scale, J);
  const long T = ts.size();
  const Eigen::VectorXd& x = ts.values();
  Eigen::MatrixXd d(max_scale, T);
  for (int j = 1; j <= max_scale; ++j) {
    const long half = 1L << (j - 1);
    const double amp = std::exp2(-j / 2.0);
    for (long k = 0; k < T; ++k) {
      double first = 0;
      double second = 0;
      for (long m = 0; m < half; ++m) {
        first += x((k + m) % T);
        second += x((k + half + m) % T);
      }
      d(j - 1, k) = amp * (first - second);
    }
  }
  return d;
}

PaddedSeries reflect_pad_to_dyadic(const TimeSeries& ts) {
  require_estimable(ts);
  const long T = ts.size();
  long P = 1;
  while (P < T) P <<= 1;
  const long left = (P - T) / 2;
  Eigen::VectorXd padded(P);
  for (long i = 0; i < P; ++i) padded(i) = ts[reflect_index(i - left, T)];
  return {TimeSeries(std::move(padded), ts.origin()), left, T};
}

Eigen::MatrixXd raw_wavelet_periodogram(const TimeSeries& ts, int max_scale) {
  const Eigen::MatrixXd d = nondecimated_haar_transform(ts, max_scale);
  const long T = ts.size();
  Eigen::MatrixXd raw(max_scale, T);
  for (int j = 1; j <= max_scale; ++j) {
    const long shift = (1L << (j - 1)) - 1;
    for (long t = 0; t < T; ++t) {
      const long k = ((t - shift) % T + T) % T;
      raw(j - 1, t) = d(j - 1, k) * d(j - 1, k);
    }
  }
  return raw;
}

TaperedValue local_wavelet_periodogram_tapered(const TimeSeries& ts, long center,
                                               long window, int scale,
                                               const TaperKernel& kernel,
                                               BoundaryPolicy policy) {
  if (window <= 0 || window % 2 != 0) {
    throw InvalidArgument("taper window must be a positive even integer");
  }
  detail::check_scale(scale);
  const long T = ts.size();
  const long start = center - window / 2 + 1;
  const bool clipped = start < 0 || start + window - 1 > T - 1;
  if (clipped && policy == BoundaryPolicy::strict) {
    throw BoundaryError("window [" + std::to_string(start) + ", " +
                        std::to_string(start + window - 1) +
                        "] exceeds series bounds [0, " + std::to_string(T - 1) + "]");
  }
  // Wavelet support centred in the window.
  const long offset = window / 2 - (1L << (scale - 1));
  double inner = 0;
  double h2 = 0;
  long retained = 0;
  for (long t = 0; t < window; ++t) {
    const long idx = start + t;
    if (idx < 0 || idx >= T) continue;
    const double h = kernel.weight(t, window);
    h2 += h * h;
    ++retained;
    inner += h * ts[idx] * haar_coefficient(scale, t - offset);
  }
  TaperedValue out;
  out.clipped = clipped;
  out.retained = retained;
  out.value = h2 > 0 ? inner * inner / h2 : 0.0;
  return out;
}

TaperedValue integrated_periodogram(const TimeSeries& ts, long center, long window,
                                    std::span<const double> weights,
                                    const TaperKernel& kernel, BoundaryPolicy policy) {
  TaperedValue out;
  for (std::size_t j = 0; j < weights.size(); ++j) {
    const TaperedValue v = local_wavelet_periodogram_tapered(
        ts, center, window, static_cast<int>(j) + 1, kernel, policy);
    out.value += weights[j] * v.value;
    out.clipped = v.clipped;
    out.retained = v.retained;
  }
  return out;
}

EwsGrid smooth_and_correct(const Eigen::MatrixXd& raw, int span) {
  if (span < 0) throw InvalidArgument("smoothing span must be nonnegative");
  const int J = static_cast<int>(raw.rows());
  const long T = static_cast<long>(raw.cols());
  if (J < 1 || J > 20) {
    throw InvalidArgument("correction supports 1..20 scales, got " + std::to_string(J));
  }
  Eigen::MatrixXd smoothed(J, T);
  if (span == 0) {
    smoothed = raw;
  } else {
    const double denom = 2.0 * span + 1.0;
    for (int j = 0; j < J; ++j) {
      for (long t = 0; t < T; ++t) {
        double sum = 0;
        for (long u = t - span; u <= t + span; ++u) sum += raw(j, reflect_index(u, T));
        smoothed(j, t) = sum / denom;
      }
    }
  }
  const Eigen::MatrixXd a = a_matrix(J);
  const Eigen::LLT<Eigen::MatrixXd> llt(a);
  if (llt.info() != Eigen::Success) {
    throw NumericalFailure("A matrix is not positive definite", 0.0);
  }
  EwsGrid ews;
  ews.spectrum = llt.solve(smoothed);
  ews.smoothing_span = span;
  return ews;
}

double LocalAcvGrid::at_midpoint(long twice_time, long lag) const {
  const long last = length() - 1;
  const auto clamp = [last](long t) { return std::clamp(t, 0L, last); };
  if (twice_time % 2 == 0) return (*this)(clamp(twice_time / 2), lag);
  const long lo = twice_time >= 0 ? twice_time / 2 : (twice_time - 1) / 2;
  return 0.5 * ((*this)(clamp(lo), lag) + (*this)(clamp(lo + 1), lag));
}

LocalAcvGrid local_autocovariance(const EwsGrid& ews, int max_lag) {
  const int J = ews.max_scale();
  if (max_lag < 0 || max_lag >= (1L << J)) {
    throw InvalidArgument("max lag " + std::to_string(max_lag) + " must lie in [0, 2^" +
                          std::to_string(J) + ")");
  }
  Eigen::MatrixXd psi(J, max_lag + 1);
  for (int j = 1; j <= J; ++j) {
    for (int tau = 0; tau <= max_lag; ++tau) psi(j - 1, tau) = psi_auto(j, tau);
  }
  const Eigen::MatrixXd floored = ews.spectrum.cwiseMax(0.0);
  LocalAcvGrid grid(floored.transpose() * psi);
  grid.floored_cells = (ews.spectrum.array() < 0.0).count();
  return grid;
}

int default_max_scale(long length) {
  int J = 0;
  while ((2L << J) <= length) ++J;
  return std::min(J, 8);
}

int default_smoothing_span(long length) {
  return static_cast<int>(default_bandwidth(length) / 2);
}

SpectralEstimate estimate_local_acv(const TimeSeries& ts, int max_lag,
                                    const SpectralOptions& options) {
  require_estimable(ts);
  SpectralEstimate out;
  out.original_length = ts.size();
  TimeSeries work = ts;
  if (dyadic_exponent(ts.size()) < 1) {
    if (!options.pad) {
      throw InvalidArgument("series length " + std::to_string(ts.size()) +
                            " is not a power of two; enable padding");
    }
    PaddedSeries padded = reflect_pad_to_dyadic(ts);
    work = std::move(padded.series);
    out.offset = padded.offset;
  }
  const long T = work.size();
  const int J = options.max_scale > 0 ? options.max_scale : default_max_scale(T);
  const int span = options.smoothing_span >= 0 ? options.smoothing_span
                                               : default_smoothing_span(ts.size());
  out.ews = smooth_and_correct(raw_wavelet_periodogram(work, J), span);
  out.acv = local_autocovariance(out.ews, max_lag);
  return out;
}

}  // namespace lpacf
