#include "lpacf/local_pacf.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lpacf/errors.hpp"

namespace lpacf {
namespace {

constexpr double kRidgeStart = 1e-8;
constexpr double kRidgeStop = 1e-2;

double condition_estimate(const Eigen::MatrixXd& m) {
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd ev = eig.eigenvalues().cwiseAbs();
  const double lo = ev.minCoeff();
  return lo > 0 ? ev.maxCoeff() / lo : std::numeric_limits<double>::infinity();
}

bool positive_definite(const Eigen::MatrixXd& m) {
  return Eigen::LLT<Eigen::MatrixXd>(m).info() == Eigen::Success;
}

// Smallest relative ridge from the doubling schedule that makes every matrix
// positive definite; 0 when none is needed. Throws NumericalFailure.
double find_ridge(std::initializer_list<const Eigen::MatrixXd*> ms, double scale,
                  const char* what) {
  const auto all_pd = [&](double eps) {
    for (const Eigen::MatrixXd* m : ms) {
      Eigen::MatrixXd r = *m;
      r.diagonal().array() += eps * scale;
      if (!positive_definite(r)) return false;
    }
    return true;
  };
  if (all_pd(0.0)) return 0.0;
  for (double eps = kRidgeStart; eps <= kRidgeStop; eps *= 2) {
    if (all_pd(eps)) return eps;
  }
  double cond = 0;
  for (const Eigen::MatrixXd* m : ms) cond = std::max(cond, condition_estimate(*m));
  throw NumericalFailure(std::string(what) + " is not positive definite after regularization",
                         cond);
}

double clamp_unit(double v, long& clamped) {
  if (v > 1.0 || v < -1.0) {
    ++clamped;
    return std::clamp(v, -1.0, 1.0);
  }
  return v;
}

}  // namespace

Eigen::VectorXd sample_autocovariance(const Eigen::VectorXd& x, int max_lag, bool demean) {
  const Eigen::Index n = x.size();
  if (max_lag < 0 || max_lag >= n) {
    throw InvalidArgument("max lag " + std::to_string(max_lag) + " out of range");
  }
  Eigen::VectorXd y = x;
  if (demean && n > 0) y.array() -= y.mean();
  Eigen::VectorXd g(max_lag + 1);
  for (int tau = 0; tau <= max_lag; ++tau) {
    g(tau) = y.head(n - tau).dot(y.tail(n - tau)) / static_cast<double>(n);
  }
  return g;
}

Eigen::VectorXd pacf_from_autocovariance(const Eigen::VectorXd& gamma, int max_lag) {
  if (max_lag < 1 || max_lag >= gamma.size()) {
    throw InvalidArgument("need autocovariances up to lag " + std::to_string(max_lag));
  }
  if (!(gamma(0) > 0)) throw DataError("zero variance: partial autocorrelation undefined");
  Eigen::VectorXd pacf = Eigen::VectorXd::Zero(max_lag);
  Eigen::VectorXd phi = Eigen::VectorXd::Zero(max_lag);
  Eigen::VectorXd prev = Eigen::VectorXd::Zero(max_lag);
  double v = gamma(0);
  for (int k = 1; k <= max_lag; ++k) {
    double num = gamma(k);
    for (int i = 1; i < k; ++i) num -= prev(i - 1) * gamma(k - i);
    const double kappa = num / v;
    phi(k - 1) = kappa;
    for (int i = 1; i < k; ++i) phi(i - 1) = prev(i - 1) - kappa * prev(k - i - 1);
    pacf(k - 1) = kappa;
    v *= 1.0 - kappa * kappa;
    prev = phi;
    // Perfectly predictable: higher orders carry no further information.
    if (!(v > 0)) break;
  }
  return pacf;
}

Eigen::VectorXd classical_pacf(const TimeSeries& ts, int max_lag, bool demean) {
  if (max_lag < 1 || 2L * max_lag >= ts.size()) {
    throw InvalidArgument("max lag " + std::to_string(max_lag) + " must lie in [1, T/2)");
  }
  return pacf_from_autocovariance(sample_autocovariance(ts.values(), max_lag, demean),
                                  max_lag);
}

LocalYwSolution local_yule_walker(const AcvAccessor& acv, int lag) {
  if (lag < 1) throw InvalidArgument("Yule-Walker order must be positive");
  const double c0 = acv(0);
  if (!(c0 > 0)) throw InvalidArgument("local variance c(0) must be positive");
  Eigen::MatrixXd full(lag + 1, lag + 1);
  for (int a = 0; a <= lag; ++a) {
    for (int b = 0; b <= lag; ++b) full(a, b) = acv(std::abs(a - b));
  }
  const double ridge = find_ridge({&full}, c0, "local Yule-Walker matrix");
  Eigen::MatrixXd gamma = full.topLeftCorner(lag, lag);
  gamma.diagonal().array() += ridge * c0;
  const Eigen::VectorXd rhs = full.col(0).tail(lag);
  LocalYwSolution out;
  out.lag = lag;
  out.ridge = ridge;
  out.phi = gamma.llt().solve(rhs);
  const double residual = (gamma * out.phi - rhs).norm();
  if (!(residual <= 1e-8 * gamma.norm() * std::max(1.0, out.phi.norm()))) {
    throw NumericalFailure("local Yule-Walker residual too large", condition_estimate(gamma));
  }
  return out;
}

PredictionSystem prediction_system(const LocalAcvGrid& acv, long t, int lag) {
  if (lag < 1 || lag > acv.max_lag()) {
    throw InvalidArgument("lag " + std::to_string(lag) + " outside local autocovariance grid");
  }
  if (t < 0 || t >= acv.length()) {
    throw InvalidArgument("time " + std::to_string(t) + " outside local autocovariance grid");
  }
  PredictionSystem ps;
  ps.backward_cov.resize(lag, lag);
  ps.forward_cov.resize(lag, lag);
  for (int r = 0; r < lag; ++r) {
    for (int s = 0; s < lag; ++s) {
      const long d = std::abs(r - s);
      ps.backward_cov(r, s) = acv.at_midpoint(2 * t + r + s, d);
      ps.forward_cov(r, s) = acv.at_midpoint(2 * t + 2 + r + s, d);
    }
  }
  const double scale = acv(t, 0);
  ps.ridge = find_ridge({&ps.backward_cov, &ps.forward_cov}, scale > 0 ? scale : 1.0,
                        "prediction covariance");
  Eigen::MatrixXd back = ps.backward_cov;
  Eigen::MatrixXd fwd = ps.forward_cov;
  back.diagonal().array() += ps.ridge * scale;
  fwd.diagonal().array() += ps.ridge * scale;

  const int m = lag - 1;
  ps.backward_coeffs = Eigen::VectorXd::Zero(lag);
  ps.forward_coeffs = Eigen::VectorXd::Zero(lag);
  ps.backward_coeffs(0) = -1;
  ps.forward_coeffs(m) = -1;
  if (m > 0) {
    ps.backward_coeffs.tail(m) =
        back.bottomRightCorner(m, m).llt().solve(back.col(0).tail(m));
    ps.forward_coeffs.head(m) = fwd.topLeftCorner(m, m).llt().solve(fwd.col(m).head(m));
  }
  ps.backward_mspe = ps.backward_coeffs.dot(back * ps.backward_coeffs);
  ps.forward_mspe = ps.forward_coeffs.dot(fwd * ps.forward_coeffs);
  if (!(ps.backward_mspe > 0) || !(ps.forward_mspe > 0)) {
    throw NumericalFailure("non-positive prediction error",
                           std::max(condition_estimate(back), condition_estimate(fwd)));
  }
  return ps;
}

std::string_view estimator_name(EstimatorKind kind) {
  return kind == EstimatorKind::windowed ? "windowed" : "wavelet";
}

std::vector<long> PointSelection::resolve(long length) const {
  std::vector<long> out;
  switch (mode) {
    case Mode::all:
      out.resize(length);
      for (long t = 0; t < length; ++t) out[t] = t;
      break;
    case Mode::stride:
      if (stride < 1) throw InvalidArgument("stride must be positive");
      for (long t = 0; t < length; t += stride) out.push_back(t);
      break;
    case Mode::list:
      out = points;
      for (long t : out) {
        if (t < 0 || t >= length) {
          throw InvalidArgument("point " + std::to_string(t) + " outside [0, " +
                                std::to_string(length - 1) + "]");
        }
      }
      std::sort(out.begin(), out.end());
      out.erase(std::unique(out.begin(), out.end()), out.end());
      break;
  }
  return out;
}

double confidence_halfwidth(long bandwidth) {
  if (bandwidth < 1) throw InvalidArgument("bandwidth must be positive");
  return 1.96 / std::sqrt(static_cast<double>(bandwidth));
}

WindowAcv weighted_local_acv(const TimeSeries& ts, long center, long bandwidth,
                             const TaperKernel& kernel, int max_lag, bool demean) {
  if (bandwidth < 1) throw InvalidArgument("bandwidth must be positive");
  if (max_lag < 0 || 2L * max_lag >= bandwidth) {
    throw InvalidArgument("max lag " + std::to_string(max_lag) + " must be below L/2");
  }
  const long T = ts.size();
  const long start = center - bandwidth / 2 + 1;
  const long lo = std::max(start, 0L);
  const long hi = std::min(start + bandwidth - 1, T - 1);
  WindowAcv out;
  out.clipped = start < 0 || start + bandwidth - 1 > T - 1;
  out.acv = Eigen::VectorXd::Zero(max_lag + 1);
  if (hi < lo) {
    throw DataError("window around " + std::to_string(center) + " holds no observations");
  }
  const long n = hi - lo + 1;
  out.effective_length = n;
  Eigen::VectorXd w(n);
  for (long i = 0; i < n; ++i) {
    w(i) = kernel((static_cast<double>(lo + i - start) + 0.5) / static_cast<double>(bandwidth));
  }
  out.weight_mass = w.sum();
  if (out.weight_mass < max_lag + 1) {
    throw DataError("insufficient window at " + std::to_string(center) + ": weight mass " +
                    std::to_string(out.weight_mass) + " below " + std::to_string(max_lag + 1));
  }
  Eigen::VectorXd y = ts.values().segment(lo, n);
  if (demean) y.array() -= w.dot(y) / out.weight_mass;
  y.array() *= w.array().sqrt();
  for (int tau = 0; tau <= max_lag && tau < n; ++tau) {
    out.acv(tau) = y.head(n - tau).dot(y.tail(n - tau)) / out.weight_mass;
  }
  return out;
}

LpacfGrid windowed_lpacf(const TimeSeries& ts, const WindowedOptions& options) {
  require_estimable(ts);
  const long T = ts.size();
  const long L = options.bandwidth > 0 ? options.bandwidth : default_bandwidth(T);
  if (L >= T) {
    throw InvalidArgument("bandwidth " + std::to_string(L) + " must be below T = " +
                          std::to_string(T));
  }
  if (options.max_lag < 1 || 2L * options.max_lag >= L) {
    throw InvalidArgument("max lag " + std::to_string(options.max_lag) +
                          " must lie in [1, L/2)");
  }
  const std::vector<long> requested = options.points.resolve(T);

  LpacfGrid grid;
  grid.kind = EstimatorKind::windowed;
  grid.series_length = T;
  grid.max_lag = options.max_lag;
  grid.bandwidth = L;
  grid.kernel = options.kernel.kind();

  std::vector<Eigen::VectorXd> rows;
  for (long t : requested) {
    WindowAcv w;
    Eigen::VectorXd pacf;
    try {
      w = weighted_local_acv(ts, t, L, options.kernel, options.max_lag, options.demean);
      if (w.effective_length < 2L * options.max_lag) {
        grid.dropped.push_back(t);
        continue;
      }
      pacf = pacf_from_autocovariance(w.acv, options.max_lag);
    } catch (const DataError&) {
      grid.dropped.push_back(t);
      continue;
    }
    for (Eigen::Index k = 0; k < pacf.size(); ++k) pacf(k) = clamp_unit(pacf(k), grid.clamped);
    grid.times.push_back(t);
    grid.boundary.push_back(w.clipped);
    grid.ci_halfwidth.push_back(confidence_halfwidth(w.effective_length));
    rows.push_back(std::move(pacf));
  }
  grid.estimates.resize(static_cast<Eigen::Index>(rows.size()), options.max_lag);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    grid.estimates.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
  }
  return grid;
}

LpacfGrid wavelet_lpacf_from_acv(const LocalAcvGrid& acv, int max_lag,
                                 const std::vector<long>& times, long boundary_margin) {
  if (max_lag < 1 || max_lag > acv.max_lag()) {
    throw InvalidArgument("max lag " + std::to_string(max_lag) +
                          " exceeds local autocovariance grid");
  }
  const long T = acv.length();
  LpacfGrid grid;
  grid.kind = EstimatorKind::wavelet;
  grid.series_length = T;
  grid.max_lag = max_lag;

  std::vector<Eigen::VectorXd> rows;
  for (long t : times) {
    if (t < 0 || t >= T) throw InvalidArgument("point " + std::to_string(t) + " outside grid");
    if (!(acv(t, 0) > 0)) {
      grid.failed.push_back(t);
      continue;
    }
    Eigen::VectorXd q(max_lag);
    try {
      const AcvAccessor local = [&acv, t](long lag) { return acv(t, lag); };
      for (int tau = 1; tau <= max_lag; ++tau) {
        const LocalYwSolution yw = local_yule_walker(local, tau);
        const PredictionSystem ps = prediction_system(acv, t, tau);
        q(tau - 1) = clamp_unit(yw.last() * std::sqrt(ps.ratio()), grid.clamped);
      }
    } catch (const NumericalFailure&) {
      grid.failed.push_back(t);
      continue;
    }
    grid.times.push_back(t);
    grid.boundary.push_back(t < boundary_margin || t > T - 1 - boundary_margin ||
                            t + max_lag > T - 1);
    rows.push_back(std::move(q));
  }
  grid.estimates.resize(static_cast<Eigen::Index>(rows.size()), max_lag);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    grid.estimates.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
  }
  return grid;
}

LpacfGrid wavelet_lpacf(const TimeSeries& ts, const WaveletOptions& options) {
  require_estimable(ts);
  if (options.max_lag < 1 || options.max_lag > 10) {
    throw InvalidArgument("wavelet estimator supports max lag 1..10");
  }
  TimeSeries work = ts;
  if (options.demean) {
    Eigen::VectorXd v = ts.values();
    v.array() -= v.mean();
    work = TimeSeries(std::move(v), ts.origin());
  }
  const SpectralEstimate est = estimate_local_acv(work, options.max_lag, options.spectral);
  std::vector<long> times = options.points.resolve(ts.size());
  for (long& t : times) t += est.offset;
  const long span = est.ews.smoothing_span;
  LpacfGrid grid = wavelet_lpacf_from_acv(est.acv, options.max_lag, times);
  // Report on original indices; the smoothing window reflects within
  // span + max_lag of either end.
  const long T = ts.size();
  const long margin = span + options.max_lag;
  for (long& t : grid.failed) t -= est.offset;
  for (std::size_t i = 0; i < grid.times.size(); ++i) {
    const long t = grid.times[i] - est.offset;
    grid.times[i] = t;
    grid.boundary[i] = t < margin || t > T - 1 - margin;
  }
  grid.series_length = T;
  grid.bandwidth = 2 * span + 1;
  return grid;
}

}  // namespace lpacf
