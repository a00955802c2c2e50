#pragma once

#include <Eigen/Core>

#include <string>
#include <vector>

namespace lpacf {

/// Finite real-valued observations X_0 .. X_{T-1}; rescaled time z = t / T.
class TimeSeries {
 public:
  TimeSeries() = default;
  /// Throws DataError if any value is NaN or infinite.
  explicit TimeSeries(Eigen::VectorXd values, std::string origin = {});
  explicit TimeSeries(const std::vector<double>& values, std::string origin = {});

  const Eigen::VectorXd& values() const { return values_; }
  long size() const { return static_cast<long>(values_.size()); }
  double operator[](long t) const { return values_(t); }
  double rescaled_time(long t) const {
    return static_cast<double>(t) / static_cast<double>(size());
  }
  const std::string& origin() const { return origin_; }

 private:
  Eigen::VectorXd values_;
  std::string origin_;
};

/// Estimators need at least this many observations.
inline constexpr long kMinSeriesLength = 8;

/// Throws DataError when T < kMinSeriesLength.
void require_estimable(const TimeSeries& ts);

/// Default window length for both local estimators: round(T^0.8), made
/// even (148 at T = 512, 84 at T = 256).
long default_bandwidth(long length);

/// log2(T) when T is a power of two, otherwise -1.
int dyadic_exponent(long length);

}  // namespace lpacf
