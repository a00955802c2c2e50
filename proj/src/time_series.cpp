#include "lpacf/time_series.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "lpacf/errors.hpp"

namespace lpacf {

TimeSeries::TimeSeries(Eigen::VectorXd values, std::string origin)
    : values_(std::move(values)), origin_(std::move(origin)) {
  for (Eigen::Index t = 0; t < values_.size(); ++t) {
    if (!std::isfinite(values_(t))) {
      throw DataError("non-finite observation at index " + std::to_string(t));
    }
  }
}

TimeSeries::TimeSeries(const std::vector<double>& values, std::string origin)
    : TimeSeries(Eigen::Map<const Eigen::VectorXd>(values.data(),
                                                   static_cast<Eigen::Index>(values.size())),
                 std::move(origin)) {}

void require_estimable(const TimeSeries& ts) {
  if (ts.size() < kMinSeriesLength) {
    throw DataError("series of length " + std::to_string(ts.size()) +
                    " is too short; need at least " +
                    std::to_string(kMinSeriesLength) + " observations");
  }
}

long default_bandwidth(long length) {
  long L = std::lround(std::pow(static_cast<double>(length), 0.8));
  if (L % 2 != 0) ++L;
  return std::max(L, 2L);
}

int dyadic_exponent(long length) {
  if (length <= 0 || (length & (length - 1)) != 0) return -1;
  int e = 0;
  while ((1L << e) < length) ++e;
  return e;
}

}  // namespace lpacf
