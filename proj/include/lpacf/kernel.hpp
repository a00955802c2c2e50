#pragma once

#include <string>
#include <string_view>

namespace lpacf {

enum class KernelKind { rectangular, epanechnikov };

/// Nonnegative taper h on [0,1].
///
/// The Epanechnikov form used here is h(x) = 3/4 (1 - (2x-1)^2), symmetric
/// about 1/2 and zero at both ends.
class TaperKernel {
 public:
  constexpr explicit TaperKernel(KernelKind kind = KernelKind::rectangular)
      : kind_(kind) {}

  constexpr KernelKind kind() const { return kind_; }

  template <typename Scalar>
  constexpr Scalar operator()(Scalar x) const {
    if (x < Scalar(0) || x > Scalar(1)) return Scalar(0);
    if (kind_ == KernelKind::rectangular) return Scalar(1);
    const Scalar c = Scalar(2) * x - Scalar(1);
    return Scalar(0.75) * (Scalar(1) - c * c);
  }

  /// Weight of window position t in a window of length n: h(t/n).
  double weight(long t, long n) const {
    return (*this)(static_cast<double>(t) / static_cast<double>(n));
  }

  /// H_n = sum_{t<n} h^2(t/n).
  double normalizer(long n) const;

  std::string_view name() const;

 private:
  KernelKind kind_;
};

inline constexpr TaperKernel kRectangular{KernelKind::rectangular};
inline constexpr TaperKernel kEpanechnikov{KernelKind::epanechnikov};

/// Parses "rectangular" or "epanechnikov"; throws InvalidArgument otherwise.
TaperKernel parse_kernel(std::string_view name);

}  // namespace lpacf
