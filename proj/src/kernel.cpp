#include "lpacf/kernel.hpp"

#include <string>

#include "lpacf/errors.hpp"

namespace lpacf {

double TaperKernel::normalizer(long n) const {
  double h = 0;
  for (long t = 0; t < n; ++t) {
    const double w = weight(t, n);
    h += w * w;
  }
  return h;
}

std::string_view TaperKernel::name() const {
  return kind_ == KernelKind::rectangular ? "rectangular" : "epanechnikov";
}

TaperKernel parse_kernel(std::string_view name) {
  if (name == "rectangular") return kRectangular;
  if (name == "epanechnikov") return kEpanechnikov;
  throw InvalidArgument("unknown kernel '" + std::string(name) +
                        "' (expected rectangular or epanechnikov)");
}

}  // namespace lpacf
