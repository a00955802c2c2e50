#include "lpacf/wavelets.hpp"

#include <algorithm>
#include <cmath>

namespace lpacf {

BProductClosed b_product_closed(int l, int j, int i) {
  detail::check_scale(l);
  detail::check_scale(j);
  detail::check_scale(i);
  const int s = std::min(i, j);
  const int g = std::max(i, j);
  const auto p2 = [](double e) { return std::exp2(e); };
  BProductClosed out;

  if (s > l) {
    out.part = 'A';
    const double c = p2(2.0 * l - 1) + 1;
    if (s == g) {
      out.value = p2(-s) * c;
    } else if (g == s + 1) {
      out.value = p2(-s) * c * p2(-1.5);
    } else {
      out.value = p2(-s / 2.0) * p2(-g / 2.0) * c / 6.0;
    }
  } else if (g < l) {
    out.part = 'B';
    if (s == g) {
      out.value = p2(-l) * (p2(2.0 * s - 1) + 1);
    } else {
      out.value = 1.5 * p2(-l) * p2(-g / 2.0) * p2(2.5 * s - 1);
    }
  } else if (s < l && l < g) {
    out.part = 'C';
    if (g == l + 1) {
      out.value = p2(-(l + 1) / 2.0) * p2(1.5 * s) * (p2(s - l) + 2) / 8.0;
    } else {
      out.value = p2(-g / 2.0) * p2(1.5 * s) * (2 - p2(s - l)) / 8.0;
    }
  } else if (s == l && g == l) {
    out.part = 'E';
    out.value = p2(-l) * (p2(2.0 * l) + 5) / 3.0;
  } else if (s == l) {
    // One index equal to l, the other coarser. The derivation replaces a
    // partial sum by an approximation with error at most 5 * 2^{-l} before
    // the 2^{-(g-l)/2} prefactor.
    out.part = 'D';
    out.form = BForm::approximate;
    const double head = g == l + 1 ? 17.0 / 9.0 : 17.0 / 27.0;
    out.value = p2(-(g - l) / 2.0) * head * p2(l - 3.0);
    out.tolerance = p2(-(g - l) / 2.0) * 5.0 * p2(-l);
  } else {
    // g == l, s < l.
    out.part = 'D';
    out.form = BForm::bound_only;
    out.value = p2(1.5 * s) * p2(-l / 2.0);
  }
  return out;
}

}  // namespace lpacf
