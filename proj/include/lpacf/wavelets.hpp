#pragma once

// Discrete non-decimated Haar wavelets and the deterministic objects built
// from them: autocorrelation wavelets, cross-scale autocorrelation wavelets
// (closed form and direct summation), the core function Omega_i, windowed
// cross-scale wavelets i_{N,z}, the A matrix and B-products.
//
// Lag convention: Psi_{j,l}(tau) = sum_k psi_{j,k} psi_{l,k+tau}. The closed
// forms below were derived from the continuous convolution psi(x - u) and
// give the discrete value at the reflected lag, so psi_cross_closed evaluates
// them at -tau. The continuous Haar wavelet runs -1 then +1 while the discrete
// psi_{j,k} runs + then -; products of two wavelets are unaffected.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "lpacf/errors.hpp"
#include "lpacf/kernel.hpp"

namespace lpacf {

inline constexpr int kMaxWaveletScale = 30;

namespace detail {

inline void check_scale(int j, int max_scale = kMaxWaveletScale) {
  if (j < 1 || j > max_scale) {
    throw InvalidArgument("wavelet scale " + std::to_string(j) +
                          " outside [1, " + std::to_string(max_scale) + "]");
  }
}

inline long dyadic(int j) { return 1L << j; }

template <typename Scalar>
Scalar pow2(Scalar e) {
  using std::exp2;
  return exp2(e);
}

}  // namespace detail

/// psi_{j,k}: +2^{-j/2} on [0, 2^{j-1}), -2^{-j/2} on [2^{j-1}, 2^j), else 0.
template <typename Scalar = double>
Scalar haar_coefficient(int j, long k) {
  detail::check_scale(j);
  const long n = detail::dyadic(j);
  if (k < 0 || k >= n) return Scalar(0);
  const Scalar amp = detail::pow2(Scalar(-j) / Scalar(2));
  return k < n / 2 ? amp : -amp;
}

template <typename Scalar = double>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> haar_coefficients(int j) {
  detail::check_scale(j);
  const long n = detail::dyadic(j);
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> psi(n);
  for (long k = 0; k < n; ++k) psi(k) = haar_coefficient<Scalar>(j, k);
  return psi;
}

/// Psi_{j,l}(tau) by exact summation over the overlap of the supports.
template <typename Scalar = double>
Scalar psi_cross_bruteforce(int j, int l, long tau) {
  detail::check_scale(j);
  detail::check_scale(l);
  const long lo = std::max(0L, -tau);
  const long hi = std::min(detail::dyadic(j), detail::dyadic(l) - tau);
  Scalar sum(0);
  for (long k = lo; k < hi; ++k) {
    sum += haar_coefficient<Scalar>(j, k) * haar_coefficient<Scalar>(l, k + tau);
  }
  return sum;
}

/// Continuous Haar autocorrelation wavelet Psi_H(u).
template <typename Scalar = double>
Scalar psi_haar_continuous(Scalar u) {
  using std::abs;
  const Scalar a = abs(u);
  if (a <= Scalar(0.5)) return Scalar(1) - Scalar(3) * a;
  if (a <= Scalar(1)) return a - Scalar(1);
  return Scalar(0);
}

/// Regular autocorrelation wavelet Psi_j(tau) = Psi_H(2^{-j} |tau|).
template <typename Scalar = double>
Scalar psi_auto(int j, long tau) {
  detail::check_scale(j);
  return psi_haar_continuous<Scalar>(static_cast<Scalar>(tau) /
                                     static_cast<Scalar>(detail::dyadic(j)));
}

/// Core function Omega_i(u) = int psi_i(x) psi(x - u) dx.
///
/// For i >= 1 this is the ten-branch piecewise form; for i = 0 the branches
/// overlap and the function reduces to Psi_H.
template <typename Scalar = double>
Scalar omega_core(int i, Scalar u) {
  if (i < 0 || i > kMaxWaveletScale) {
    throw InvalidArgument("core function index " + std::to_string(i) +
                          " outside [0, 30]");
  }
  if (i == 0) return psi_haar_continuous<Scalar>(u);
  const Scalar p = detail::pow2(Scalar(i));
  const Scalar h = p / Scalar(2);
  Scalar v(0);
  if (u < Scalar(-1)) {
    v = Scalar(0);
  } else if (u < Scalar(-0.5)) {
    v = -(u + Scalar(1));
  } else if (u < Scalar(0)) {
    v = u;
  } else if (u < h - Scalar(1)) {
    v = Scalar(0);
  } else if (u < h - Scalar(0.5)) {
    v = Scalar(2) * u - p + Scalar(2);
  } else if (u < h) {
    v = p - Scalar(2) * u;
  } else if (u < p - Scalar(1)) {
    v = Scalar(0);
  } else if (u < p - Scalar(0.5)) {
    v = p - u - Scalar(1);
  } else if (u < p) {
    v = u - p;
  }
  return detail::pow2(Scalar(-i) / Scalar(2)) * v;
}

namespace detail {

// Cross-scale Haar autocorrelation in the continuous-convolution convention,
// l < j.
template <typename Scalar>
Scalar haar_xcorr_fine_second(int j, int l, Scalar t) {
  const Scalar L = pow2(Scalar(l));
  const Scalar J = pow2(Scalar(j));
  Scalar v(0);
  if (t < -L) {
    v = Scalar(0);
  } else if (t < -L / 2) {
    v = -(t / L + Scalar(1));
  } else if (t < Scalar(0)) {
    v = t / L;
  } else if (t < J / 2 - L) {
    v = Scalar(0);
  } else if (t < J / 2 - L / 2) {
    v = (Scalar(2) * t - J + Scalar(2) * L) / L;
  } else if (t < J / 2) {
    v = (J - Scalar(2) * t) / L;
  } else if (t < J - L) {
    v = Scalar(0);
  } else if (t < J - L / 2) {
    v = (J - t - L) / L;
  } else if (t < J) {
    v = (t - J) / L;
  }
  return pow2(-Scalar(j - l) / Scalar(2)) * v;
}

// Same convention, l > j.
template <typename Scalar>
Scalar haar_xcorr_coarse_second(int j, int l, Scalar t) {
  const Scalar L = pow2(Scalar(l));
  const Scalar J = pow2(Scalar(j));
  Scalar v(0);
  if (t <= -L) {
    v = Scalar(0);
  } else if (t <= -L + J / 2) {
    v = -(t + L) / J;
  } else if (t <= -L + J) {
    v = (L + t - J) / J;
  } else if (t <= -L / 2) {
    v = Scalar(0);
  } else if (t <= -L / 2 + J / 2) {
    v = (L + Scalar(2) * t) / J;
  } else if (t <= -L / 2 + J) {
    v = (Scalar(2) * J - L - Scalar(2) * t) / J;
  } else if (t <= Scalar(0)) {
    v = Scalar(0);
  } else if (t <= J / 2) {
    v = -t / J;
  } else if (t <= J) {
    v = -(Scalar(1) - t / J);
  }
  return pow2(-Scalar(l - j) / Scalar(2)) * v;
}

}  // namespace detail

/// Closed-form Psi_{j,l}(tau) for j != l, evaluated at the reflected lag.
template <typename Scalar = double>
Scalar psi_cross_closed(int j, int l, long tau) {
  detail::check_scale(j);
  detail::check_scale(l);
  if (j == l) {
    throw InvalidArgument("psi_cross_closed requires distinct scales; use psi_auto");
  }
  const Scalar t = -static_cast<Scalar>(tau);
  return l < j ? detail::haar_xcorr_fine_second<Scalar>(j, l, t)
               : detail::haar_xcorr_coarse_second<Scalar>(j, l, t);
}

/// Windowed cross-scale autocorrelation wavelet i_{N,z}(j, l, k) with the
/// window ending at zT:
///   sum_{s = zT-N+1}^{zT} psi_{j,s} psi_{l, s+k-2zT+N/2-1} h((zT - s)/N).
template <typename Scalar = double>
Scalar i_windowed(long window, long center, int j, int l, long k,
                  const TaperKernel& kernel = kRectangular) {
  if (window <= 0 || window % 2 != 0) {
    throw InvalidArgument("window length must be a positive even integer");
  }
  detail::check_scale(j);
  detail::check_scale(l);
  const long lo = std::max(center - window + 1, 0L);
  const long hi = std::min(center, detail::dyadic(j) - 1);
  const long shift = k - 2 * center + window / 2 - 1;
  Scalar sum(0);
  for (long s = lo; s <= hi; ++s) {
    const Scalar w = kernel(static_cast<Scalar>(center - s) /
                            static_cast<Scalar>(window));
    sum += haar_coefficient<Scalar>(j, s) *
           haar_coefficient<Scalar>(l, s + shift) * w;
  }
  return sum;
}

/// A_{j,l} = sum_tau Psi_j(tau) Psi_l(tau), scales 1..J.
template <typename Scalar = double>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> a_matrix(int max_scale) {
  detail::check_scale(max_scale, 20);
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> a(max_scale, max_scale);
  for (int j = 1; j <= max_scale; ++j) {
    for (int l = j; l <= max_scale; ++l) {
      const long reach = detail::dyadic(j);
      Scalar sum(0);
      for (long tau = -reach + 1; tau < reach; ++tau) {
        sum += psi_auto<Scalar>(j, tau) * psi_auto<Scalar>(l, tau);
      }
      a(j - 1, l - 1) = sum;
      a(l - 1, j - 1) = sum;
    }
  }
  return a;
}

/// B^{(0)}_l(j, i) = sum_p |Psi_{j,l}(p) Psi_{i,l}(p)| by direct summation.
template <typename Scalar = double>
Scalar b_product_bruteforce(int l, int j, int i) {
  detail::check_scale(l, 14);
  detail::check_scale(j, 14);
  detail::check_scale(i, 14);
  using std::abs;
  // Psi_{j,l} vanishes outside (-2^j, 2^l).
  const long lo = -detail::dyadic(std::min(i, j)) + 1;
  const long hi = detail::dyadic(l);
  Scalar sum(0);
  for (long p = lo; p < hi; ++p) {
    sum += abs(psi_cross_bruteforce<Scalar>(j, l, p) *
               psi_cross_bruteforce<Scalar>(i, l, p));
  }
  return sum;
}

enum class BForm {
  exact,        ///< closed-form equality
  approximate,  ///< equality up to a stated error bound
  bound_only,   ///< only an upper bound is available
};

struct BProductClosed {
  BForm form = BForm::exact;
  /// Closed-form value, or the upper bound when form == bound_only.
  double value = 0;
  /// Admissible |closed - exact| for approximate forms; 0 otherwise.
  double tolerance = 0;
  /// Which part of the Haar B-product result applies ('A' .. 'E').
  char part = 'A';
};

/// Closed-form Haar B-product for any ordering of (j, i), using symmetry
/// B_l(j, i) = B_l(i, j).
BProductClosed b_product_closed(int l, int j, int i);

/// Upper bound K 2^{-(j+i)/2} 2^{2l} without the constant K.
inline double b_product_overall_scale(int l, int j, int i) {
  return std::exp2(-(j + i) / 2.0 + 2.0 * l);
}

}  // namespace lpacf
