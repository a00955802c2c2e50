#include <doctest.h>

#include <cmath>

#include "lpacf/errors.hpp"
#include "lpacf/kernel.hpp"
#include "lpacf/verify.hpp"
#include "lpacf/wavelets.hpp"

using namespace lpacf;
using doctest::Approx;

namespace {

const double r2 = std::sqrt(2.0);

// Independent oracle: full double loop over a generous index range.
double xcorr_loop(int j, int l, long tau) {
  double s = 0;
  for (long k = -600; k <= 600; ++k) s += haar_coefficient(j, k) * haar_coefficient(l, k + tau);
  return s;
}

}  // namespace

TEST_CASE("Haar coefficients") {
  const Eigen::VectorXd h1 = haar_coefficients(1);
  REQUIRE(h1.size() == 2);
  CHECK(h1(0) == Approx(1 / r2));
  CHECK(h1(1) == Approx(-1 / r2));
  CHECK(haar_coefficient(2, 3) == -0.5);
  CHECK(haar_coefficient(3, 8) == 0.0);
  CHECK(haar_coefficient(3, -1) == 0.0);
  for (int j = 1; j <= 10; ++j) {
    const Eigen::VectorXd h = haar_coefficients(j);
    CHECK(std::abs(h.sum()) < 1e-13);
    CHECK(h.squaredNorm() == Approx(1.0));
  }
  CHECK_THROWS_AS(haar_coefficients(0), InvalidArgument);
  CHECK_THROWS_AS(haar_coefficients(31), InvalidArgument);
}

TEST_CASE("cross-scale autocorrelation by direct summation") {
  CHECK(psi_cross_bruteforce(3, 3, 0) == Approx(1.0));
  CHECK(psi_cross_bruteforce(2, 1, -1) == Approx(1 / r2));
  CHECK(psi_cross_bruteforce(2, 1, 1) == Approx(-1 / (2 * r2)));
  CHECK(psi_cross_bruteforce(2, 1, 6) == 0.0);
  for (int j = 1; j <= 5; ++j) {
    for (int l = 1; l <= 5; ++l) {
      for (long tau = -40; tau <= 40; ++tau) {
        CHECK(psi_cross_bruteforce(j, l, tau) == Approx(xcorr_loop(j, l, tau)).epsilon(1e-14));
        CHECK(psi_cross_bruteforce(j, l, tau) == psi_cross_bruteforce(l, j, -tau));
      }
      // Support (-2^j, 2^l).
      CHECK(psi_cross_bruteforce(j, l, -(1L << j)) == 0.0);
      CHECK(psi_cross_bruteforce(j, l, 1L << l) == 0.0);
    }
  }
}

TEST_CASE("cross-scale autocorrelation closed form") {
  CHECK(psi_cross_closed(2, 1, -1) == Approx(1 / r2));
  CHECK(psi_cross_closed(1, 2, 1) == Approx(1 / r2));
  for (long tau = 6; tau < 12; ++tau) CHECK(psi_cross_closed(2, 1, tau) == 0.0);
  CHECK_THROWS_AS(psi_cross_closed(3, 3, 0), InvalidArgument);
  const CheckResult r = check_psi_closed(8, 1e-12);
  CHECK_MESSAGE(r.passed, r.detail);
}

TEST_CASE("regular autocorrelation wavelet") {
  CHECK(psi_auto(1, 0) == 1.0);
  CHECK(psi_auto(1, 1) == -0.5);
  CHECK(psi_auto(3, 8) == 0.0);
  for (int j = 1; j <= 6; ++j) {
    for (long tau = -70; tau <= 70; ++tau) {
      CHECK(psi_auto(j, tau) == Approx(psi_cross_bruteforce(j, j, tau)).epsilon(1e-14));
    }
  }
}

TEST_CASE("core function") {
  CHECK(omega_core(1, 2.0) == 0.0);
  CHECK(omega_core(1, -0.75) == Approx(-1 / (4 * r2)));
  CHECK(omega_core(2, 0.0) == 0.0);
  CHECK(omega_core(0, 0.25) == Approx(psi_haar_continuous(0.25)));
  CHECK_THROWS_AS(omega_core(-1, 0.0), InvalidArgument);
  const CheckResult r = check_omega_consistency(8, 1e-12);
  CHECK_MESSAGE(r.passed, r.detail);
}

TEST_CASE("windowed cross-scale wavelets") {
  // Direct evaluation of the defining sum over t = 0..N-1.
  const auto direct = [](long N, long zT, int j, int l, long k, const TaperKernel& h) {
    double s = 0;
    for (long t = 0; t < N; ++t) {
      s += haar_coefficient(j, zT - t) * haar_coefficient(l, k - zT - t - 1 + N / 2) *
           h(static_cast<double>(t) / N);
    }
    return s;
  };
  CHECK(i_windowed(8, 16, 1, 1, 14) == Approx(direct(8, 16, 1, 1, 14, kRectangular)));
  for (long zT : {3L, 5L, 9L, 20L}) {
    for (long k = -10; k <= 60; ++k) {
      CHECK(i_windowed(8, zT, 2, 3, k) == Approx(direct(8, zT, 2, 3, k, kRectangular)));
      CHECK(i_windowed(8, zT, 3, 1, k, kEpanechnikov) ==
            Approx(direct(8, zT, 3, 1, k, kEpanechnikov)));
    }
  }
  // Vanishes past zT + N/2 + N_l - 1.
  for (int l = 1; l <= 4; ++l) {
    const long zT = 6, N = 16;
    CHECK(i_windowed(N, zT, 2, l, zT + N / 2 + (1L << l)) == 0.0);
  }
  // Window covering the whole j-support: the plain cross-correlation.
  const long N = 32, zT = 20;
  for (long k = 0; k < 80; ++k) {
    CHECK(i_windowed(N, zT, 3, 2, k) ==
          Approx(psi_cross_bruteforce(3, 2, k - 2 * zT + N / 2 - 1)));
  }
  CHECK_THROWS_AS(i_windowed(7, 10, 1, 1, 0), InvalidArgument);
}

TEST_CASE("windowed bounds and energy") {
  const CheckResult bounds = check_windowed_bounds();
  CHECK_MESSAGE(bounds.passed, bounds.detail);
  const CheckResult energy = check_windowed_energy();
  CHECK_MESSAGE(energy.passed, energy.detail);
}

TEST_CASE("A matrix") {
  CHECK(a_matrix(1)(0, 0) == Approx(1.5));
  const Eigen::MatrixXd a = a_matrix(6);
  CHECK(a(1, 1) == Approx(1.75));
  CHECK(a(0, 1) == a(1, 0));
  for (int j = 0; j < 6; ++j) CHECK(a(j, j) > 0);
  CHECK(Eigen::LLT<Eigen::MatrixXd>(a).info() == Eigen::Success);
  const CheckResult r = check_a_matrix(12);
  CHECK_MESSAGE(r.passed, r.detail);
}

TEST_CASE("B-products") {
  CHECK(b_product_bruteforce(1, 2, 2) == Approx(0.75));
  CHECK(b_product_closed(1, 2, 2).value == Approx(0.75));
  for (int l = 1; l <= 6; ++l) {
    const double part_e = std::exp2(-l) * (std::exp2(2 * l) + 5) / 3;
    CHECK(b_product_bruteforce(l, l, l) == Approx(part_e));
    CHECK(b_product_closed(l, l, l).part == 'E');
  }
  const double a2 = std::exp2(-3.0) * (std::exp2(3.0) + 1) * std::exp2(-1.5);
  CHECK(b_product_bruteforce(2, 3, 4) == Approx(a2));
  CHECK(b_product_closed(2, 3, 4).value == Approx(a2));
  const double a3 = std::exp2(-1.5) * std::exp2(-2.5) * (std::exp2(3.0) + 1) / 6;
  CHECK(b_product_bruteforce(2, 3, 5) == Approx(a3));
  CHECK(b_product_closed(2, 3, 5).value == Approx(a3));
  CHECK(b_product_closed(2, 3, 4).form == BForm::exact);
  CHECK(b_product_closed(3, 1, 3).form == BForm::bound_only);
  CHECK(b_product_closed(2, 2, 5).form == BForm::approximate);
  // Symmetric in (j, i).
  CHECK(b_product_bruteforce(2, 5, 3) == Approx(b_product_bruteforce(2, 3, 5)));
  const CheckResult r = check_b_products(6, 1e-10);
  CHECK_MESSAGE(r.passed, r.detail);
}

TEST_CASE("cosine integral identity") {
  CHECK(cosine_ratio_integral(0.5, 0.5) == Approx(2 * M_PI).epsilon(1e-10));
  CHECK(cosine_ratio_integral(1.5, 4.0) == Approx(6 * M_PI).epsilon(1e-10));
  const CheckResult r = check_integral_identity(1e-6);
  CHECK_MESSAGE(r.passed, r.detail);
}

TEST_CASE("taper kernels") {
  CHECK(kRectangular(0.3) == 1.0);
  CHECK(kRectangular(1.2) == 0.0);
  CHECK(kEpanechnikov(0.5) == Approx(0.75));
  CHECK(kEpanechnikov(0.0) == Approx(0.0));
  CHECK(kEpanechnikov(0.25) == Approx(0.75 * 0.75));
  CHECK(parse_kernel("epanechnikov").kind() == KernelKind::epanechnikov);
  CHECK(parse_kernel("rectangular").kind() == KernelKind::rectangular);
  CHECK_THROWS_AS(parse_kernel("gaussian"), InvalidArgument);
  CHECK(kRectangular.normalizer(10) == Approx(10.0));
}
