#include <doctest.h>

#include <array>
#include <cmath>
#include <random>

#include "lpacf/errors.hpp"
#include "lpacf/spectral.hpp"
#include "lpacf/wavelets.hpp"

using namespace lpacf;
using doctest::Approx;

namespace {

TimeSeries noise(long n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> z;
  Eigen::VectorXd v(n);
  for (long i = 0; i < n; ++i) v(i) = z(rng);
  return TimeSeries(v);
}

}  // namespace

TEST_CASE("non-decimated Haar transform") {
  CHECK(nondecimated_haar_transform(TimeSeries(Eigen::VectorXd::Zero(16)), 4).isZero());
  CHECK(nondecimated_haar_transform(TimeSeries(Eigen::VectorXd::Constant(16, 3.5)), 4)
            .cwiseAbs()
            .maxCoeff() < 1e-14);

  const long k0 = 5;
  Eigen::VectorXd x = Eigen::VectorXd::Zero(16);
  x(k0) = haar_coefficient(1, 0);
  x(k0 + 1) = haar_coefficient(1, 1);
  const Eigen::MatrixXd d = nondecimated_haar_transform(TimeSeries(x), 3);
  CHECK(d(0, k0) == Approx(1.0));

  // Against an explicit periodic convolution.
  const TimeSeries ts = noise(32, 7);
  const Eigen::MatrixXd dd = nondecimated_haar_transform(ts, 5);
  for (int j = 1; j <= 5; ++j) {
    for (long k = 0; k < 32; ++k) {
      double s = 0;
      for (long t = 0; t < 32; ++t) s += ts[t] * haar_coefficient(j, ((t - k) % 32 + 32) % 32);
      CHECK(dd(j - 1, k) == Approx(s).epsilon(1e-12));
    }
  }
  CHECK_THROWS_AS(nondecimated_haar_transform(noise(24, 1), 2), InvalidArgument);
  CHECK_THROWS_AS(nondecimated_haar_transform(noise(16, 1), 5), InvalidArgument);
}

TEST_CASE("reflect padding") {
  Eigen::VectorXd v(10);
  for (int i = 0; i < 10; ++i) v(i) = i;
  const PaddedSeries p = reflect_pad_to_dyadic(TimeSeries(v));
  CHECK(p.series.size() == 16);
  CHECK(p.offset == 3);
  for (long i = 0; i < 10; ++i) CHECK(p.series[p.offset + i] == i);
  CHECK(p.series[2] == 1.0);  // reflected about index 0
  CHECK(p.series[13] == 8.0);
}

TEST_CASE("tapered local periodogram") {
  const TimeSeries zero(Eigen::VectorXd::Zero(64));
  CHECK(local_wavelet_periodogram_tapered(zero, 32, 16, 2, kRectangular).value == 0.0);

  // Place psi_{2,.} where the window expects it: inner sum 1, H_N = N.
  const long N = 16, center = 30;
  const long start = center - N / 2 + 1;
  const long offset = N / 2 - 2;
  Eigen::VectorXd x = Eigen::VectorXd::Zero(64);
  for (long m = 0; m < 4; ++m) x(start + offset + m) = haar_coefficient(2, m);
  const TaperedValue v = local_wavelet_periodogram_tapered(TimeSeries(x), center, N, 2,
                                                           kRectangular);
  CHECK(v.value == Approx(1.0 / N));
  CHECK_FALSE(v.clipped);
  CHECK(v.retained == N);

  const TimeSeries ts = noise(64, 3);
  for (long c = 8; c < 56; c += 5) {
    CHECK(local_wavelet_periodogram_tapered(ts, c, 16, 3, kEpanechnikov).value >= 0.0);
  }
  CHECK_THROWS_AS(local_wavelet_periodogram_tapered(ts, 2, 16, 1, kRectangular), BoundaryError);
  const TaperedValue clipped =
      local_wavelet_periodogram_tapered(ts, 2, 16, 1, kRectangular, BoundaryPolicy::clip);
  CHECK(clipped.clipped);
  CHECK(clipped.retained == 11);
  CHECK_THROWS_AS(local_wavelet_periodogram_tapered(ts, 30, 15, 1, kRectangular),
                  InvalidArgument);
}

TEST_CASE("integrated periodogram") {
  const TimeSeries ts = noise(128, 11);
  const std::array<double, 4> zero{0, 0, 0, 0};
  CHECK(integrated_periodogram(ts, 60, 32, zero, kEpanechnikov).value == 0.0);
  const std::array<double, 3> indicator{0, 1, 0};
  CHECK(integrated_periodogram(ts, 60, 32, indicator, kEpanechnikov).value ==
        Approx(local_wavelet_periodogram_tapered(ts, 60, 32, 2, kEpanechnikov).value));
  const std::array<double, 3> mix{0.5, -1.0, 2.0};
  double expect = 0;
  for (int j = 1; j <= 3; ++j) {
    expect += mix[j - 1] * local_wavelet_periodogram_tapered(ts, 60, 32, j, kRectangular).value;
  }
  CHECK(integrated_periodogram(ts, 60, 32, mix, kRectangular).value == Approx(expect));
  CHECK_THROWS_AS(integrated_periodogram(ts, 5, 32, mix, kRectangular), BoundaryError);
}

TEST_CASE("smoothing and correction") {
  const TimeSeries ts = noise(64, 5);
  const Eigen::MatrixXd raw = raw_wavelet_periodogram(ts, 4);
  CHECK(raw.minCoeff() >= 0.0);

  // s = 0: correction only.
  const EwsGrid ews0 = smooth_and_correct(raw, 0);
  CHECK((a_matrix(4) * ews0.spectrum - raw).cwiseAbs().maxCoeff() < 1e-12);

  // Constant rows: A^{-1} applied to the constant vector.
  Eigen::MatrixXd flat(3, 32);
  for (int j = 0; j < 3; ++j) flat.row(j).setConstant(1.0 + j);
  const EwsGrid ewsf = smooth_and_correct(flat, 4);
  const Eigen::Vector3d mu(1.0, 2.0, 3.0);
  const Eigen::Vector3d expect = a_matrix(3).inverse() * mu;
  for (long t = 0; t < 32; ++t) {
    CHECK((ewsf.spectrum.col(t) - expect).norm() < 1e-12);
  }

  Eigen::MatrixXd one = Eigen::MatrixXd::Constant(1, 8, 0.9);
  CHECK(smooth_and_correct(one, 2).spectrum(0, 3) == Approx(0.6));

  // Running mean with reflection at the ends.
  Eigen::MatrixXd ramp(1, 8);
  for (int t = 0; t < 8; ++t) ramp(0, t) = t;
  const EwsGrid er = smooth_and_correct(ramp, 1);
  CHECK(er.spectrum(0, 4) * 1.5 == Approx(4.0));
  CHECK(er.spectrum(0, 0) * 1.5 == Approx((1.0 + 0.0 + 1.0) / 3.0));
  CHECK_THROWS_AS(smooth_and_correct(ramp, -1), InvalidArgument);
}

TEST_CASE("local autocovariance") {
  EwsGrid ews;
  ews.spectrum = Eigen::MatrixXd::Zero(3, 16);
  ews.spectrum.row(0).setOnes();
  const LocalAcvGrid c = local_autocovariance(ews, 3);
  CHECK(c(5, 0) == Approx(1.0));
  CHECK(c(5, 1) == Approx(-0.5));
  CHECK(c(5, -1) == Approx(-0.5));
  CHECK(c(5, 2) == Approx(0.0));

  EwsGrid zero;
  zero.spectrum = Eigen::MatrixXd::Zero(3, 16);
  CHECK(local_autocovariance(zero, 4).values().isZero());

  // Negative spectral values are floored.
  EwsGrid neg = zero;
  neg.spectrum(1, 4) = -2.0;
  const LocalAcvGrid cn = local_autocovariance(neg, 2);
  CHECK(cn(4, 0) == 0.0);
  CHECK(cn.floored_cells == 1);

  CHECK_THROWS_AS(local_autocovariance(zero, 8), InvalidArgument);

  // Midpoints average neighbours and clamp at the ends.
  Eigen::MatrixXd vals(4, 1);
  vals << 1, 2, 3, 4;
  const LocalAcvGrid g(vals);
  CHECK(g.at_midpoint(3, 0) == Approx(2.5));
  CHECK(g.at_midpoint(4, 0) == Approx(3.0));
  CHECK(g.at_midpoint(7, 0) == Approx(4.0));
  CHECK(g.at_midpoint(-1, 0) == Approx(1.0));
}

TEST_CASE("spectral pipeline") {
  const TimeSeries ts = noise(256, 9);
  const SpectralEstimate e = estimate_local_acv(ts, 4);
  CHECK(e.ews.max_scale() == default_max_scale(256));
  CHECK(e.ews.smoothing_span == default_smoothing_span(256));
  CHECK(e.acv.length() == 256);
  CHECK(e.acv.max_lag() == 4);
  // White noise: local variance near 1 on average.
  CHECK(e.acv.values().col(0).mean() == Approx(1.0).epsilon(0.25));

  CHECK_THROWS_AS(estimate_local_acv(noise(200, 1), 2), InvalidArgument);
  SpectralOptions pad;
  pad.pad = true;
  const SpectralEstimate p = estimate_local_acv(noise(200, 1), 2, pad);
  CHECK(p.acv.length() == 256);
  CHECK(p.offset == 28);
  CHECK(p.original_length == 200);

  CHECK(default_max_scale(512) == 8);
  CHECK(default_max_scale(64) == 6);
  CHECK(default_smoothing_span(512) == 74);
  CHECK(default_smoothing_span(256) == 42);
}
