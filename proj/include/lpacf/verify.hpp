#pragma once

// Property suites for the Haar formulas: closed forms against brute force,
// B-product cases, the windowed-wavelet bounds and the cosine integral
// identity. Used by `lpacf verify` and the acceptance runner.

#include <string>
#include <vector>

namespace lpacf {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  bool all_passed() const;
};

/// Closed-form Psi_{j,l} against brute force for j, l <= max_scale over the
/// whole support.
CheckResult check_psi_closed(int max_scale = 8, double tolerance = 1e-12);

/// Psi_{j,l}(tau) == Psi_{l,j}(-tau) exactly, and Omega_{j-l}(-tau/2^l)
/// against the closed form for l < j.
CheckResult check_psi_symmetry(int max_scale = 8);
CheckResult check_omega_consistency(int max_scale = 8, double tolerance = 1e-12);

/// A matrix: symmetric, invertible, diagonal equal to (2^{2j} + 5) / (3 2^j).
CheckResult check_a_matrix(int max_scale = 12);

/// Parts with equalities within `tolerance`, approximate and bound-only
/// parts as inequalities, and the overall bound with one fitted constant.
CheckResult check_b_products(int max_scale = 8, double tolerance = 1e-10);

/// Integral over [-pi, pi] of (1-cos 2a w)(1-cos 2b w)/(1-cos w), by
/// adaptive Simpson quadrature.
double cosine_ratio_integral(double a, double b, double tolerance = 1e-12);
CheckResult check_integral_identity(double tolerance = 1e-6);

/// Bounds on |i_{N,z}(j,l,k)| with the rectangular kernel over
/// N in {8,16,32}, j,l <= 5, all k, at the given window end points.
CheckResult check_windowed_bounds(const std::vector<long>& centers);
CheckResult check_windowed_bounds();

/// sum_k sum_{j<=8} i_{N,z}(j,l,k)^2 / 4^l for l = 1..6 stays at most 1 and
/// does not grow from the first three scales to the last three.
CheckResult check_windowed_energy();

enum class VerifySuite { all, psi, bproducts, integral, bounds };

VerifySuite parse_verify_suite(const std::string& name);
VerifyReport run_verification(VerifySuite suite = VerifySuite::all);

}  // namespace lpacf
