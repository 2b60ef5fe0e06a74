#pragma once

#include <string>
#include <vector>

#include "fbms/capmetric.hpp"

namespace fbms::checks {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

bool all_passed(const std::vector<CheckResult>& results);

// --- Independent oracles ------------------------------------------------
// These deliberately avoid the code paths of the quantities they check.

// Fixed point of t tanh t = 1 by plain bisection; same number as the
// production solver but through a different equation and iteration.
double bisection_t0_oracle();

// Disk radial eigenvalues from the Bessel boundary equations:
// n = 0: lambda < 0 root of k I1(k) = I0(k), lambda > 0 roots of
// J0(k) + k J1(k) = 0; n = 1: lambda = 0 exactly, then roots of
// k J0(k) = 2 J1(k). Returns the k-th eigenvalue (ascending, 0-based).
double bessel_disk_eigenvalue(int n, int k);

// Ricci tensor from a metric callable alone, all derivatives by centered
// differences of step `step`.
capmetric::Mat3 fd_ricci(
    const std::function<capmetric::Mat3(const capmetric::Vec3&)>& metric,
    const capmetric::Vec3& x, double step = 1e-4);

// --- Acceptance criteria ------------------------------------------------

CheckResult criterion_constants();
CheckResult criterion_disk_kernel();
CheckResult criterion_mode_dichotomy();
CheckResult criterion_riccati_bound();
CheckResult criterion_catenoid_family();
CheckResult criterion_conformal_variation();
CheckResult criterion_jacobi_consistency();
CheckResult criterion_degree_arithmetic();
CheckResult criterion_metric_family();
CheckResult criterion_semicontinuity();

// All ten criteria in order.
std::vector<CheckResult> acceptance_suite();
// Sub-minute subset used by the fast verification path.
std::vector<CheckResult> fast_suite();

}  // namespace fbms::checks
