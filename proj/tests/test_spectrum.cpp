#include <doctest.h>

#include <cmath>

#include "fbms/checks.hpp"
#include "fbms/spectrum.hpp"

using namespace fbms;
using jacobi::Surface;

TEST_CASE("disk mode spectra against the Bessel oracles") {
    const auto n0 = spectrum::disk_mode_spectrum(0, 1025);
    CHECK(n0.eigenvalues[0] ==
          doctest::Approx(checks::bessel_disk_eigenvalue(0, 0)).epsilon(2e-6));
    CHECK(n0.eigenvalues[1] ==
          doctest::Approx(checks::bessel_disk_eigenvalue(0, 1)).epsilon(1e-5));
    CHECK(n0.eigenvalues[2] ==
          doctest::Approx(checks::bessel_disk_eigenvalue(0, 2)).epsilon(1e-5));

    const auto n1 = spectrum::disk_mode_spectrum(1, 1025);
    CHECK(std::abs(n1.eigenvalues[0]) < 1e-9);  // scheme exact on u = r
    CHECK(n1.eigenvalues[1] ==
          doctest::Approx(checks::bessel_disk_eigenvalue(1, 1)).epsilon(1e-5));
    CHECK(n1.eigenvalues[2] ==
          doctest::Approx(checks::bessel_disk_eigenvalue(1, 2)).epsilon(1e-5));

    const auto n2 = spectrum::disk_mode_spectrum(2, 1025);
    CHECK(n2.eigenvalues[0] > 0.0);
}

TEST_CASE("catenoid mode spectra") {
    const auto n0 = spectrum::catenoid_mode_spectrum(0, 1025);
    // frozen reference: two negative modes, second exactly -1 (the shifted
    // kernel of n = 1)
    CHECK(n0.eigenvalues[0] == doctest::Approx(-2.253156238).epsilon(1e-6));
    CHECK(n0.eigenvalues[1] == doctest::Approx(-1.0).epsilon(1e-5));
    CHECK(n0.eigenvalues[2] > 0.0);

    const auto n1 = spectrum::catenoid_mode_spectrum(1, 1025);
    CHECK(n1.eigenvalues[0] < 0.0);
    CHECK(std::abs(n1.eigenvalues[1]) < 1e-5);
    CHECK(n1.eigenvalues[2] > 0.0);

    const auto n2 = spectrum::catenoid_mode_spectrum(2, 1025);
    CHECK(n2.eigenvalues[0] > 0.0);
}

TEST_CASE("potential shift moves the whole spectrum by n^2") {
    const auto n0 = spectrum::catenoid_mode_spectrum(0, 257);
    const auto n2 = spectrum::catenoid_mode_spectrum(2, 257);
    for (int k = 0; k < 5; ++k)
        CHECK(n2.eigenvalues[k] ==
              doctest::Approx(n0.eigenvalues[k] + 4.0).epsilon(1e-10));
}

TEST_CASE("nullity and index of both surfaces") {
    const auto disk = spectrum::nullity_and_index(Surface::Disk);
    CHECK(disk.nullity == 2);
    CHECK(disk.index == 1);
    CHECK(disk.smallest_abs_eigenvalue < 1e-6);

    const auto cat = spectrum::nullity_and_index(Surface::Catenoid);
    CHECK(cat.nullity == 2);
    CHECK(cat.index == 4);
}

TEST_CASE("zero tolerance scales with the mesh") {
    const auto coarse = spectrum::nullity_and_index(Surface::Disk, {257});
    const auto fine = spectrum::nullity_and_index(Surface::Disk, {1025});
    CHECK(coarse.zero_tol == doctest::Approx(16.0 * fine.zero_tol).epsilon(1e-10));
}

TEST_CASE("eigenvalue track shows second-order convergence") {
    const auto tr = spectrum::track_eigenvalue(Surface::Disk, 0, 0);
    REQUIRE(tr.values.size() == 3);
    CHECK(tr.observed_order == doctest::Approx(2.0).epsilon(0.2));
    const double exact = checks::bessel_disk_eigenvalue(0, 0);
    CHECK(std::abs(tr.richardson - exact) < std::abs(tr.values.back() - exact));
}

TEST_CASE("zero eigenfunction matches the radial kernel factor") {
    const auto pair = spectrum::mode_eigenpair(Surface::Disk, 1, 513, 0);
    CHECK(std::abs(pair.eigenvalue) < 1e-9);
    CHECK(spectrum::weighted_correlation(pair.vec, pair.nodes, pair.weights) >
          0.9999);
}

TEST_CASE("input validation") {
    CHECK_THROWS_AS((void)spectrum::disk_mode_spectrum(0, 100),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)spectrum::mode_eigenpair(Surface::Disk, 0, 257, -1),
                    std::out_of_range);
}

TEST_CASE("semicontinuity probe keeps the rotation kernel") {
    const auto rep = spectrum::semicontinuity_probe({0.05});
    CHECK(rep.flat_kernel_dim == 2);
    for (const auto& row : rep.rows) {
        CHECK(row.near_kernel_dim == 2);
        CHECK(row.sigma_scale > 0.0);
    }
}
