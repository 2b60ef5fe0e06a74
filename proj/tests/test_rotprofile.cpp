#include <doctest.h>

#include <cmath>

#include "fbms/rotprofile.hpp"

using namespace fbms::rotprofile;

TEST_CASE("critical constants") {
    const auto cc = solve_t0();
    CHECK(cc.t0 == doctest::Approx(1.1996786402577337).epsilon(1e-14));
    CHECK(std::abs(cc.t0 - 1.0 / std::tanh(cc.t0)) < 1e-14);
    CHECK(cc.r0 == doctest::Approx(2.171622980887502).epsilon(1e-14));
    CHECK(cc.r0 > cc.t0);
    CHECK(cc.t0 > 1.0);
}

TEST_CASE("flat profile reproduces the euclidean catenoid") {
    const auto cc = solve_t0();
    const auto prof = minimal_profile_ode(0.0, cc.r0, 0.0);
    REQUIRE(prof.exited_low);
    REQUIRE(prof.exited_high);
    double max_err = 0.0;
    for (double s : {-0.4, -0.2, 0.0, 0.15, 0.35}) {
        const auto pt = prof.eval(s);
        const auto ref = euclid_catenoid(cc.r0, 0.0, s);
        max_err = std::max(max_err, std::abs(pt.rho - ref.rho));
        max_err = std::max(max_err, std::abs(pt.drho - ref.drho));
    }
    CHECK(max_err < 1e-11);
}

TEST_CASE("integrator is fourth order") {
    const auto cc = solve_t0();
    auto profile_error = [&](double step) {
        const auto prof = minimal_profile_ode(0.0, cc.r0, 0.0, step);
        double err = 0.0;
        for (double s : {-0.3, 0.25}) {
            const auto pt = prof.eval(s);
            err = std::max(err, std::abs(pt.rho - euclid_catenoid(cc.r0, 0, s).rho));
        }
        return err;
    };
    const double e1 = profile_error(8e-3);
    const double e2 = profile_error(4e-3);
    CHECK(e1 / e2 > 10.0);
    CHECK(e1 / e2 < 22.0);
}

TEST_CASE("flat euler-lagrange identity rho rho'' = 1 + rho'^2") {
    for (double rho : {0.6, 1.1})
        for (double drho : {-0.4, 0.0, 0.8}) {
            const double rhs = profile_rhs(0.0, 0.2, rho, drho);
            CHECK(rho * rhs == doctest::Approx(1.0 + drho * drho).epsilon(1e-12));
        }
}

TEST_CASE("domain guards") {
    CHECK_THROWS_AS((void)minimal_profile_ode(0.0, -1.0, 0.0), std::domain_error);
    CHECK_THROWS_AS((void)minimal_profile_ode(1.5, 2.0, 0.0), std::domain_error);
    // apex outside the ball: 1/a > 1
    CHECK_THROWS_AS((void)minimal_profile_ode(0.0, 0.5, 0.0), std::domain_error);
}

TEST_CASE("boundary hit of the critical catenoid") {
    const auto cc = solve_t0();
    const auto prof = minimal_profile_ode(0.0, cc.r0, 0.0);
    const auto hp = boundary_hit(0.0, prof, +1);
    const auto hm = boundary_hit(0.0, prof, -1);
    CHECK(hp.s_star == doctest::Approx(cc.t0 / cc.r0).epsilon(1e-10));
    CHECK(hm.s_star == doctest::Approx(-cc.t0 / cc.r0).epsilon(1e-10));
    CHECK(std::abs(hp.theta) < 1e-10);
    CHECK(std::abs(hm.theta) < 1e-10);
}

TEST_CASE("mean curvature of rotational spheres and catenoids") {
    // sphere of radius R about the origin, normal away from the axis
    const double R = 0.8, s = 0.3;
    const double rho = std::sqrt(R * R - s * s);
    const double drho = -s / rho;
    const double ddrho = -R * R / (rho * rho * rho);
    CHECK(mean_curvature_rot(0.0, s, rho, drho, ddrho) ==
          doctest::Approx(2.0 / R).epsilon(1e-12));
    // euclidean catenoid
    const double a = 2.17, b = 0.1, sc = 0.25;
    const auto pt = euclid_catenoid(a, b, sc);
    CHECK(std::abs(mean_curvature_rot(0.0, sc, pt.rho, pt.drho,
                                      a * std::cosh(a * sc + b))) < 1e-12);
}

TEST_CASE("graph branch at the flat equator") {
    // plane x3 = c is minimal; a small spherical cap bends at 2/R
    CHECK(std::abs(mean_curvature_graph(0.0, 0.2, -0.1, 0.05,
                                        Eigen::Vector2d::Zero(),
                                        Eigen::Matrix2d::Zero())) < 1e-14);
    const double R = 3.0;
    Eigen::Matrix2d d2;
    d2 << -1.0 / R, 0, 0, -1.0 / R;  // apex of the sphere of radius R
    CHECK(mean_curvature_graph(0.0, 0.0, 0.0, 0.0, Eigen::Vector2d::Zero(), d2)
          == doctest::Approx(2.0 / R).epsilon(1e-12));
}

TEST_CASE("critical catenoid at t = 0") {
    const auto cc = solve_t0();
    const auto sol = solve_critical_catenoid(0.0);
    REQUIRE(sol.converged);
    CHECK(sol.a == doctest::Approx(cc.r0).epsilon(1e-10));
    CHECK(std::abs(sol.b) < 1e-10);
    CHECK(std::abs(sol.theta_plus) < 1e-10);
    CHECK(std::abs(sol.theta_minus) < 1e-10);
}

TEST_CASE("deformed catenoid solves and is even in t") {
    const auto sp = solve_critical_catenoid(0.2);
    REQUIRE(sp.converged);
    CHECK(std::max(std::abs(sp.theta_plus), std::abs(sp.theta_minus)) < 1e-10);
    const auto sm = solve_critical_catenoid(-0.2);
    REQUIRE(sm.converged);
    CHECK(sp.a == doctest::Approx(sm.a).epsilon(1e-9));
    CHECK(std::abs(sp.b) < 1e-8);
}

TEST_CASE("solver outside the empirical range reports failure") {
    const auto sol = solve_critical_catenoid(0.9);
    CHECK_FALSE(sol.converged);
}

TEST_CASE("solver is deterministic") {
    const auto s1 = solve_critical_catenoid(0.15);
    const auto s2 = solve_critical_catenoid(0.15);
    CHECK(s1.a == s2.a);
    CHECK(s1.b == s2.b);
    CHECK(s1.residual_history == s2.residual_history);
}

TEST_CASE("sweep carries warm starts across the grid") {
    const auto cc = solve_t0();
    std::vector<double> grid;
    for (int i = 0; i <= 6; ++i) grid.push_back(0.05 * i);
    const auto rows = sweep(grid);
    REQUIRE(rows.size() == 7);
    for (const auto& row : rows) CHECK(row.converged);
    CHECK(rows[0].a == doctest::Approx(cc.r0).epsilon(1e-10));
}
