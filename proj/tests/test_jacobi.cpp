#include <doctest.h>

#include <cmath>

#include "fbms/jacobi.hpp"
#include "fbms/rotprofile.hpp"

using namespace fbms;
using jacobi::Surface;

TEST_CASE("grid resolution validation") {
    CHECK_NOTHROW(jacobi::DiskGrid(33, 32));
    CHECK_NOTHROW(jacobi::DiskGrid(129, 128));
    CHECK_THROWS_AS(jacobi::DiskGrid(30, 32), std::invalid_argument);
    CHECK_THROWS_AS(jacobi::DiskGrid(65, 48), std::invalid_argument);
    CHECK_THROWS_AS(jacobi::CylinderGrid(64, 64), std::invalid_argument);
}

TEST_CASE("disk operator on harmonic and radial test functions") {
    const jacobi::DiskGrid g;
    // harmonic: x^2 - y^2 lies in the kernel of the laplacian
    const auto harm = jacobi::SurfaceFunction::on_disk(
        g, [](double x, double y) { return x * x - y * y; });
    const auto lap_harm = jacobi::disk_jacobi_h(g, harm);
    // |x|^2 has laplacian 4
    const auto quad = jacobi::SurfaceFunction::on_disk(
        g, [](double x, double y) { return x * x + y * y; });
    const auto lap_quad = jacobi::disk_jacobi_h(g, quad);
    double e_harm = 0.0, e_quad = 0.0;
    for (int i = 0; i < g.nr; ++i)
        for (int j = 0; j < g.ntheta; ++j) {
            e_harm = std::max(e_harm, std::abs(lap_harm.at(i, j)));
            e_quad = std::max(e_quad, std::abs(lap_quad.at(i, j) + 4.0));
        }
    CHECK(e_harm < 1e-8);
    CHECK(e_quad < 1e-8);
}

TEST_CASE("disk Robin operator annihilates the kernel") {
    const jacobi::DiskGrid g;
    const auto xfun = jacobi::SurfaceFunction::on_disk(
        g, [](double x, double) { return x; });
    const auto robin = jacobi::disk_jacobi_theta(g, xfun);
    for (double v : robin) CHECK(std::abs(v) < 1e-10);
}

TEST_CASE("catenoid operator on a constant") {
    const jacobi::CylinderGrid g;
    const double r0 = rotprofile::solve_t0().r0;
    const auto one = jacobi::SurfaceFunction::on_cylinder(
        g, [](double, double) { return 1.0; });
    const auto out = jacobi::cat_jacobi_h(g, one);
    for (int i = 0; i < g.nt; ++i) {
        const double ch = std::cosh(g.t(i));
        for (int j = 0; j < g.ntheta; ++j)
            CHECK(out.at(i, j) ==
                  doctest::Approx(-2.0 * r0 * r0 / (ch * ch * ch * ch))
                      .epsilon(1e-10));
    }
}

TEST_CASE("catenoid Robin operator annihilates the kernel") {
    const jacobi::CylinderGrid g;
    const auto ker = jacobi::SurfaceFunction::on_cylinder(
        g, [](double t, double th) {
            return jacobi::catenoid_kernel_profile(t) * std::cos(th);
        });
    const auto robin = jacobi::cat_jacobi_theta(g, ker);
    for (int side = 0; side < 2; ++side)
        for (double v : robin[side]) CHECK(std::abs(v) < 1e-5);
}

TEST_CASE("mode reduction round trip with Parseval") {
    const jacobi::CylinderGrid g;
    const auto f = jacobi::SurfaceFunction::on_cylinder(
        g, [](double t, double th) {
            return std::sin(t) + 0.5 * std::cos(3 * th) + 0.1 * t * std::sin(th);
        });
    const auto md = jacobi::mode_reduce(g, f);
    CHECK(md.parseval_residual < 1e-12);
    const auto back = jacobi::mode_synthesize(g, md);
    double err = 0.0;
    for (std::size_t k = 0; k < f.values.size(); ++k)
        err = std::max(err, std::abs(f.values[k] - back.values[k]));
    CHECK(err < 1e-12);
    CHECK(md.mode_number(1) == 1);
    CHECK(md.mode_number(g.ntheta - 1) == -1);
}

TEST_CASE("closed-form fundamental systems") {
    const double t0 = rotprofile::solve_t0().t0;
    for (int n : {0, 1}) {
        const auto fp = jacobi::mode_fundamental_solutions(n);
        CHECK(fp.closed_form);
        const jacobi::FourierModeProblem mp{n, t0};
        for (double t : {-0.9, 0.1, 0.8}) {
            // wronskian constancy
            const double w = fp.u(t) * fp.dv(t) - fp.v(t) * fp.du(t);
            CHECK(w == doctest::Approx(fp.wronskian).epsilon(1e-12));
            // ODE residual via centered differences of the closed forms
            const double h = 1e-5;
            for (auto [f, df] : {std::pair{fp.u, fp.du}, std::pair{fp.v, fp.dv}}) {
                const double d2 = (f(t + h) - 2 * f(t) + f(t - h)) / (h * h);
                CHECK(std::abs(d2 + mp.potential(t) * f(t)) < 1e-5);
                const double d1 = (f(t + h) - f(t - h)) / (2 * h);
                CHECK(std::abs(d1 - df(t)) < 1e-9);
            }
        }
    }
}

TEST_CASE("integrated fundamental system for n = 2") {
    const auto fp = jacobi::mode_fundamental_solutions(2);
    CHECK_FALSE(fp.closed_form);
    CHECK(fp.wronskian == 1.0);
    for (double t : {-1.1, -0.3, 0.45, 1.0}) {
        const double w = fp.u(t) * fp.dv(t) - fp.v(t) * fp.du(t);
        CHECK(w == doctest::Approx(1.0).epsilon(1e-10));
    }
    // parity of the seeds
    CHECK(fp.u(0.7) == doctest::Approx(fp.u(-0.7)).epsilon(1e-12));
    CHECK(fp.v(0.7) == doctest::Approx(-fp.v(-0.7)).epsilon(1e-12));
}

TEST_CASE("mode dichotomy determinants") {
    CHECK(jacobi::mode_bvp_determinant(0) ==
          doctest::Approx(-1.61415605242).epsilon(1e-8));
    CHECK(std::abs(jacobi::mode_bvp_determinant(1)) < 1e-7);
    CHECK(jacobi::mode_bvp_determinant(2) ==
          doctest::Approx(-2.34889729209).epsilon(1e-6));
    for (int n : {0, 1, 2, 5})
        CHECK(jacobi::mode_bvp_determinant(n) ==
              doctest::Approx(jacobi::mode_bvp_determinant(-n)).epsilon(1e-12));
}

TEST_CASE("riccati comparison bound") {
    const auto rb = jacobi::riccati_bound_check();
    CHECK(rb.margin == doctest::Approx(0.48870895160660455).epsilon(1e-10));
    CHECK(rb.gamma_bound > 1.0);
    CHECK(rb.inv_t0 < 1.0);
    CHECK(rb.margin > 0.0);
}

TEST_CASE("kernel bases and gram matrices") {
    const auto kb = jacobi::kernel_bases();
    REQUIRE(kb.disk.size() == 2);
    REQUIRE(kb.catenoid.size() == 2);
    for (const auto& basis : {kb.disk, kb.catenoid}) {
        const auto gram = jacobi::kernel_gram(basis);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram);
        CHECK(es.eigenvalues().minCoeff() > 1e-3);
    }
    // the two catenoid elements are orthogonal by parity in theta
    const auto gram = jacobi::kernel_gram(kb.catenoid);
    CHECK(std::abs(gram(0, 1)) < 1e-10 * gram(0, 0));
}

TEST_CASE("kernel profile derivatives") {
    const double h = 1e-5;
    for (double t : {-0.8, 0.2, 1.1}) {
        const double fd1 = (jacobi::catenoid_kernel_profile(t + h) -
                            jacobi::catenoid_kernel_profile(t - h)) /
                           (2 * h);
        CHECK(fd1 ==
              doctest::Approx(jacobi::catenoid_kernel_profile_d(t)).epsilon(1e-8));
        const double fd2 = (jacobi::catenoid_kernel_profile_d(t + h) -
                            jacobi::catenoid_kernel_profile_d(t - h)) /
                           (2 * h);
        CHECK(fd2 ==
              doctest::Approx(jacobi::catenoid_kernel_profile_d2(t)).epsilon(1e-7));
    }
}

TEST_CASE("embeddings and normals") {
    const double t0 = rotprofile::solve_t0().t0;
    for (double u : {-0.9 * t0, 0.0, 0.5 * t0}) {
        const auto n = jacobi::surface_normal(Surface::Catenoid, u, 1.3);
        CHECK(std::abs(n.norm() - 1.0) < 1e-13);
    }
    // catenoid boundary sits on the unit sphere
    CHECK(std::abs(jacobi::embedding(Surface::Catenoid, t0, 0.4).norm() - 1.0) <
          1e-12);
    CHECK(std::abs(jacobi::embedding(Surface::Disk, 1.0, 2.0).norm() - 1.0) <
          1e-14);
}

TEST_CASE("conformal variations") {
    capmetric::AmbientScalar phi;
    phi.value = [](const capmetric::Vec3& x) { return x[2]; };
    phi.gradient = [](const capmetric::Vec3&) { return capmetric::Vec3(0, 0, 1); };
    phi.hessian = [](const capmetric::Vec3&) { return capmetric::Mat3::Zero(); };
    const auto var = jacobi::conformal_h_variation(Surface::Disk, phi);
    for (double v : var.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-13));
    for (double v : jacobi::conformal_theta_variation(Surface::Disk, phi))
        CHECK(v == 0.0);
}

TEST_CASE("normal perturbation FD check on smooth data") {
    const auto rep = jacobi::normal_perturbation_fd_check(
        Surface::Catenoid, [](double, double) { return 1.0; });
    CHECK(rep.max_rel_h < 1e-3);
}
