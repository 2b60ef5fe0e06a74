#include <doctest.h>

#include <cmath>

#include "fbms/capmetric.hpp"

using namespace fbms::capmetric;

namespace {
const Vec3 kProbe(0.31, -0.22, 0.41);
}

TEST_CASE("flat limit of the cap family") {
    CHECK((metric_at(0.0, kProbe) - Mat3::Identity()).norm() == 0.0);
    CHECK((metric_inverse(0.0, kProbe) - Mat3::Identity()).norm() == 0.0);
    for (int k = 0; k < 3; ++k) CHECK(metric_partials(0.0, kProbe)[k].norm() == 0.0);
}

TEST_CASE("closed-form inverse and partials") {
    const double t = 0.6;
    const Mat3 prod = metric_at(t, kProbe) * metric_inverse(t, kProbe);
    CHECK((prod - Mat3::Identity()).norm() < 1e-14);

    const auto dg = metric_partials(t, kProbe);
    const double h = 1e-5;
    for (int k = 0; k < 3; ++k) {
        Vec3 e = Vec3::Zero();
        e[k] = h;
        const Mat3 fd = (metric_at(t, kProbe + e) - metric_at(t, kProbe - e)) /
                        (2 * h);
        CHECK((fd - dg[k]).cwiseAbs().maxCoeff() < 1e-8);
    }
}

TEST_CASE("christoffel closed form and partials") {
    const double t = 0.5;
    const auto gm = christoffel(t, kProbe);
    const Mat3 g = metric_at(t, kProbe);
    for (int k = 0; k < 3; ++k)
        CHECK((gm[k] - t * t * kProbe[k] * g).cwiseAbs().maxCoeff() < 1e-14);

    const auto dgm = christoffel_partials(t, kProbe);
    const double h = 1e-5;
    for (int l = 0; l < 3; ++l) {
        Vec3 e = Vec3::Zero();
        e[l] = h;
        const auto gp = christoffel(t, kProbe + e);
        const auto gn = christoffel(t, kProbe - e);
        for (int k = 0; k < 3; ++k) {
            const Mat3 fd = (gp[k] - gn[k]) / (2 * h);
            CHECK((fd - dgm[l][k]).cwiseAbs().maxCoeff() < 1e-8);
        }
    }
}

TEST_CASE("einstein identity of the round caps") {
    for (double t : {0.2, 0.5, 0.8}) {
        const Mat3 diff = ricci_at(t, kProbe) - 2.0 * t * t * metric_at(t, kProbe);
        CHECK(diff.cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("cap embedding lies on the round sphere") {
    const double t = 0.4;
    const Vec4 p = embed_sphere(t, kProbe);
    Vec4 center(0, 0, 0, -1.0 / t);
    CHECK(std::abs((p - center).norm() - 1.0 / t) < 1e-13);
    CHECK(embed_flat(kProbe).head<3>() == kProbe);
    CHECK(embed_flat(kProbe)[3] == 0.0);
    CHECK_THROWS_AS((void)embed_sphere(0.0, kProbe), std::domain_error);
}

TEST_CASE("domain guard at the metric singularity") {
    CHECK_THROWS_AS((void)metric_at(2.0, Vec3(0.6, 0, 0)), std::domain_error);
    CHECK_THROWS_AS((void)christoffel(2.0, Vec3(0.6, 0, 0)), std::domain_error);
}

TEST_CASE("hessian and laplacian in the flat branch") {
    AmbientScalar f;
    f.value = [](const Vec3& x) { return x.squaredNorm(); };
    f.gradient = [](const Vec3& x) { return Vec3(2.0 * x); };
    f.hessian = [](const Vec3&) { return Mat3(2.0 * Mat3::Identity()); };
    CHECK((hessian(f, 0.0, kProbe) - 2.0 * Mat3::Identity()).norm() < 1e-13);
    CHECK(laplacian(f, 0.0, kProbe) == doctest::Approx(6.0).epsilon(1e-13));
}

TEST_CASE("from_value finite differences") {
    const auto f = AmbientScalar::from_value(
        [](const Vec3& x) { return x[0] * x[0] * x[1] + x[2]; });
    const Vec3 grad = f.gradient(kProbe);
    CHECK(grad[0] == doctest::Approx(2 * kProbe[0] * kProbe[1]).epsilon(1e-6));
    CHECK(grad[2] == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(f.hessian(kProbe)(0, 1) ==
          doctest::Approx(2 * kProbe[0]).epsilon(1e-4));
}

TEST_CASE("conformal ricci derivative of a quadratic field") {
    AmbientScalar h;
    h.value = [](const Vec3& x) { return x[0] * x[1]; };
    h.gradient = [](const Vec3& x) { return Vec3(x[1], x[0], 0); };
    h.hessian = [](const Vec3&) {
        Mat3 m = Mat3::Zero();
        m(0, 1) = m(1, 0) = 1.0;
        return m;
    };
    // flat background: (n-2) Hess h + (Delta h) g = Hess h
    const Mat3 d = conformal_ricci_derivative(h, 0.0, kProbe);
    CHECK((d - h.hessian(kProbe)).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("strict convexity margin of the ball") {
    // Radial Hessian eigenvalue of ||x||^2 is 2 - 2 t^2 r^2 / (1 - t^2 r^2),
    // minimized at the outermost sample shell r = 0.99.
    auto closed_form = [](double t) {
        const double q = t * t * 0.99 * 0.99;
        return 2.0 - 2.0 * q / (1.0 - q);
    };
    CHECK(convexity_margin(0.0) == doctest::Approx(2.0));
    CHECK(convexity_margin(0.5) == doctest::Approx(closed_form(0.5)));
    CHECK(convexity_margin(0.5) > 0.0);
    // ||x||^2 stays convex only near the flat metric; the margin must
    // honestly report the loss of convexity once t^2 r^2 exceeds 1/2.
    CHECK(convexity_margin(0.9) == doctest::Approx(closed_form(0.9)));
    CHECK(convexity_margin(0.9) < 0.0);
}

TEST_CASE("field views agree with the closed forms") {
    const double t = 0.35;
    const auto field = cap_field(t);
    CHECK((field.metric(kProbe) - metric_at(t, kProbe)).norm() < 1e-15);
    const auto gm = field.christoffel(kProbe);
    const auto ref = christoffel(t, kProbe);
    for (int k = 0; k < 3; ++k) CHECK((gm[k] - ref[k]).norm() < 1e-15);
    CHECK((flat_field().metric(kProbe) - Mat3::Identity()).norm() == 0.0);
}
