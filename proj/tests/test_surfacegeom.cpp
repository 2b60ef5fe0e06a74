#include <doctest.h>

#include <cmath>

#include "fbms/rotprofile.hpp"
#include "fbms/surfacegeom.hpp"

using namespace fbms;
using capmetric::Vec3;

namespace {

surfacegeom::SurfaceJet sphere_jet(double radius, double u, double v) {
    const double cu = std::cos(u), su = std::sin(u);
    const double cv = std::cos(v), sv = std::sin(v);
    surfacegeom::SurfaceJet j;
    j.p = radius * Vec3(su * cv, su * sv, cu);
    j.pu = radius * Vec3(cu * cv, cu * sv, -su);
    j.pv = radius * Vec3(-su * sv, su * cv, 0);
    j.puu = -j.p;
    j.puv = radius * Vec3(-cu * sv, cu * cv, 0);
    j.pvv = radius * Vec3(-su * cv, -su * sv, 0);
    return j;
}

}  // namespace

TEST_CASE("sphere with outward normal has H = +2/R") {
    const auto flat = capmetric::flat_field();
    for (double radius : {0.5, 1.0, 2.0}) {
        const auto jet = sphere_jet(radius, 1.1, 0.7);
        const double h = surfacegeom::mean_curvature(flat, jet, jet.p);
        CHECK(h == doctest::Approx(2.0 / radius).epsilon(1e-12));
    }
}

TEST_CASE("cylinder with outward normal has H = +1/R") {
    const auto flat = capmetric::flat_field();
    const double radius = 0.7;
    surfacegeom::SurfaceJet j;
    const double v = 0.9;
    j.p = Vec3(radius * std::cos(v), radius * std::sin(v), 0.3);
    j.pu = Vec3(0, 0, 1);
    j.pv = Vec3(-radius * std::sin(v), radius * std::cos(v), 0);
    j.puu = Vec3::Zero();
    j.puv = Vec3::Zero();
    j.pvv = Vec3(-radius * std::cos(v), -radius * std::sin(v), 0);
    const Vec3 outward(std::cos(v), std::sin(v), 0);
    CHECK(surfacegeom::mean_curvature(flat, j, outward) ==
          doctest::Approx(1.0 / radius).epsilon(1e-12));
}

TEST_CASE("unit normal is normalized and oriented") {
    const double t = 0.5;
    const auto field = capmetric::cap_field(t);
    const Vec3 p(0.2, 0.3, 0.1), pu(1, 0, 0.2), pv(0, 1, -0.1), ref(0, 0, 1);
    const Vec3 n = surfacegeom::unit_normal(field, p, pu, pv, ref);
    const auto g = field.metric(p);
    CHECK(std::abs(n.dot(g * n) - 1.0) < 1e-13);
    CHECK(std::abs(n.dot(g * pu)) < 1e-13);
    CHECK(std::abs(n.dot(g * pv)) < 1e-13);
    CHECK(n.dot(g * ref) > 0.0);
}

TEST_CASE("equatorial disk is free boundary minimal in every cap metric") {
    for (double t : {0.0, 0.4, 0.7}) {
        const auto field = capmetric::cap_field(t);
        surfacegeom::SurfaceJet j;
        const double r = 0.6, th = 1.2;
        j.p = Vec3(r * std::cos(th), r * std::sin(th), 0);
        j.pu = Vec3(std::cos(th), std::sin(th), 0);
        j.pv = Vec3(-r * std::sin(th), r * std::cos(th), 0);
        j.puu = Vec3::Zero();
        j.puv = Vec3(-std::sin(th), std::cos(th), 0);
        j.pvv = Vec3(-r * std::cos(th), -r * std::sin(th), 0);
        CHECK(std::abs(surfacegeom::mean_curvature(field, j, Vec3(0, 0, 1))) <
              1e-13);
        // orthogonal contact at the rim
        surfacegeom::SurfaceJet b = j;
        b.p = Vec3(std::cos(th), std::sin(th), 0);
        b.pu = Vec3(std::cos(th), std::sin(th), 0);
        b.pv = Vec3(-std::sin(th), std::cos(th), 0);
        CHECK(std::abs(surfacegeom::boundary_angle(field, b.p, b.pu, b.pv,
                                                   Vec3(0, 0, 1))) < 1e-13);
    }
}

TEST_CASE("euclidean catenoid is minimal") {
    const auto flat = capmetric::flat_field();
    const double a = 1.7, u = 0.4, v = 2.2;
    const double ch = std::cosh(a * u), sh = std::sinh(a * u);
    surfacegeom::SurfaceJet j;
    j.p = Vec3(ch / a * std::cos(v), ch / a * std::sin(v), u);
    j.pu = Vec3(sh * std::cos(v), sh * std::sin(v), 1);
    j.pv = Vec3(-ch / a * std::sin(v), ch / a * std::cos(v), 0);
    j.puu = Vec3(a * ch * std::cos(v), a * ch * std::sin(v), 0);
    j.puv = Vec3(-sh * std::sin(v), sh * std::cos(v), 0);
    j.pvv = Vec3(-ch / a * std::cos(v), -ch / a * std::sin(v), 0);
    CHECK(std::abs(surfacegeom::mean_curvature(
              flat, j, Vec3(std::cos(v), std::sin(v), 0))) < 1e-12);
}
