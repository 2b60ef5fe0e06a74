#include "fbms/surfacegeom.hpp"

#include <cmath>

namespace fbms::surfacegeom {

Vec3 unit_normal(const MetricField& field, const Vec3& p, const Vec3& pu,
                 const Vec3& pv, const Vec3& ref) {
    const Mat3 g = field.metric(p);
    // g^{-1}(pu x pv) is g-orthogonal to both tangents.
    Vec3 n = g.ldlt().solve(pu.cross(pv));
    if (n.dot(g * ref) < 0.0) n = -n;
    return n / std::sqrt(n.dot(g * n));
}

double mean_curvature(const MetricField& field, const SurfaceJet& jet,
                      const Vec3& ref) {
    const Mat3 g = field.metric(jet.p);
    const auto gamma = field.christoffel(jet.p);
    const Vec3 n = unit_normal(field, jet.p, jet.pu, jet.pv, ref);
    const Vec3 gn = g * n;

    auto second_form = [&](const Vec3& ta, const Vec3& tb, const Vec3& pab) {
        Vec3 cov = pab;
        for (int k = 0; k < 3; ++k) cov[k] += ta.dot(gamma[k] * tb);
        return cov.dot(gn);
    };
    const double A11 = second_form(jet.pu, jet.pu, jet.puu);
    const double A12 = second_form(jet.pu, jet.pv, jet.puv);
    const double A22 = second_form(jet.pv, jet.pv, jet.pvv);

    const double E = jet.pu.dot(g * jet.pu);
    const double F = jet.pu.dot(g * jet.pv);
    const double G = jet.pv.dot(g * jet.pv);
    const double det = E * G - F * F;
    // Sign convention: a sphere with outward normal has H = +2/R, so that the
    // linearization of H on the flat disk is -Laplacian.
    return -(G * A11 - 2.0 * F * A12 + E * A22) / det;
}

double boundary_angle(const MetricField& field, const Vec3& p, const Vec3& pu,
                      const Vec3& pv, const Vec3& ref) {
    const Mat3 g = field.metric(p);
    Vec3 nu = g.ldlt().solve(p);  // gradient of |x|^2 in g, up to scale
    nu /= std::sqrt(nu.dot(g * nu));
    const Vec3 n = unit_normal(field, p, pu, pv, ref);
    return n.dot(g * nu);
}

}  // namespace fbms::surfacegeom
