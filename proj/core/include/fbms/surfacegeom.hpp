#pragma once

#include "fbms/capmetric.hpp"

namespace fbms::surfacegeom {

using capmetric::Mat3;
using capmetric::MetricField;
using capmetric::Vec3;

/// Point of a parametrized surface with first and second derivatives in the
/// two surface parameters (u, v).
struct SurfaceJet {
    Vec3 p, pu, pv, puu, puv, pvv;
};

// Unit normal in the given metric, oriented so that g(N, ref) > 0.
Vec3 unit_normal(const MetricField& field, const Vec3& p, const Vec3& pu,
                 const Vec3& pv, const Vec3& ref);

// Mean curvature H = tr A of the surface at the jet point, normal oriented
// by ref.
double mean_curvature(const MetricField& field, const SurfaceJet& jet,
                      const Vec3& ref);

// Boundary angle Theta = g(nu, N) against the outward normal of the sphere
// |x| = const through the point (the radial extension of the boundary normal
// of the unit ball).
double boundary_angle(const MetricField& field, const Vec3& p, const Vec3& pu,
                      const Vec3& pv, const Vec3& ref);

}  // namespace fbms::surfacegeom
