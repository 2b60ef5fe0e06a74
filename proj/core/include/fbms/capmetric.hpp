#pragma once

#include <Eigen/Dense>
#include <array>
#include <functional>

namespace fbms::capmetric {

using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;
using Mat3 = Eigen::Matrix3d;

// Christoffel symbols: gamma[k](i,j) = \Gamma^k_{ij}.
using Christoffel = std::array<Mat3, 3>;

/// Metric tensor, its coordinate partials, Christoffels and Ricci tensor of
/// the spherical-cap family at one point of the closed unit ball.
struct MetricSample {
    double t = 0.0;
    Vec3 x = Vec3::Zero();
    Mat3 g = Mat3::Identity();
    std::array<Mat3, 3> dg{};   // dg[k](i,j) = \partial_k g_{ij}
    Christoffel gamma{};
    Mat3 ric = Mat3::Zero();
};

/// Scalar field on the ball with gradient and Hessian access. Either supplied
/// analytically or built from a value function by centered differences.
struct AmbientScalar {
    std::function<double(const Vec3&)> value;
    std::function<Vec3(const Vec3&)> gradient;
    std::function<Mat3(const Vec3&)> hessian;

    static AmbientScalar from_value(std::function<double(const Vec3&)> f,
                                    double step = 1e-5);
};

/// Metric family evaluated as plain callables; lets surface-geometry code run
/// against the cap metrics, conformal multiples of the flat metric, or test
/// metrics interchangeably.
struct MetricField {
    std::function<Mat3(const Vec3&)> metric;
    std::function<Christoffel(const Vec3&)> christoffel;
};

// g_t(x) = delta + t^2/(1 - t^2 |x|^2) x (x)^T.  |t| < 1, t^2 |x|^2 < 1.
Mat3 metric_at(double t, const Vec3& x);
// Closed form inverse: delta - t^2 x x^T.
Mat3 metric_inverse(double t, const Vec3& x);
// Analytic coordinate partials of g_t.
std::array<Mat3, 3> metric_partials(double t, const Vec3& x);

// Cap embedding into R^4; the image lies on the sphere of radius 1/|t|
// centered at (0,0,0,-1/t). Throws std::domain_error at t = 0.
Vec4 embed_sphere(double t, const Vec3& x);
// The t = 0 branch of the family: x -> (x, 0).
Vec4 embed_flat(const Vec3& x);

// Analytic Christoffels of g_t (interior points only).
Christoffel christoffel(double t, const Vec3& x);
// Analytic partials d gamma[k](i,j) / d x_l, index order [l][k](i,j).
std::array<Christoffel, 3> christoffel_partials(double t, const Vec3& x);

// Ricci tensor assembled from the curvature tensor of the analytic
// Christoffels; equals 2 t^2 g_t for this family.
Mat3 ricci_at(double t, const Vec3& x);

MetricSample sample(double t, const Vec3& x);

// Hessian and Laplacian of an ambient scalar in the metric g_t.
Mat3 hessian(const AmbientScalar& h, double t, const Vec3& x);
double laplacian(const AmbientScalar& h, double t, const Vec3& x);

// d/ds Ric(e^{-2sh} g_t) at s = 0: (n-2) Hess_g h + (Delta_g h) g, n = 3.
Mat3 conformal_ricci_derivative(const AmbientScalar& h, double t, const Vec3& x);

// Minimum over a fixed sample grid of the smallest eigenvalue of the
// g_t-Hessian of |x|^2; positive value certifies strict convexity on the grid.
double convexity_margin(double t);

// Field views.
MetricField cap_field(double t);
// e^{s phi} delta with analytic Christoffels from the gradient of phi.
MetricField conformal_flat_field(const AmbientScalar& phi, double s);
MetricField flat_field();

}  // namespace fbms::capmetric
