#include "fbms/capmetric.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace fbms::capmetric {

namespace {

void require_domain(double t, const Vec3& x) {
    if (t * t * x.squaredNorm() >= 1.0)
        throw std::domain_error("capmetric: t^2 |x|^2 >= 1");
}

}  // namespace

AmbientScalar AmbientScalar::from_value(std::function<double(const Vec3&)> f,
                                        double step) {
    AmbientScalar out;
    out.value = f;
    out.gradient = [f, step](const Vec3& x) {
        Vec3 g;
        for (int i = 0; i < 3; ++i) {
            Vec3 e = Vec3::Zero();
            e[i] = step;
            g[i] = (f(x + e) - f(x - e)) / (2.0 * step);
        }
        return g;
    };
    out.hessian = [f, step](const Vec3& x) {
        Mat3 h;
        for (int i = 0; i < 3; ++i) {
            Vec3 ei = Vec3::Zero();
            ei[i] = step;
            h(i, i) = (f(x + ei) - 2.0 * f(x) + f(x - ei)) / (step * step);
            for (int j = i + 1; j < 3; ++j) {
                Vec3 ej = Vec3::Zero();
                ej[j] = step;
                h(i, j) = (f(x + ei + ej) - f(x + ei - ej) - f(x - ei + ej) +
                           f(x - ei - ej)) /
                          (4.0 * step * step);
                h(j, i) = h(i, j);
            }
        }
        return h;
    };
    return out;
}

Mat3 metric_at(double t, const Vec3& x) {
    require_domain(t, x);
    const double c = t * t / (1.0 - t * t * x.squaredNorm());
    return Mat3::Identity() + c * x * x.transpose();
}

Mat3 metric_inverse(double t, const Vec3& x) {
    require_domain(t, x);
    return Mat3::Identity() - t * t * x * x.transpose();
}

std::array<Mat3, 3> metric_partials(double t, const Vec3& x) {
    require_domain(t, x);
    const double t2 = t * t;
    const double u = 1.0 / (1.0 - t2 * x.squaredNorm());
    const double c = t2 * u;
    const double a = 2.0 * t2 * t2 * u * u;
    std::array<Mat3, 3> dg;
    for (int k = 0; k < 3; ++k) {
        Mat3 m = a * x[k] * x * x.transpose();
        for (int j = 0; j < 3; ++j) {
            m(k, j) += c * x[j];
            m(j, k) += c * x[j];
        }
        dg[k] = m;
    }
    return dg;
}

Vec4 embed_sphere(double t, const Vec3& x) {
    if (t == 0.0)
        throw std::domain_error("embed_sphere: t = 0 (use embed_flat)");
    const double sgn = t > 0.0 ? 1.0 : -1.0;
    const double root = std::sqrt(1.0 / (t * t) - x.squaredNorm());
    return Vec4(x[0], x[1], x[2], -1.0 / t + sgn * root);
}

Vec4 embed_flat(const Vec3& x) { return Vec4(x[0], x[1], x[2], 0.0); }

Christoffel christoffel(double t, const Vec3& x) {
    // Gamma^k_{ij} = t^2 x_k (g_t)_{ij}; follows from the partials of g_t and
    // the Sherman-Morrison inverse.
    const Mat3 g = metric_at(t, x);
    Christoffel gamma;
    for (int k = 0; k < 3; ++k) gamma[k] = t * t * x[k] * g;
    return gamma;
}

std::array<Christoffel, 3> christoffel_partials(double t, const Vec3& x) {
    const Mat3 g = metric_at(t, x);
    const auto dg = metric_partials(t, x);
    std::array<Christoffel, 3> out;
    for (int l = 0; l < 3; ++l)
        for (int k = 0; k < 3; ++k) {
            Mat3 m = t * t * x[k] * dg[l];
            if (l == k) m += t * t * g;
            out[l][k] = m;
        }
    return out;
}

Mat3 ricci_at(double t, const Vec3& x) {
    const auto gamma = christoffel(t, x);
    const auto dgamma = christoffel_partials(t, x);
    Mat3 ric;
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) {
            double r = 0.0;
            for (int i = 0; i < 3; ++i) {
                r += dgamma[i][i](j, k) - dgamma[j][i](i, k);
                for (int m = 0; m < 3; ++m)
                    r += gamma[i](i, m) * gamma[m](j, k) -
                         gamma[i](j, m) * gamma[m](i, k);
            }
            ric(j, k) = r;
        }
    return ric;
}

MetricSample sample(double t, const Vec3& x) {
    MetricSample s;
    s.t = t;
    s.x = x;
    s.g = metric_at(t, x);
    s.dg = metric_partials(t, x);
    s.gamma = christoffel(t, x);
    s.ric = ricci_at(t, x);
    return s;
}

Mat3 hessian(const AmbientScalar& h, double t, const Vec3& x) {
    const Vec3 grad = h.gradient(x);
    const auto gamma = christoffel(t, x);
    Mat3 out = h.hessian(x);
    for (int k = 0; k < 3; ++k) out -= grad[k] * gamma[k];
    return out;
}

double laplacian(const AmbientScalar& h, double t, const Vec3& x) {
    return (metric_inverse(t, x) * hessian(h, t, x)).trace();
}

Mat3 conformal_ricci_derivative(const AmbientScalar& h, double t,
                                const Vec3& x) {
    // n = 3: (n-2) Hess h + (Delta h) g.
    return hessian(h, t, x) + laplacian(h, t, x) * metric_at(t, x);
}

double convexity_margin(double t) {
    const AmbientScalar r2 = {
        [](const Vec3& x) { return x.squaredNorm(); },
        [](const Vec3& x) { return Vec3(2.0 * x); },
        [](const Vec3&) { return Mat3(2.0 * Mat3::Identity()); }};
    // Deterministic grid: radial shells times a fixed direction set.
    static const std::vector<Vec3> dirs = [] {
        std::vector<Vec3> d = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
        const double s = 1.0 / std::sqrt(3.0);
        for (double a : {-1.0, 1.0})
            for (double b : {-1.0, 1.0}) d.push_back(Vec3(s, a * s, b * s));
        return d;
    }();
    double margin = std::numeric_limits<double>::infinity();
    for (double r = 0.0; r <= 0.991; r += 0.11)
        for (const auto& dir : dirs) {
            const Vec3 x = r * dir;
            const Mat3 hess = hessian(r2, t, x);
            Eigen::SelfAdjointEigenSolver<Mat3> es(hess);
            margin = std::min(margin, es.eigenvalues().minCoeff());
        }
    return margin;
}

MetricField cap_field(double t) {
    return {[t](const Vec3& x) { return metric_at(t, x); },
            [t](const Vec3& x) { return christoffel(t, x); }};
}

MetricField flat_field() {
    return {[](const Vec3&) { return Mat3(Mat3::Identity()); },
            [](const Vec3&) {
                Christoffel z;
                z.fill(Mat3::Zero());
                return z;
            }};
}

MetricField conformal_flat_field(const AmbientScalar& phi, double s) {
    auto metric = [phi, s](const Vec3& x) {
        return Mat3(std::exp(s * phi.value(x)) * Mat3::Identity());
    };
    auto gamma = [phi, s](const Vec3& x) {
        // g = e^{2 psi} delta with psi = s phi / 2:
        // Gamma^k_{ij} = d_i psi delta_{kj} + d_j psi delta_{ki} - d_k psi delta_{ij}
        const Vec3 dpsi = 0.5 * s * phi.gradient(x);
        Christoffel out;
        for (int k = 0; k < 3; ++k) {
            Mat3 m = Mat3::Zero();
            for (int i = 0; i < 3; ++i) {
                m(i, k) += dpsi[i];
                m(k, i) += dpsi[i];
                m(i, i) -= dpsi[k];
            }
            out[k] = m;
        }
        return out;
    };
    return {metric, gamma};
}

}  // namespace fbms::capmetric
