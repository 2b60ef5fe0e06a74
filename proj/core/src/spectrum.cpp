#include "fbms/spectrum.hpp"

#include <Eigen/Dense>

#include "fbms/surfacegeom.hpp"
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace fbms::spectrum {

namespace {

constexpr double kPi = std::numbers::pi;

// Generalized symmetric tridiagonal problem A x = lambda M x with diagonal
// mass, reduced to ordinary form by the M^{-1/2} congruence.
std::vector<double> tridiag_eigenvalues(const std::vector<double>& diag,
                                        const std::vector<double>& sub,
                                        const std::vector<double>& mass) {
    const int n = static_cast<int>(diag.size());
    Eigen::VectorXd d(n), e(n - 1);
    for (int i = 0; i < n; ++i) d[i] = diag[i] / mass[i];
    for (int i = 0; i + 1 < n; ++i)
        e[i] = sub[i] / std::sqrt(mass[i] * mass[i + 1]);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(d, e, Eigen::EigenvaluesOnly);
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) out[i] = solver.eigenvalues()[i];
    return out;
}

void check_points(int points) {
    if (points < 33 || (points - 1) % 32 != 0)
        throw std::invalid_argument("spectrum: points must be 32k + 1");
}

struct Assembly {
    double h = 0.0;
    std::vector<double> diag, sub, mass, nodes;
};

Assembly catenoid_assembly(int n, int points) {
    check_points(points);
    const double t0 = rotprofile::solve_t0().t0;
    const int N = points;
    const double h = 2.0 * t0 / (N - 1);
    auto f = [n](double t) {
        const double ch = std::cosh(t);
        return 2.0 / (ch * ch) - static_cast<double>(n) * n;
    };
    Assembly a;
    a.h = h;
    a.diag.resize(N);
    a.sub.assign(N - 1, -1.0 / (h * h));
    a.mass.assign(N, 1.0);
    a.nodes.resize(N);
    for (int i = 0; i < N; ++i) {
        const double t = -t0 + h * i;
        a.nodes[i] = t;
        if (i == 0 || i == N - 1) {
            // ghost elimination of phi(+-t0) -+ t0 phi'(+-t0) = 0; the Robin
            // term lowers the diagonal
            a.diag[i] = 1.0 / (h * h) - 1.0 / (t0 * h) - 0.5 * f(t);
            a.mass[i] = 0.5;
        } else {
            a.diag[i] = 2.0 / (h * h) - f(t);
        }
    }
    return a;
}

Assembly disk_assembly(int n, int points) {
    check_points(points);
    const int N = points;
    const double h = 1.0 / (N - 1);
    // finite volume rows scaled by 1/h; flux r u' through cell faces
    const int i0 = n == 0 ? 0 : 1;  // u(0) = 0 for n >= 1
    const int m = N - i0;
    Assembly a;
    a.h = h;
    a.diag.resize(m);
    a.sub.resize(m - 1);
    a.mass.resize(m);
    a.nodes.resize(m);
    for (int i = i0; i < N; ++i) {
        const double r = h * i;
        const double rl = r - 0.5 * h, rr = r + 0.5 * h;
        const int k = i - i0;
        a.nodes[k] = r;
        if (i == 0) {
            a.diag[k] = rr / (h * h);
            a.mass[k] = h / 8.0;
        } else if (i == N - 1) {
            a.diag[k] = rl / (h * h) - 1.0 / h + 0.5 * n * n / r;
            a.mass[k] = 0.5 * r;
        } else {
            a.diag[k] = (rl + rr) / (h * h) + n * n / r;
            a.mass[k] = r;
        }
        if (i < N - 1) a.sub[k] = -rr / (h * h);
    }
    return a;
}

Assembly assemble(jacobi::Surface surface, int n, int points) {
    return surface == jacobi::Surface::Disk ? disk_assembly(n, points)
                                            : catenoid_assembly(n, points);
}

}  // namespace

ModeSpectrum catenoid_mode_spectrum(int n, int points) {
    const Assembly a = catenoid_assembly(n, points);
    ModeSpectrum ms;
    ms.n = n;
    ms.points = points;
    ms.h = a.h;
    ms.eigenvalues = tridiag_eigenvalues(a.diag, a.sub, a.mass);
    return ms;
}

ModeSpectrum disk_mode_spectrum(int n, int points) {
    const Assembly a = disk_assembly(n, points);
    ModeSpectrum ms;
    ms.n = n;
    ms.points = points;
    ms.h = a.h;
    ms.eigenvalues = tridiag_eigenvalues(a.diag, a.sub, a.mass);
    return ms;
}

ModeEigenpair mode_eigenpair(jacobi::Surface surface, int n, int points, int k) {
    const Assembly a = assemble(surface, n, points);
    const int m = static_cast<int>(a.diag.size());
    if (k < 0 || k >= m) throw std::out_of_range("mode_eigenpair: k out of range");
    Eigen::VectorXd d(m), e(m - 1);
    for (int i = 0; i < m; ++i) d[i] = a.diag[i] / a.mass[i];
    for (int i = 0; i + 1 < m; ++i)
        e[i] = a.sub[i] / std::sqrt(a.mass[i] * a.mass[i + 1]);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(d, e);
    ModeEigenpair mp;
    mp.n = n;
    mp.eigenvalue = solver.eigenvalues()[k];
    mp.nodes = a.nodes;
    mp.weights = a.mass;
    mp.vec.resize(m);
    double norm2 = 0.0;
    for (int i = 0; i < m; ++i) {
        // back to nodal values: x = M^{-1/2} y
        mp.vec[i] = solver.eigenvectors()(i, k) / std::sqrt(a.mass[i]);
        norm2 += a.mass[i] * mp.vec[i] * mp.vec[i];
    }
    for (double& v : mp.vec) v /= std::sqrt(norm2);
    return mp;
}

double weighted_correlation(const std::vector<double>& a,
                            const std::vector<double>& b,
                            const std::vector<double>& w) {
    if (a.size() != b.size() || a.size() != w.size())
        throw std::invalid_argument("weighted_correlation: size mismatch");
    double ab = 0.0, aa = 0.0, bb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ab += w[i] * a[i] * b[i];
        aa += w[i] * a[i] * a[i];
        bb += w[i] * b[i] * b[i];
    }
    if (aa == 0.0 || bb == 0.0) return 0.0;
    return std::abs(ab) / std::sqrt(aa * bb);
}

SpectralCounts nullity_and_index(jacobi::Surface surface,
                                 const std::vector<int>& levels,
                                 double zero_tol_factor) {
    if (levels.empty()) throw std::invalid_argument("nullity_and_index: no levels");
    auto solve = [&](int n, int pts) {
        return surface == jacobi::Surface::Disk ? disk_mode_spectrum(n, pts)
                                                : catenoid_mode_spectrum(n, pts);
    };
    const int finest = levels.back();
    const double h_f = solve(0, levels.front()).h *
                       (levels.front() - 1) / static_cast<double>(finest - 1);
    SpectralCounts sc;
    sc.levels = levels;
    sc.zero_tol = zero_tol_factor * h_f * h_f;
    sc.smallest_abs_eigenvalue = std::numeric_limits<double>::infinity();

    int positive_streak = 0;
    for (int n = 0; positive_streak < 2; ++n) {
        const ModeSpectrum ms = solve(n, finest);
        const int mult = n == 0 ? 1 : 2;
        int neg = 0, zer = 0;
        for (double ev : ms.eigenvalues) {
            sc.smallest_abs_eigenvalue =
                std::min(sc.smallest_abs_eigenvalue, std::abs(ev));
            if (std::abs(ev) <= sc.zero_tol)
                ++zer;
            else if (ev < 0.0)
                ++neg;
        }
        sc.index += mult * neg;
        sc.nullity += mult * zer;
        sc.modes_scanned = n + 1;
        if (neg == 0 && zer == 0)
            ++positive_streak;
        else
            positive_streak = 0;
    }
    return sc;
}

EigenvalueTrack track_eigenvalue(jacobi::Surface surface, int n, int k,
                                 const std::vector<int>& levels) {
    EigenvalueTrack tr;
    tr.n = n;
    for (int pts : levels) {
        const ModeSpectrum ms = surface == jacobi::Surface::Disk
                                    ? disk_mode_spectrum(n, pts)
                                    : catenoid_mode_spectrum(n, pts);
        if (k < 0 || k >= static_cast<int>(ms.eigenvalues.size()))
            throw std::out_of_range("track_eigenvalue: k out of range");
        tr.values.push_back(ms.eigenvalues[k]);
    }
    const std::size_t m = tr.values.size();
    if (m >= 2) {
        const double lf = tr.values[m - 1], lc = tr.values[m - 2];
        tr.richardson = lf + (lf - lc) / 3.0;
    }
    if (m >= 3) {
        const double d1 = tr.values[m - 2] - tr.values[m - 3];
        const double d2 = tr.values[m - 1] - tr.values[m - 2];
        if (d2 != 0.0) tr.observed_order = std::log2(std::abs(d1 / d2));
    }
    return tr;
}

SemicontinuityReport semicontinuity_probe(const std::vector<double>& t_values,
                                          double tol) {
    using jacobi::Vec3;

    auto probe = [&](double t) {
        const auto field = capmetric::cap_field(t);
        const auto sol = rotprofile::solve_critical_catenoid(t);
        if (!sol.converged)
            throw std::runtime_error("semicontinuity_probe: catenoid solve failed");
        const rotprofile::Profile& prof = sol.profile;
        const double s_hi = rotprofile::boundary_hit(t, prof, +1).s_star;
        const double s_lo = rotprofile::boundary_hit(t, prof, -1).s_star;

        auto map = [&prof](double u, double v) {
            const auto pt = prof.eval(u);
            return Vec3(pt.rho * std::cos(v), pt.rho * std::sin(v), u);
        };
        // Normal components of the two tilting rotation generators; exact
        // Jacobi kernel elements for every t by rotational symmetry of g_t.
        auto killing = [&](int axis) {
            return [&field, map, axis](double u, double v) {
                const double h = 1e-3;
                const Vec3 p = map(u, v);
                const Vec3 pu = (map(u + h, v) - map(u - h, v)) / (2 * h);
                const Vec3 pv = (map(u, v + h) - map(u, v - h)) / (2 * h);
                const Vec3 ref(std::cos(v), std::sin(v), 0.0);
                const Vec3 n = surfacegeom::unit_normal(field, p, pu, pv, ref);
                Vec3 gen = axis == 0 ? Vec3(0.0, -p[2], p[1])
                                     : Vec3(p[2], 0.0, -p[0]);
                return static_cast<double>(gen.dot(field.metric(p) * n));
            };
        };
        std::vector<std::function<double(double, double)>> basis = {
            killing(0),
            killing(1),
            [](double, double) { return 1.0; },
            [](double u, double) { return u; },
            [](double, double v) { return std::cos(v); },
            [](double, double v) { return std::sin(v); },
            [](double u, double) { return u * u; },
            [](double u, double v) { return u * std::cos(v); },
        };

        const double mid = 0.5 * (s_lo + s_hi), half = 0.5 * (s_hi - s_lo);
        std::vector<std::pair<double, double>> interior;
        for (double f : {-0.8, -0.4, 0.0, 0.4, 0.8})
            for (int j = 0; j < 8; ++j)
                interior.push_back({mid + f * half, kPi * j / 4.0});
        std::vector<std::pair<double, double>> boundary;
        for (int j = 0; j < 8; ++j) {
            boundary.push_back({s_hi, kPi * j / 4.0});
            boundary.push_back({s_lo, kPi * j / 4.0});
        }

        const int rows = static_cast<int>(interior.size() + boundary.size());
        Eigen::MatrixXd pencil(rows, static_cast<int>(basis.size()));
        for (int b = 0; b < static_cast<int>(basis.size()); ++b) {
            int r = 0;
            for (auto [u, v] : interior) {
                const Vec3 ref(std::cos(v), std::sin(v), 0.0);
                pencil(r++, b) =
                    jacobi::fd_jacobi_h(field, map, basis[b], u, v, ref, 1e-4);
            }
            for (auto [u, v] : boundary) {
                const Vec3 ref(std::cos(v), std::sin(v), 0.0);
                pencil(r++, b) = jacobi::fd_jacobi_theta(field, map, basis[b], u,
                                                         v, ref, 1e-4);
            }
        }
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(pencil);
        SemicontinuityRow row;
        row.t = t;
        row.sigma_scale = svd.singularValues()[0];
        row.sigma_min = svd.singularValues()[svd.singularValues().size() - 1];
        for (int i = 0; i < svd.singularValues().size(); ++i)
            if (svd.singularValues()[i] < tol * row.sigma_scale)
                ++row.near_kernel_dim;
        return row;
    };

    SemicontinuityReport rep;
    const SemicontinuityRow flat = probe(0.0);
    rep.flat_kernel_dim = flat.near_kernel_dim;
    rep.rows.push_back(flat);
    bool all_two = flat.near_kernel_dim == 2;
    for (double t : t_values) {
        const SemicontinuityRow row = probe(t);
        if (row.near_kernel_dim != 2) all_two = false;
        rep.rows.push_back(row);
    }
    rep.all_dim_two = all_two;
    return rep;
}

}  // namespace fbms::spectrum
