#include "fbms/checks.hpp"

#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "fbms/degree.hpp"
#include "fbms/jacobi.hpp"
#include "fbms/rotprofile.hpp"
#include "fbms/spectrum.hpp"
#include "fbms/surfacegeom.hpp"

namespace fbms::checks {

namespace {

constexpr double kPi = std::numbers::pi;

using capmetric::AmbientScalar;
using capmetric::Mat3;
using capmetric::Vec3;

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

CheckResult result(const std::string& name, bool passed,
                   const std::string& detail) {
    return {name, passed, detail};
}

// Analytic parameter jets of the two reference surfaces.
surfacegeom::SurfaceJet disk_jet(double r, double th) {
    const double c = std::cos(th), s = std::sin(th);
    surfacegeom::SurfaceJet j;
    j.p = Vec3(r * c, r * s, 0);
    j.pu = Vec3(c, s, 0);
    j.pv = Vec3(-r * s, r * c, 0);
    j.puu = Vec3::Zero();
    j.puv = Vec3(-s, c, 0);
    j.pvv = Vec3(-r * c, -r * s, 0);
    return j;
}

surfacegeom::SurfaceJet catenoid_jet(double u, double v) {
    const double r0 = rotprofile::solve_t0().r0;
    const double ch = std::cosh(u), sh = std::sinh(u);
    const double c = std::cos(v), s = std::sin(v);
    surfacegeom::SurfaceJet j;
    j.p = Vec3(ch * c, ch * s, u) / r0;
    j.pu = Vec3(sh * c, sh * s, 1) / r0;
    j.pv = Vec3(-ch * s, ch * c, 0) / r0;
    j.puu = Vec3(ch * c, ch * s, 0) / r0;
    j.puv = Vec3(-sh * s, sh * c, 0) / r0;
    j.pvv = Vec3(-ch * c, -ch * s, 0) / r0;
    return j;
}

// Analytic test fields for the conformal and Ricci checks.
std::vector<AmbientScalar> test_fields() {
    std::vector<AmbientScalar> fields(3);
    fields[0].value = [](const Vec3& x) { return x[2]; };
    fields[0].gradient = [](const Vec3&) { return Vec3(0, 0, 1); };
    fields[0].hessian = [](const Vec3&) { return Mat3::Zero(); };
    fields[1].value = [](const Vec3& x) { return x[0] * x[1]; };
    fields[1].gradient = [](const Vec3& x) { return Vec3(x[1], x[0], 0); };
    fields[1].hessian = [](const Vec3&) {
        Mat3 h = Mat3::Zero();
        h(0, 1) = h(1, 0) = 1.0;
        return h;
    };
    fields[2].value = [](const Vec3& x) { return std::exp(0.5 * x[0]) + x[2] * x[1]; };
    fields[2].gradient = [](const Vec3& x) {
        return Vec3(0.5 * std::exp(0.5 * x[0]), x[2], x[1]);
    };
    fields[2].hessian = [](const Vec3& x) {
        Mat3 h = Mat3::Zero();
        h(0, 0) = 0.25 * std::exp(0.5 * x[0]);
        h(1, 2) = h(2, 1) = 1.0;
        return h;
    };
    return fields;
}

double bisect(const std::function<double(double)>& f, double lo, double hi,
              int iters) {
    double flo = f(lo);
    for (int i = 0; i < iters; ++i) {
        const double mid = 0.5 * (lo + hi);
        if ((f(mid) < 0.0) == (flo < 0.0))
            lo = mid, flo = f(mid);
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

bool all_passed(const std::vector<CheckResult>& results) {
    for (const auto& r : results)
        if (!r.passed) return false;
    return true;
}

double bisection_t0_oracle() {
    auto f = [](double t) { return t * std::tanh(t) - 1.0; };
    return bisect(f, 1.0, 1.5, 80);
}

double bessel_disk_eigenvalue(int n, int k) {
    if (n == 0) {
        if (k == 0) {
            auto f = [](double s) {
                return s * std::cyl_bessel_i(1, s) - std::cyl_bessel_i(0, s);
            };
            const double s = bisect(f, 0.5, 3.0, 80);
            return -s * s;
        }
        auto f = [](double s) {
            return std::cyl_bessel_j(0, s) + s * std::cyl_bessel_j(1, s);
        };
        // scan for the k-th sign change
        double prev = f(0.5), lo = 0.5;
        int found = 0;
        for (double s = 0.6; s < 40.0; s += 0.1) {
            const double cur = f(s);
            if (prev * cur < 0.0) {
                if (++found == k) {
                    const double root = bisect(f, lo, s, 80);
                    return root * root;
                }
            }
            prev = cur;
            lo = s;
        }
        throw std::out_of_range("bessel_disk_eigenvalue: k too large");
    }
    if (n == 1) {
        if (k == 0) return 0.0;  // u(r) = r is exact
        auto f = [](double s) {
            return s * std::cyl_bessel_j(0, s) - 2.0 * std::cyl_bessel_j(1, s);
        };
        double prev = f(0.5), lo = 0.5;
        int found = 0;
        for (double s = 0.6; s < 40.0; s += 0.1) {
            const double cur = f(s);
            if (prev * cur < 0.0) {
                if (++found == k) {
                    const double root = bisect(f, lo, s, 80);
                    return root * root;
                }
            }
            prev = cur;
            lo = s;
        }
        throw std::out_of_range("bessel_disk_eigenvalue: k too large");
    }
    throw std::invalid_argument("bessel_disk_eigenvalue: only n = 0, 1 tabulated");
}

Mat3 fd_ricci(const std::function<Mat3(const Vec3&)>& metric, const Vec3& x,
              double step) {
    auto gamma = [&](const Vec3& p) {
        std::array<Mat3, 3> dg;
        for (int k = 0; k < 3; ++k) {
            Vec3 e = Vec3::Zero();
            e[k] = step;
            dg[k] = (metric(p + e) - metric(p - e)) / (2 * step);
        }
        const Mat3 ginv = metric(p).inverse();
        capmetric::Christoffel gm;
        for (int k = 0; k < 3; ++k) {
            gm[k] = Mat3::Zero();
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j)
                    for (int l = 0; l < 3; ++l)
                        gm[k](i, j) += 0.5 * ginv(k, l) *
                                       (dg[i](l, j) + dg[j](l, i) - dg[l](i, j));
        }
        return gm;
    };
    const auto g0 = gamma(x);
    std::array<capmetric::Christoffel, 3> dgamma;
    for (int l = 0; l < 3; ++l) {
        Vec3 e = Vec3::Zero();
        e[l] = step;
        const auto gp = gamma(x + e);
        const auto gmn = gamma(x - e);
        for (int k = 0; k < 3; ++k)
            dgamma[l][k] = (gp[k] - gmn[k]) / (2 * step);
    }
    Mat3 ric = Mat3::Zero();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double v = 0.0;
            for (int k = 0; k < 3; ++k) {
                v += dgamma[k][k](i, j) - dgamma[j][k](i, k);
                for (int l = 0; l < 3; ++l)
                    v += g0[k](k, l) * g0[l](i, j) - g0[k](j, l) * g0[l](i, k);
            }
            ric(i, j) = v;
        }
    return ric;
}

CheckResult criterion_constants() {
    const auto cc = rotprofile::solve_t0();
    const double fixed_point = std::abs(cc.t0 - 1.0 / std::tanh(cc.t0));
    const double oracle = bisection_t0_oracle();
    const bool ok = fixed_point < 1e-12 && cc.t0 > 1.19 && cc.t0 < 1.21 &&
                    std::abs(cc.r0 - cc.t0 * std::cosh(cc.t0)) == 0.0 &&
                    cc.r0 > cc.t0 && cc.t0 > 1.0 &&
                    std::abs(cc.t0 - oracle) < 1e-10;
    return result("constants", ok,
                  "t0=" + fmt(cc.t0) + " r0=" + fmt(cc.r0) +
                      " |t0-coth t0|=" + fmt(fixed_point) +
                      " |t0-oracle|=" + fmt(std::abs(cc.t0 - oracle)));
}

CheckResult criterion_disk_kernel() {
    bool ok = true;
    std::string detail;
    for (int level : {257, 513, 1025}) {
        const auto sc = spectrum::nullity_and_index(jacobi::Surface::Disk, {level});
        detail += "N" + std::to_string(level) + ":nullity=" +
                  std::to_string(sc.nullity) + " ";
        if (sc.nullity != 2) ok = false;
    }
    const auto fine = spectrum::nullity_and_index(jacobi::Surface::Disk,
                                                 {257, 513, 1025});
    detail += "min|l|=" + fmt(fine.smallest_abs_eigenvalue);
    if (fine.smallest_abs_eigenvalue >= 1e-6) ok = false;
    // zero eigenfunction vs the radial factor of {x, y}
    const auto pair = spectrum::mode_eigenpair(jacobi::Surface::Disk, 1, 1025, 0);
    const double corr =
        spectrum::weighted_correlation(pair.vec, pair.nodes, pair.weights);
    detail += " corr=" + fmt(corr);
    if (!(corr > 0.999)) ok = false;
    return result("disk_kernel", ok, detail);
}

CheckResult criterion_mode_dichotomy() {
    bool ok = true;
    std::string detail = "dets:";
    for (int n = 0; n <= 8; ++n) {
        const double d = jacobi::mode_bvp_determinant(n);
        const double dm = jacobi::mode_bvp_determinant(-n);
        if (std::abs(d - dm) > 1e-12 * std::max(1.0, std::abs(d))) ok = false;
        const bool is_kernel = std::abs(d) < 1e-7;
        if (is_kernel != (n == 1)) ok = false;
        if (n <= 2) detail += fmt(d) + " ";
    }
    const double t0 = rotprofile::solve_t0().t0;
    double ode_res = 0.0;
    for (int i = 0; i <= 16; ++i) {
        const double t = -t0 + 2.0 * t0 * i / 16;
        const double ch = std::cosh(t);
        ode_res = std::max(
            ode_res, std::abs(jacobi::catenoid_kernel_profile_d2(t) +
                              (2.0 / (ch * ch) - 1.0) *
                                  jacobi::catenoid_kernel_profile(t)));
    }
    const double robin = std::max(
        std::abs(jacobi::catenoid_kernel_profile(t0) -
                 t0 * jacobi::catenoid_kernel_profile_d(t0)),
        std::abs(jacobi::catenoid_kernel_profile(-t0) +
                 t0 * jacobi::catenoid_kernel_profile_d(-t0)));
    if (ode_res >= 1e-8 || robin >= 1e-10) ok = false;
    const auto sc = spectrum::nullity_and_index(jacobi::Surface::Catenoid,
                                                {257, 513, 1025});
    if (sc.nullity != 2) ok = false;
    detail += "ode_res=" + fmt(ode_res) + " robin_res=" + fmt(robin) +
              " nullity=" + std::to_string(sc.nullity) +
              " index=" + std::to_string(sc.index);
    return result("mode_dichotomy", ok, detail);
}

CheckResult criterion_riccati_bound() {
    const auto rb = jacobi::riccati_bound_check();
    const bool ok = rb.margin > 0.4 && rb.gamma_bound > 1.0 && rb.inv_t0 < 1.0;
    return result("riccati_bound", ok, "margin=" + fmt(rb.margin));
}

CheckResult criterion_catenoid_family() {
    const auto cc = rotprofile::solve_t0();
    bool ok = true;
    std::string detail;
    double max_res = 0.0, max_h = 0.0;
    std::optional<std::pair<double, double>> warm;
    for (int i = 0; i <= 6; ++i) {
        const double t = 0.05 * i;
        const auto sol = rotprofile::solve_critical_catenoid(t, {}, warm);
        if (!sol.converged) {
            ok = false;
            detail += "t=" + fmt(t) + ":diverged ";
            continue;
        }
        warm = {{sol.a, sol.b}};
        max_res = std::max(max_res, std::max(std::abs(sol.theta_plus),
                                             std::abs(sol.theta_minus)));
        if (i == 0) {
            if (std::abs(sol.a - cc.r0) > 1e-8 || std::abs(sol.b) > 1e-8)
                ok = false;
        }
        if (std::abs(sol.b) > 1e-8) ok = false;
        const double s_hi = rotprofile::boundary_hit(t, sol.profile, +1).s_star;
        const double s_lo = rotprofile::boundary_hit(t, sol.profile, -1).s_star;
        for (int j = 1; j < 21; ++j) {
            const double s = s_lo + (s_hi - s_lo) * j / 21.0;
            const auto pt = sol.profile.eval(s);
            const double h = rotprofile::mean_curvature_rot(
                t, s, pt.rho, pt.drho, sol.profile.rho_second(s));
            max_h = std::max(max_h, std::abs(h));
        }
    }
    if (max_res >= 1e-10 || max_h >= 1e-7) ok = false;
    // evenness in t
    for (double t : {0.1, 0.25}) {
        const auto sp = rotprofile::solve_critical_catenoid(t);
        const auto sm = rotprofile::solve_critical_catenoid(-t);
        if (!sp.converged || !sm.converged || std::abs(sp.a - sm.a) > 1e-8)
            ok = false;
    }
    detail += "max_res=" + fmt(max_res) + " max|H|=" + fmt(max_h);
    return result("catenoid_family", ok, detail);
}

CheckResult criterion_conformal_variation() {
    bool ok = true;
    double worst_rel = 0.0, worst_ratio_lo = 1e30, worst_theta = 0.0;
    const double t0 = rotprofile::solve_t0().t0;
    for (const auto& phi : test_fields()) {
        for (int surf = 0; surf < 2; ++surf) {
            std::vector<std::pair<surfacegeom::SurfaceJet, Vec3>> pts;
            std::vector<surfacegeom::SurfaceJet> bpts;
            if (surf == 0) {
                for (double r : {0.3, 0.6, 0.9})
                    for (double th : {0.4, 2.1, 4.4})
                        pts.push_back({disk_jet(r, th), Vec3(0, 0, 1)});
                for (double th : {0.4, 2.1, 4.4})
                    bpts.push_back(disk_jet(1.0, th));
            } else {
                for (double u : {-0.8 * t0, 0.0, 0.6 * t0})
                    for (double v : {0.4, 2.1, 4.4})
                        pts.push_back({catenoid_jet(u, v),
                                       Vec3(std::cos(v), std::sin(v), 0)});
                for (double v : {0.4, 2.1, 4.4}) {
                    bpts.push_back(catenoid_jet(t0, v));
                    bpts.push_back(catenoid_jet(-t0, v));
                }
            }
            const auto flat = capmetric::flat_field();
            double e1 = 0.0, e2 = 0.0, scale = 0.0;
            for (const auto& [jet, ref] : pts) {
                const Vec3 n = surfacegeom::unit_normal(flat, jet.p, jet.pu,
                                                        jet.pv, ref);
                const double target = phi.gradient(jet.p).dot(n);
                scale = std::max(scale, std::abs(target));
                for (int half = 0; half < 2; ++half) {
                    const double s = half == 0 ? 0.02 : 0.01;
                    const auto fp = capmetric::conformal_flat_field(phi, s);
                    const auto fm = capmetric::conformal_flat_field(phi, -s);
                    const double d =
                        (surfacegeom::mean_curvature(fp, jet, ref) -
                         surfacegeom::mean_curvature(fm, jet, ref)) /
                        (2 * s);
                    (half == 0 ? e1 : e2) =
                        std::max(half == 0 ? e1 : e2, std::abs(d - target));
                }
            }
            const double rel = e2 / std::max(scale, 1.0);
            worst_rel = std::max(worst_rel, rel);
            if (rel >= 1e-3) ok = false;
            // the ratio is only meaningful above the roundoff floor; phi may
            // vanish on the surface, making the FD error identically zero
            if (e2 > 1e-12) {
                const double ratio = e1 / e2;
                worst_ratio_lo = std::min(worst_ratio_lo, ratio);
                if (ratio < 2.5 || ratio > 7.0) ok = false;
            }
            // Theta: the angle is conformally invariant, so the one-sided
            // difference quotient sits at roundoff for every step.
            for (const auto& jet : bpts) {
                const Vec3 ref = jet.p[2] == 0.0
                                     ? Vec3(0, 0, 1)
                                     : Vec3(jet.p[0], jet.p[1], 0).normalized();
                const double th0 = surfacegeom::boundary_angle(flat, jet.p, jet.pu,
                                                               jet.pv, ref);
                for (double s : {1e-4, 5e-5}) {
                    const auto fs = capmetric::conformal_flat_field(phi, s);
                    const double ths = surfacegeom::boundary_angle(
                        fs, jet.p, jet.pu, jet.pv, ref);
                    const double q = std::abs(ths - th0) / s;
                    worst_theta = std::max(worst_theta, q);
                    if (q >= 1e-3) ok = false;
                }
            }
        }
    }
    return result("conformal_variation", ok,
                  "max_rel_H=" + fmt(worst_rel) + " min_ratio=" +
                      fmt(worst_ratio_lo) + " max|dTheta/ds|=" + fmt(worst_theta));
}

CheckResult criterion_jacobi_consistency() {
    using jacobi::Surface;
    bool ok = true;
    std::string detail;
    // smooth non-kernel tests, constants included
    struct Probe {
        Surface surface;
        std::function<double(double, double)> phi;
    };
    const double t0 = rotprofile::solve_t0().t0;
    std::vector<Probe> probes = {
        {Surface::Disk, [](double, double) { return 1.0; }},
        {Surface::Disk, [](double u, double v) { return u * u * std::cos(v); }},
        {Surface::Catenoid, [](double, double) { return 1.0; }},
        {Surface::Catenoid,
         [](double u, double v) { return std::cos(u) + 0.3 * std::sin(v); }},
    };
    double worst = 0.0;
    for (const auto& p : probes) {
        const auto rep = jacobi::normal_perturbation_fd_check(p.surface, p.phi);
        worst = std::max(worst, rep.max_rel_h);
        if (rep.max_rel_h >= 1e-3) ok = false;
    }
    detail += "max_rel=" + fmt(worst);
    // kernel elements: first variation vanishes
    const auto kb = jacobi::kernel_bases();
    double worst_kernel = 0.0;
    {
        const auto& k = kb.disk[0];
        const auto rep = jacobi::normal_perturbation_fd_check(
            Surface::Disk, [&k](double u, double v) {
                return k.value(u * std::cos(v), u * std::sin(v));
            });
        worst_kernel = std::max(
            worst_kernel, std::max(rep.max_abs_h_fd, rep.max_abs_theta_fd));
    }
    {
        const double norm = jacobi::catenoid_kernel_profile(t0);
        const auto& k = kb.catenoid[0];
        const auto rep = jacobi::normal_perturbation_fd_check(
            Surface::Catenoid,
            [&k, norm](double u, double v) { return k.value(u, v) / norm; });
        worst_kernel = std::max(
            worst_kernel, std::max(rep.max_abs_h_fd, rep.max_abs_theta_fd));
    }
    if (worst_kernel >= 1e-4) ok = false;
    detail += " kernel_fd=" + fmt(worst_kernel);
    return result("jacobi_consistency", ok, detail);
}

CheckResult criterion_degree_arithmetic() {
    using namespace fbms::degree;
    bool ok = true;
    for (int i = 0; i <= 5; ++i) {
        const int sign = i % 2 == 0 ? 1 : -1;
        if (family_contribution(i, Manifold::S2) != sign * 2) ok = false;
        if (family_contribution(i, Manifold::RP2) != sign * 1) ok = false;
        if (family_contribution(i, Manifold::RP2Pair) != sign * 2) ok = false;
    }
    for (int idx : {0, 1, 4, 7}) {
        if (std::abs(assemble_degree(Topology::Disk, idx).total) != 2) ok = false;
        if (std::abs(assemble_degree(Topology::Annulus, idx).total) != 2)
            ok = false;
    }
    if (assemble_degree(Topology::Other, 0).total != 0) ok = false;
    int chi_s2 = 0, chi_rp2 = 0;
    try {
        chi_s2 = morse_euler_oracle(Manifold::S2, 20);
        chi_rp2 = morse_euler_oracle(Manifold::RP2, 20);
    } catch (const std::exception&) {
        ok = false;
    }
    if (chi_s2 != 2 || chi_rp2 != 1) ok = false;
    return result("degree_arithmetic", ok,
                  "chi(S2)=" + std::to_string(chi_s2) +
                      " chi(RP2)=" + std::to_string(chi_rp2));
}

CheckResult criterion_metric_family() {
    bool ok = true;
    std::string detail;
    // pullback vs closed form, second order in the FD step
    double pb1 = 0.0, pb2 = 0.0;
    for (double t : {0.2, 0.5, 0.8}) {
        for (const Vec3& x : {Vec3(0.3, -0.2, 0.4), Vec3(-0.5, 0.1, 0.2)}) {
            for (int half = 0; half < 2; ++half) {
                const double h = half == 0 ? 2e-3 : 1e-3;
                Mat3 pull;
                std::array<capmetric::Vec4, 3> jac;
                for (int i = 0; i < 3; ++i) {
                    Vec3 e = Vec3::Zero();
                    e[i] = h;
                    jac[i] = (capmetric::embed_sphere(t, x + e) -
                              capmetric::embed_sphere(t, x - e)) /
                             (2 * h);
                }
                for (int i = 0; i < 3; ++i)
                    for (int j = 0; j < 3; ++j) pull(i, j) = jac[i].dot(jac[j]);
                const double err =
                    (pull - capmetric::metric_at(t, x)).cwiseAbs().maxCoeff();
                (half == 0 ? pb1 : pb2) = std::max(half == 0 ? pb1 : pb2, err);
            }
        }
    }
    if (pb2 >= 1e-5 || pb1 / std::max(pb2, 1e-15) < 2.5) ok = false;
    detail += "pullback_err=" + fmt(pb2) +
              " ratio=" + fmt(pb1 / std::max(pb2, 1e-15));
    // Einstein identity at 100 sampled interior points per t
    double einstein = 0.0;
    for (double t : {0.2, 0.5, 0.8}) {
        for (int i = 0; i < 100; ++i) {
            const double r = 0.95 * (i + 0.5) / 100.0;
            const double th = 2.399963229728653 * i;  // golden-angle sweep
            const double z = std::cos(0.7 * i);
            const Vec3 x = r * Vec3(std::cos(th) * std::sqrt(1 - z * z * 0.25),
                                    std::sin(th) * std::sqrt(1 - z * z * 0.25),
                                    0.5 * z);
            const Mat3 diff = capmetric::ricci_at(t, x) -
                              2.0 * t * t * capmetric::metric_at(t, x);
            einstein = std::max(einstein, diff.cwiseAbs().maxCoeff());
        }
    }
    if (einstein >= 1e-6) ok = false;
    detail += " einstein_err=" + fmt(einstein);
    // FD curvature oracle agrees with second-order convergence
    double fd1 = 0.0, fd2 = 0.0;
    for (double t : {0.3, 0.6}) {
        const Vec3 x(0.25, -0.35, 0.15);
        auto metric = [t](const Vec3& p) { return capmetric::metric_at(t, p); };
        fd1 = std::max(fd1, (fd_ricci(metric, x, 2e-3) - capmetric::ricci_at(t, x))
                                .cwiseAbs()
                                .maxCoeff());
        fd2 = std::max(fd2, (fd_ricci(metric, x, 1e-3) - capmetric::ricci_at(t, x))
                                .cwiseAbs()
                                .maxCoeff());
    }
    if (fd2 >= 1e-6 || fd1 / std::max(fd2, 1e-15) < 2.5) ok = false;
    detail += " fd_ricci_err=" + fmt(fd2);
    // Conformal Ricci derivative vs its FD oracle. Ric(e^{-2sh}g) is exactly
    // quadratic in s, so the centered s-difference carries no s-truncation
    // error; the oracle's error is its spatial FD step, and second-order
    // convergence is measured by halving that step.
    const auto fields = test_fields();
    const AmbientScalar& hfield = fields[2];
    double cr1 = 0.0, cr2 = 0.0;
    for (double t : {0.0, 0.4}) {
        const Vec3 x(0.2, 0.3, -0.25);
        const Mat3 target = capmetric::conformal_ricci_derivative(hfield, t, x);
        for (int half = 0; half < 2; ++half) {
            const double hx = half == 0 ? 4e-3 : 2e-3;
            const double s = 0.05;
            auto metric_s = [&, t](double sv) {
                return [&, t, sv](const Vec3& p) {
                    return std::exp(-2.0 * sv * hfield.value(p)) *
                           capmetric::metric_at(t, p);
                };
            };
            const Mat3 d = (fd_ricci(metric_s(s), x, hx) -
                            fd_ricci(metric_s(-s), x, hx)) /
                           (2 * s);
            const double err = (d - target).cwiseAbs().maxCoeff();
            (half == 0 ? cr1 : cr2) = std::max(half == 0 ? cr1 : cr2, err);
        }
    }
    const double cratio = cr1 / std::max(cr2, 1e-15);
    if (cr2 >= 1e-3 || cratio < 2.5 || cratio > 7.0) ok = false;
    detail += " conf_ricci_err=" + fmt(cr2) + " ratio=" + fmt(cratio);
    return result("metric_family", ok, detail);
}

CheckResult criterion_semicontinuity() {
    const auto rep = spectrum::semicontinuity_probe();
    bool ok = rep.all_dim_two;
    std::string detail;
    for (const auto& row : rep.rows) {
        detail += "t=" + fmt(row.t) + ":dim=" + std::to_string(row.near_kernel_dim) +
                  " ";
        if (row.near_kernel_dim > 2) ok = false;
    }
    return result("semicontinuity", ok, detail);
}

std::vector<CheckResult> acceptance_suite() {
    return {
        criterion_constants(),      criterion_disk_kernel(),
        criterion_mode_dichotomy(), criterion_riccati_bound(),
        criterion_catenoid_family(), criterion_conformal_variation(),
        criterion_jacobi_consistency(), criterion_degree_arithmetic(),
        criterion_metric_family(),  criterion_semicontinuity(),
    };
}

std::vector<CheckResult> fast_suite() {
    return {
        criterion_constants(),
        criterion_riccati_bound(),
        criterion_mode_dichotomy(),
        criterion_conformal_variation(),
        criterion_metric_family(),
    };
}

}  // namespace fbms::checks
