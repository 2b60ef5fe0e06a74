#include "fbms/rotprofile.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fbms/dual.hpp"
#include "fbms/surfacegeom.hpp"

namespace fbms::rotprofile {

namespace {

using detail::Dual;
using D2 = Dual<Dual<double>>;

// Induced-area Lagrangian of the revolution surface in g_t, per unit angle:
// L(s, rho, rho') = rho sqrt(1 + rho'^2 + c (rho rho' + s)^2),
// c = t^2 / (1 - t^2 (rho^2 + s^2)).
template <class T>
T area_lagrangian(double t, const T& s, const T& rho, const T& drho) {
    const double t2 = t * t;
    const T c = T(t2) / (T(1.0) - T(t2) * (rho * rho + s * s));
    const T w = rho * drho + s;
    using detail::sqrt;
    return rho * sqrt(T(1.0) + drho * drho + c * (w * w));
}

// Second-order jet of L with inner derivative in p and outer in q.
double mixed_partial(double t, double s, double rho, double drho, int p,
                     int q) {
    auto seed = [&](int var) {
        D2 vals[3] = {D2{{s, 0.0}, {0.0, 0.0}},
                      D2{{rho, 0.0}, {0.0, 0.0}},
                      D2{{drho, 0.0}, {0.0, 0.0}}};
        return vals[var];
    };
    D2 args[3] = {seed(0), seed(1), seed(2)};
    args[p].val.dot = 1.0;
    args[q].dot.val = 1.0;
    const D2 r = area_lagrangian(t, args[0], args[1], args[2]);
    return r.dot.dot;
}

double first_partial(double t, double s, double rho, double drho, int p) {
    Dual<double> args[3] = {{s, 0.0}, {rho, 0.0}, {drho, 0.0}};
    args[p].dot = 1.0;
    return area_lagrangian(t, args[0], args[1], args[2]).dot;
}

struct State {
    double s, rho, drho;
};

State rk4_step(double t, const State& st, double h) {
    auto f = [t](double s, double rho, double drho) {
        return std::pair<double, double>{drho, profile_rhs(t, s, rho, drho)};
    };
    const auto k1 = f(st.s, st.rho, st.drho);
    const auto k2 = f(st.s + h / 2, st.rho + h / 2 * k1.first,
                      st.drho + h / 2 * k1.second);
    const auto k3 = f(st.s + h / 2, st.rho + h / 2 * k2.first,
                      st.drho + h / 2 * k2.second);
    const auto k4 = f(st.s + h, st.rho + h * k3.first, st.drho + h * k3.second);
    return {st.s + h,
            st.rho + h / 6 * (k1.first + 2 * k2.first + 2 * k3.first + k4.first),
            st.drho + h / 6 * (k1.second + 2 * k2.second + 2 * k3.second +
                               k4.second)};
}

double ball_excess(const State& st) {
    return st.rho * st.rho + st.s * st.s - 1.0;
}

}  // namespace

CriticalConstants solve_t0() {
    auto f = [](double t) { return t - 1.0 / std::tanh(t); };
    double lo = 1.0, hi = 2.0;
    for (int i = 0; i < 80; ++i) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) < 0.0 ? lo : hi) = mid;
    }
    double t0 = 0.5 * (lo + hi);
    for (int i = 0; i < 4; ++i) {
        const double sh = std::sinh(t0);
        t0 -= f(t0) / (1.0 + 1.0 / (sh * sh));
    }
    return {t0, t0 * std::cosh(t0)};
}

ProfilePoint euclid_catenoid(double a, double b, double s) {
    return {std::cosh(a * s + b) / a, std::sinh(a * s + b)};
}

double profile_rhs(double t, double s, double rho, double drho) {
    const double L_rho = first_partial(t, s, rho, drho, 1);
    const double L_ps = mixed_partial(t, s, rho, drho, 2, 0);
    const double L_pr = mixed_partial(t, s, rho, drho, 2, 1);
    const double L_pp = mixed_partial(t, s, rho, drho, 2, 2);
    return (L_rho - L_ps - L_pr * drho) / L_pp;
}

Profile minimal_profile_ode(double t, double a, double b, double step) {
    if (a <= 0.0) throw std::domain_error("minimal_profile_ode: a <= 0");
    if (std::abs(t) >= 1.0) throw std::domain_error("minimal_profile_ode: |t| >= 1");
    const double s0 = -b / a;
    const State apex{s0, 1.0 / a, 0.0};
    if (ball_excess(apex) >= 0.0)
        throw std::domain_error("minimal_profile_ode: apex outside the ball");

    auto run = [&](double dir) {
        std::vector<ProfileSample> out;
        State st = apex;
        bool exited = false;
        // Keep a short overshoot band past the sphere so boundary-layer
        // finite differences have room to sample.
        long extra = static_cast<long>(std::ceil(8e-3 / step));
        const long max_steps = static_cast<long>(4.0 / step);
        for (long i = 0; i < max_steps; ++i) {
            st = rk4_step(t, st, dir * step);
            out.push_back({st.s, st.rho, st.drho});
            if (ball_excess(st) >= 0.0) {
                exited = true;
                if (extra-- <= 0) break;
            }
            if (st.rho <= 0.0 || std::abs(st.s) > 2.0 ||
                t * t * (st.rho * st.rho + st.s * st.s) >= 0.9)
                break;
        }
        return std::pair{out, exited};
    };

    auto [up, up_exit] = run(+1.0);
    auto [down, down_exit] = run(-1.0);

    Profile p;
    p.a = a;
    p.b = b;
    p.t = t;
    p.step = step;
    p.exited_high = up_exit;
    p.exited_low = down_exit;
    p.samples.reserve(down.size() + 1 + up.size());
    for (auto it = down.rbegin(); it != down.rend(); ++it) p.samples.push_back(*it);
    p.samples.push_back({apex.s, apex.rho, apex.drho});
    for (const auto& sm : up) p.samples.push_back(sm);
    p.s_min = p.samples.front().s;
    p.s_max = p.samples.back().s;
    return p;
}

ProfilePoint Profile::eval(double s) const {
    if (samples.size() < 2 || s < s_min || s > s_max)
        throw std::domain_error("Profile::eval: s outside sampled domain");
    auto it = std::lower_bound(samples.begin(), samples.end(), s,
                               [](const ProfileSample& a, double v) {
                                   return a.s < v;
                               });
    if (it == samples.begin()) ++it;
    if (it == samples.end()) --it;
    const ProfileSample& hi = *it;
    const ProfileSample& lo = *(it - 1);
    const double h = hi.s - lo.s;
    const double u = (s - lo.s) / h;
    // Hermite cubic in rho, quadratic-consistent derivative.
    const double h00 = (1 + 2 * u) * (1 - u) * (1 - u);
    const double h10 = u * (1 - u) * (1 - u);
    const double h01 = u * u * (3 - 2 * u);
    const double h11 = u * u * (u - 1);
    const double rho = h00 * lo.rho + h10 * h * lo.drho + h01 * hi.rho +
                       h11 * h * hi.drho;
    const double d00 = 6 * u * (u - 1);
    const double d10 = (1 - u) * (1 - 3 * u);
    const double d01 = -d00;
    const double d11 = u * (3 * u - 2);
    const double drho = d00 * lo.rho / h + d10 * lo.drho + d01 * hi.rho / h +
                        d11 * hi.drho;
    return {rho, drho};
}

double Profile::rho_second(double s) const {
    const auto pt = eval(s);
    return profile_rhs(t, s, pt.rho, pt.drho);
}

BoundaryHit boundary_hit(double t, const Profile& profile, int side) {
    const bool exited = side > 0 ? profile.exited_high : profile.exited_low;
    if (!exited)
        throw std::runtime_error("boundary_hit: profile does not exit the ball");
    // Find the first sphere crossing on the requested side of the apex.
    const auto& sm = profile.samples;
    auto excess = [](const ProfileSample& p) {
        return p.rho * p.rho + p.s * p.s - 1.0;
    };
    State inside{}, outside{};
    bool found = false;
    if (side > 0) {
        for (std::size_t i = sm.size() - 1; i > 0; --i)
            if (excess(sm[i]) >= 0.0 && excess(sm[i - 1]) < 0.0) {
                outside = {sm[i].s, sm[i].rho, sm[i].drho};
                inside = {sm[i - 1].s, sm[i - 1].rho, sm[i - 1].drho};
                found = true;
                break;
            }
    } else {
        for (std::size_t i = 0; i + 1 < sm.size(); ++i)
            if (excess(sm[i]) >= 0.0 && excess(sm[i + 1]) < 0.0) {
                outside = {sm[i].s, sm[i].rho, sm[i].drho};
                inside = {sm[i + 1].s, sm[i + 1].rho, sm[i + 1].drho};
                found = true;
                break;
            }
    }
    if (!found) throw std::runtime_error("boundary_hit: no sphere crossing found");
    // Bisect on the step fraction, re-integrating from the inside state.
    const double h0 = outside.s - inside.s;
    double lo = 0.0, hi = 1.0;
    State hit = outside;
    for (int i = 0; i < 60; ++i) {
        const double mid = 0.5 * (lo + hi);
        const State st = rk4_step(t, inside, mid * h0);
        if (ball_excess(st) < 0.0)
            lo = mid;
        else {
            hi = mid;
            hit = st;
        }
    }
    const capmetric::Vec3 p(hit.rho, 0.0, hit.s);
    const capmetric::Vec3 ps(hit.drho, 0.0, 1.0);
    const capmetric::Vec3 pth(0.0, hit.rho, 0.0);
    const capmetric::Vec3 ref(1.0, 0.0, 0.0);
    const double theta =
        surfacegeom::boundary_angle(capmetric::cap_field(t), p, ps, pth, ref);
    BoundaryHit out;
    out.s_star = hit.s;
    out.theta = theta;
    out.side = side;
    out.state = {hit.s, hit.rho, hit.drho};
    return out;
}

double mean_curvature_rot(double t, double s, double rho, double drho,
                          double ddrho) {
    if (rho * rho + s * s >= 1.0 + 1e-12)
        throw std::domain_error("mean_curvature_rot: point outside the ball");
    surfacegeom::SurfaceJet jet;
    jet.p = Vec3(rho, 0.0, s);
    jet.pu = Vec3(drho, 0.0, 1.0);
    jet.pv = Vec3(0.0, rho, 0.0);
    jet.puu = Vec3(ddrho, 0.0, 0.0);
    jet.puv = Vec3(0.0, drho, 0.0);
    jet.pvv = Vec3(-rho, 0.0, 0.0);
    return surfacegeom::mean_curvature(capmetric::cap_field(t), jet,
                                       Vec3(1.0, 0.0, 0.0));
}

double mean_curvature_graph(double t, double x1, double x2, double u,
                            const Eigen::Vector2d& du,
                            const Eigen::Matrix2d& d2u) {
    surfacegeom::SurfaceJet jet;
    jet.p = Vec3(x1, x2, u);
    jet.pu = Vec3(1.0, 0.0, du[0]);
    jet.pv = Vec3(0.0, 1.0, du[1]);
    jet.puu = Vec3(0.0, 0.0, d2u(0, 0));
    jet.puv = Vec3(0.0, 0.0, d2u(0, 1));
    jet.pvv = Vec3(0.0, 0.0, d2u(1, 1));
    return surfacegeom::mean_curvature(capmetric::cap_field(t), jet,
                                       Vec3(0.0, 0.0, 1.0));
}

namespace {

struct Residual {
    double plus, minus;
    Profile profile;
};

Residual catenoid_residual(double t, double a, double b, double step) {
    Profile p = minimal_profile_ode(t, a, b, step);
    const auto hp = boundary_hit(t, p, +1);
    const auto hm = boundary_hit(t, p, -1);
    return {hp.theta, hm.theta, std::move(p)};
}

}  // namespace

CatenoidSolution solve_critical_catenoid(
    double t, const SolverOptions& opts,
    std::optional<std::pair<double, double>> warm_start) {
    CatenoidSolution sol;
    if (std::abs(t) > opts.t_range) return sol;  // outside empirical range

    const auto cc = solve_t0();
    double a = warm_start ? warm_start->first : cc.r0;
    double b = warm_start ? warm_start->second : 0.0;

    auto norm2 = [](const Residual& r) {
        return std::max(std::abs(r.plus), std::abs(r.minus));
    };

    Residual res{};
    try {
        res = catenoid_residual(t, a, b, opts.ode_step);
    } catch (const std::exception&) {
        return sol;
    }
    sol.residual_history.push_back(norm2(res));

    for (int it = 0; it < opts.max_iters; ++it) {
        if (norm2(res) < opts.tol) {
            sol.converged = true;
            break;
        }
        // Finite-difference Jacobian of (theta_plus, theta_minus) in (a, b).
        const double ha = opts.fd_step * std::max(1.0, std::abs(a));
        const double hb = opts.fd_step;
        Eigen::Matrix2d J;
        Eigen::Vector2d F(res.plus, res.minus);
        try {
            const Residual ra = catenoid_residual(t, a + ha, b, opts.ode_step);
            const Residual rb = catenoid_residual(t, a, b + hb, opts.ode_step);
            J << (ra.plus - res.plus) / ha, (rb.plus - res.plus) / hb,
                (ra.minus - res.minus) / ha, (rb.minus - res.minus) / hb;
        } catch (const std::exception&) {
            break;
        }
        const Eigen::Vector2d step = J.fullPivLu().solve(F);
        double lambda = 1.0;
        bool accepted = false;
        for (int k = 0; k <= opts.max_halvings; ++k) {
            try {
                Residual cand = catenoid_residual(t, a - lambda * step[0],
                                                  b - lambda * step[1],
                                                  opts.ode_step);
                if (norm2(cand) < norm2(res) || k == opts.max_halvings) {
                    a -= lambda * step[0];
                    b -= lambda * step[1];
                    res = std::move(cand);
                    accepted = true;
                    break;
                }
            } catch (const std::exception&) {
                // trajectory left the valid region; retreat
            }
            lambda *= 0.5;
        }
        sol.iters = it + 1;
        sol.residual_history.push_back(norm2(res));
        if (!accepted) break;
    }
    if (norm2(res) < opts.tol) sol.converged = true;
    sol.a = a;
    sol.b = b;
    sol.theta_plus = res.plus;
    sol.theta_minus = res.minus;
    sol.profile = std::move(res.profile);
    return sol;
}

std::vector<SweepRow> sweep(const std::vector<double>& t_grid,
                            const SolverOptions& opts) {
    std::vector<SweepRow> rows;
    std::optional<std::pair<double, double>> warm;
    for (double t : t_grid) {
        const CatenoidSolution sol = solve_critical_catenoid(t, opts, warm);
        rows.push_back({t, sol.a, sol.b, sol.theta_plus, sol.theta_minus,
                        sol.iters, sol.converged});
        if (sol.converged) warm = std::pair{sol.a, sol.b};
    }
    return rows;
}

}  // namespace fbms::rotprofile
