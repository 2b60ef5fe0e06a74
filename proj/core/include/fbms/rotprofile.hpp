#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fbms/capmetric.hpp"

namespace fbms::rotprofile {

using capmetric::Vec3;

/// t0 = coth t0 and the derived catenoid scale r0 = t0 cosh t0.
struct CriticalConstants {
    double t0;
    double r0;
};

CriticalConstants solve_t0();

/// Euclidean catenary profile: (rho, rho') = (cosh(a s + b)/a, sinh(a s + b)).
struct ProfilePoint {
    double rho;
    double drho;
};
ProfilePoint euclid_catenoid(double a, double b, double s);

struct ProfileSample {
    double s;
    double rho;
    double drho;
};

/// Rotational profile integrated in the metric g_t, stored as dense samples
/// along the axial parameter; both ends run until the trajectory leaves the
/// unit ball.
struct Profile {
    double a = 0.0, b = 0.0, t = 0.0;
    double step = 1e-4;
    double s_min = 0.0, s_max = 0.0;   // domain covered by samples
    std::vector<ProfileSample> samples;  // ordered by s
    bool exited_low = false, exited_high = false;

    // Hermite interpolation of (rho, rho') at s in [s_min, s_max].
    ProfilePoint eval(double s) const;
    // rho'' from the profile equation at an interpolated state.
    double rho_second(double s) const;
};

/// Where the surface of revolution meets the unit sphere and at what
/// g_t-angle (0 means free boundary orthogonality).
struct BoundaryHit {
    double s_star;
    double theta;
    int side;  // +1 upper, -1 lower
    ProfileSample state;
};

// rho'' from the Euler-Lagrange equation of the rotational area functional in
// g_t (exact derivatives via nested duals).
double profile_rhs(double t, double s, double rho, double drho);

// Integrate the profile from the apex rho(-b/a) = 1/a, rho'(-b/a) = 0 in both
// directions until the trajectory exits the ball. Throws std::domain_error
// for invalid (a, t).
Profile minimal_profile_ode(double t, double a, double b, double step = 1e-4);

// Locate |x(s)| = 1 on the given side by bisection along the trajectory and
// measure the g_t boundary angle there. Throws std::runtime_error if the
// profile never exits on that side.
BoundaryHit boundary_hit(double t, const Profile& profile, int side);

// Mean curvature of the revolution surface through (s, rho) with the stated
// derivatives, in the metric g_t. Normal points away from the axis.
double mean_curvature_rot(double t, double s, double rho, double drho,
                          double ddrho);

// Graph branch: surface x3 = u(x1, x2) at (x1, x2), normal oriented along
// +e3; used for the equatorial-plane cases where the profile chart breaks.
double mean_curvature_graph(double t, double x1, double x2, double u,
                            const Eigen::Vector2d& du,
                            const Eigen::Matrix2d& d2u);

struct CatenoidSolution {
    double a = 0.0, b = 0.0;
    double theta_plus = 0.0, theta_minus = 0.0;
    int iters = 0;
    bool converged = false;
    Profile profile;
    std::vector<double> residual_history;
};

/// Solver knobs; defaults match the working range of the damped Newton.
struct SolverOptions {
    double tol = 1e-10;
    int max_iters = 30;
    int max_halvings = 8;
    double fd_step = 1e-7;
    double ode_step = 1e-4;
    double t_range = 0.35;  // empirical working range in |t|
};

// Damped 2x2 Newton on the boundary-angle residuals, initialized at (r0, 0)
// or at the supplied warm start.
CatenoidSolution solve_critical_catenoid(
    double t, const SolverOptions& opts = {},
    std::optional<std::pair<double, double>> warm_start = std::nullopt);

struct SweepRow {
    double t, a, b, theta_plus, theta_minus;
    int iters;
    bool converged;
};

// Warm-started continuation over the grid; per-row failures are recorded and
// the sweep continues.
std::vector<SweepRow> sweep(const std::vector<double>& t_grid,
                            const SolverOptions& opts = {});

}  // namespace fbms::rotprofile
