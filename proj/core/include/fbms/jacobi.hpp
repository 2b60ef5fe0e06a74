#pragma once

#include <array>
#include <complex>
#include <functional>
#include <vector>

#include "fbms/capmetric.hpp"
#include "fbms/rotprofile.hpp"

namespace fbms::jacobi {

using capmetric::AmbientScalar;
using capmetric::Vec3;

enum class Surface { Disk, Catenoid };

/// Polar grid on the unit disk, radially clustered towards the rim so the
/// Robin stencil sees a fine boundary layer. Node r_i = sin(pi xi_i / 2) with
/// xi uniform on [0, 1]; theta_j = 2 pi j / ntheta.
struct DiskGrid {
    int nr = 65;
    int ntheta = 64;

    DiskGrid() = default;
    DiskGrid(int nr_, int ntheta_);
    double r(int i) const;
    double theta(int j) const;
};

/// Tensor grid on the catenoid cylinder [-t0, t0] x S^1.
struct CylinderGrid {
    int nt = 65;
    int ntheta = 64;
    double t0;

    CylinderGrid();
    CylinderGrid(int nt_, int ntheta_);
    double t(int i) const;
    double theta(int j) const;
    double ht() const { return 2.0 * t0 / (nt - 1); }
};

/// Grid values of a function on the disk or the catenoid cylinder.
/// Storage is row-major: index (i, j) -> i * ntheta + j with i the radial or
/// axial index.
struct SurfaceFunction {
    Surface surface{};
    int ni = 0, nj = 0;
    std::vector<double> values;

    double& at(int i, int j) { return values[static_cast<std::size_t>(i) * nj + j]; }
    double at(int i, int j) const { return values[static_cast<std::size_t>(i) * nj + j]; }

    static SurfaceFunction on_disk(const DiskGrid& g,
                                   const std::function<double(double, double)>& xy_fn);
    static SurfaceFunction on_cylinder(const CylinderGrid& g,
                                       const std::function<double(double, double)>& ttheta_fn);
};

// J^h_disk phi = -Laplacian(phi), polar stencils in r, spectral in theta.
SurfaceFunction disk_jacobi_h(const DiskGrid& g, const SurfaceFunction& phi);
// J^theta_disk phi = phi|_{r=1} - d_r phi|_{r=1}, one per theta node.
std::vector<double> disk_jacobi_theta(const DiskGrid& g, const SurfaceFunction& phi);

// J^h_cat phi = -(2 r0^2/cosh^4 t) phi - (r0^2/cosh^2 t) Laplacian(phi).
SurfaceFunction cat_jacobi_h(const CylinderGrid& g, const SurfaceFunction& phi);
// Robin values phi(+-t0, theta) -+ t0 d_t phi(+-t0, theta); [0] = +t0 end.
std::array<std::vector<double>, 2> cat_jacobi_theta(const CylinderGrid& g,
                                                    const SurfaceFunction& phi);

/// Azimuthal Fourier modes of a cylinder function: coeffs(i, k) is mode
/// n = mode_number(k) sampled at axial node i.
struct ModeDecomposition {
    int ntheta = 0;
    Eigen::MatrixXcd coeffs;  // nt x ntheta
    double parseval_residual = 0.0;

    int mode_number(int k) const { return k <= ntheta / 2 ? k : k - ntheta; }
};

ModeDecomposition mode_reduce(const CylinderGrid& g, const SurfaceFunction& phi);
SurfaceFunction mode_synthesize(const CylinderGrid& g, const ModeDecomposition& md);

/// One azimuthal mode of the catenoid Jacobi operator.
struct FourierModeProblem {
    int n;
    double t0;

    double potential(double t) const;  // f_n(t) = 2/cosh^2 t - n^2
    // Robin functionals phi(+-t0) -+ t0 phi'(+-t0).
    double robin_plus(double value, double deriv) const { return value - t0 * deriv; }
    double robin_minus(double value, double deriv) const { return value + t0 * deriv; }
};

/// Fundamental system of phi'' + f_n phi = 0, normalized to |Wronskian| = 1.
/// Closed form for n in {0, +-1}; numerically integrated otherwise.
struct FundamentalPair {
    bool closed_form = false;
    std::function<double(double)> u, du, v, dv;
    double wronskian = 0.0;
};

FundamentalPair mode_fundamental_solutions(int n);

// 2x2 determinant of the Robin functionals on the fundamental system,
// normalized by the row norms; zero (within tolerance) iff mode n
// contributes kernel.
double mode_bvp_determinant(int n);

struct RiccatiBound {
    double gamma_bound;  // sqrt(2) tanh(sqrt(2) t0)
    double inv_t0;
    double margin;       // gamma_bound - inv_t0, positive
};

RiccatiBound riccati_bound_check();

/// Closed-form kernel element with analytic derivatives in the surface
/// parameters ((x, y) on the disk, (t, theta) on the cylinder).
struct KernelElement {
    Surface surface;
    std::function<double(double, double)> value;
    std::function<double(double, double)> du;   // d/dx or d/dt
    std::function<double(double, double)> dv;   // d/dy or d/dtheta
};

struct KernelBases {
    std::vector<KernelElement> disk;      // {x, y}
    std::vector<KernelElement> catenoid;  // (sinh t + t/cosh t){cos,sin} theta
};

KernelBases kernel_bases();

// Axial profile u(t) = sinh t + t / cosh t of the catenoid kernel modes,
// with derivatives.
double catenoid_kernel_profile(double t);
double catenoid_kernel_profile_d(double t);
double catenoid_kernel_profile_d2(double t);

// L^2 Gram matrix of a basis in the induced metric of its surface.
Eigen::MatrixXd kernel_gram(const std::vector<KernelElement>& basis);

// d/ds H under g_s = e^{s phi} delta: dphi(N) - phi H / 2, evaluated on the
// surface grid (both test surfaces are minimal, so the value is dphi(N)).
SurfaceFunction conformal_h_variation(Surface surface, const AmbientScalar& phi);
// d/ds Theta under a conformal perturbation vanishes identically.
std::vector<double> conformal_theta_variation(Surface surface, const AmbientScalar& phi);

/// Embeddings and normals of the two reference surfaces, parameter domains
/// (r, theta) in [0,1] x S^1 and (t, theta) in [-t0,t0] x S^1.
Vec3 embedding(Surface surface, double u, double v);
Vec3 surface_normal(Surface surface, double u, double v);

/// Relative-error report of the closed-form operators against centered
/// differences of (H, Theta) of the normally displaced surface.
struct FdCheckReport {
    double max_rel_h = 0.0;       // relative to the operator scale
    double max_abs_h_fd = 0.0;    // largest |dH/deps| seen (kernel check)
    double max_abs_theta_fd = 0.0;
    double eps = 0.0;
};

// phi is a smooth test function of the surface parameters.
FdCheckReport normal_perturbation_fd_check(
    Surface surface, const std::function<double(double, double)>& phi,
    double eps = 1e-4);

// Same FD route in a general ambient metric: d/deps of (H, Theta) of
// e + eps phi N. Used for the deformed catenoid probes.
double fd_jacobi_h(const capmetric::MetricField& field,
                   const std::function<Vec3(double, double)>& map,
                   const std::function<double(double, double)>& phi, double u,
                   double v, const Vec3& ref, double eps, double hstep = 1e-3);
double fd_jacobi_theta(const capmetric::MetricField& field,
                       const std::function<Vec3(double, double)>& map,
                       const std::function<double(double, double)>& phi,
                       double u, double v, const Vec3& ref, double eps,
                       double hstep = 1e-3);

}  // namespace fbms::jacobi
