#include "fbms/jacobi.hpp"

#include <cmath>
#include <memory>
#include <numbers>
#include <stdexcept>

#include "fbms/surfacegeom.hpp"

namespace fbms::jacobi {

namespace {

constexpr double kPi = std::numbers::pi;

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

void check_resolution(int n_axial, int ntheta) {
    const int m = n_axial - 1;
    if (m < 32 || m % 32 != 0 || !power_of_two(m / 32))
        throw std::invalid_argument(
            "grid: axial size must be a power-of-two multiple of the base 33");
    if (ntheta < 32 || !power_of_two(ntheta))
        throw std::invalid_argument(
            "grid: azimuthal size must be a power of two >= 32");
}

// Fornberg finite-difference weights for derivative `order` at x0 on the
// given nodes.
std::vector<double> fd_weights(double x0, const std::vector<double>& nodes,
                               int order) {
    const int n = static_cast<int>(nodes.size());
    std::vector<std::vector<double>> c(
        n, std::vector<double>(order + 1, 0.0));
    double c1 = 1.0;
    double c4 = nodes[0] - x0;
    c[0][0] = 1.0;
    for (int i = 1; i < n; ++i) {
        const int mn = std::min(i, order);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = nodes[i] - x0;
        for (int j = 0; j < i; ++j) {
            const double c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k)
                    c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for (int k = mn; k >= 1; --k)
                c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    std::vector<double> w(n);
    for (int i = 0; i < n; ++i) w[i] = c[i][order];
    return w;
}

// Spectral second derivative in theta for every row of a grid function.
void theta_second_derivative(int ni, int nj, const std::vector<double>& in,
                             std::vector<double>& out) {
    out.assign(in.size(), 0.0);
    std::vector<std::complex<double>> coeff(nj);
    for (int i = 0; i < ni; ++i) {
        for (int k = 0; k < nj; ++k) {
            std::complex<double> acc = 0.0;
            for (int j = 0; j < nj; ++j) {
                const double ang = -2.0 * kPi * k * j / nj;
                acc += in[static_cast<std::size_t>(i) * nj + j] *
                       std::complex<double>(std::cos(ang), std::sin(ang));
            }
            coeff[k] = acc / static_cast<double>(nj);
        }
        for (int j = 0; j < nj; ++j) {
            std::complex<double> acc = 0.0;
            for (int k = 0; k < nj; ++k) {
                const int n = k <= nj / 2 ? k : k - nj;
                if (n == -nj / 2) continue;  // drop the unmatched Nyquist mode
                const double ang = 2.0 * kPi * k * j / nj;
                acc += -double(n) * double(n) * coeff[k] *
                       std::complex<double>(std::cos(ang), std::sin(ang));
            }
            out[static_cast<std::size_t>(i) * nj + j] = acc.real();
        }
    }
}

double t0_cached() {
    static const double t0 = rotprofile::solve_t0().t0;
    return t0;
}
double r0_cached() {
    static const double r0 = rotprofile::solve_t0().r0;
    return r0;
}

}  // namespace

DiskGrid::DiskGrid(int nr_, int ntheta_) : nr(nr_), ntheta(ntheta_) {
    check_resolution(nr, ntheta);
}
double DiskGrid::r(int i) const {
    return std::sin(0.5 * kPi * static_cast<double>(i) / (nr - 1));
}
double DiskGrid::theta(int j) const { return 2.0 * kPi * j / ntheta; }

CylinderGrid::CylinderGrid() : t0(t0_cached()) {}
CylinderGrid::CylinderGrid(int nt_, int ntheta_)
    : nt(nt_), ntheta(ntheta_), t0(t0_cached()) {
    check_resolution(nt, ntheta);
}
double CylinderGrid::t(int i) const { return -t0 + ht() * i; }
double CylinderGrid::theta(int j) const { return 2.0 * kPi * j / ntheta; }

SurfaceFunction SurfaceFunction::on_disk(
    const DiskGrid& g, const std::function<double(double, double)>& xy_fn) {
    SurfaceFunction f;
    f.surface = Surface::Disk;
    f.ni = g.nr;
    f.nj = g.ntheta;
    f.values.resize(static_cast<std::size_t>(g.nr) * g.ntheta);
    for (int i = 0; i < g.nr; ++i)
        for (int j = 0; j < g.ntheta; ++j) {
            const double r = g.r(i), th = g.theta(j);
            f.at(i, j) = xy_fn(r * std::cos(th), r * std::sin(th));
        }
    return f;
}

SurfaceFunction SurfaceFunction::on_cylinder(
    const CylinderGrid& g, const std::function<double(double, double)>& fn) {
    SurfaceFunction f;
    f.surface = Surface::Catenoid;
    f.ni = g.nt;
    f.nj = g.ntheta;
    f.values.resize(static_cast<std::size_t>(g.nt) * g.ntheta);
    for (int i = 0; i < g.nt; ++i)
        for (int j = 0; j < g.ntheta; ++j) f.at(i, j) = fn(g.t(i), g.theta(j));
    return f;
}

SurfaceFunction disk_jacobi_h(const DiskGrid& g, const SurfaceFunction& phi) {
    if (phi.ni != g.nr || phi.nj != g.ntheta)
        throw std::invalid_argument("disk_jacobi_h: grid mismatch");
    std::vector<double> ptt;
    theta_second_derivative(phi.ni, phi.nj, phi.values, ptt);

    SurfaceFunction out = phi;
    // Interior radial stencils on the clustered nodes.
    for (int i = 1; i < g.nr - 1; ++i) {
        const std::vector<double> nodes = {g.r(i - 1), g.r(i), g.r(i + 1)};
        const auto w1 = fd_weights(g.r(i), nodes, 1);
        const auto w2 = fd_weights(g.r(i), nodes, 2);
        const double r = g.r(i);
        for (int j = 0; j < g.ntheta; ++j) {
            double pr = 0.0, prr = 0.0;
            for (int k = 0; k < 3; ++k) {
                pr += w1[k] * phi.at(i - 1 + k, j);
                prr += w2[k] * phi.at(i - 1 + k, j);
            }
            out.at(i, j) = -(prr + pr / r +
                             ptt[static_cast<std::size_t>(i) * g.ntheta + j] /
                                 (r * r));
        }
    }
    // Center: Laplacian from the mean over the first ring.
    double ring = 0.0;
    for (int j = 0; j < g.ntheta; ++j) ring += phi.at(1, j);
    ring /= g.ntheta;
    const double r1 = g.r(1);
    const double center = 4.0 * (ring - phi.at(0, 0)) / (r1 * r1);
    for (int j = 0; j < g.ntheta; ++j) out.at(0, j) = -center;
    // Rim: one-sided 5-point stencils.
    {
        const int i = g.nr - 1;
        std::vector<double> nodes(5);
        for (int k = 0; k < 5; ++k) nodes[k] = g.r(i - 4 + k);
        const auto w1 = fd_weights(g.r(i), nodes, 1);
        const auto w2 = fd_weights(g.r(i), nodes, 2);
        for (int j = 0; j < g.ntheta; ++j) {
            double pr = 0.0, prr = 0.0;
            for (int k = 0; k < 5; ++k) {
                pr += w1[k] * phi.at(i - 4 + k, j);
                prr += w2[k] * phi.at(i - 4 + k, j);
            }
            out.at(i, j) =
                -(prr + pr + ptt[static_cast<std::size_t>(i) * g.ntheta + j]);
        }
    }
    return out;
}

std::vector<double> disk_jacobi_theta(const DiskGrid& g,
                                      const SurfaceFunction& phi) {
    if (phi.ni != g.nr || phi.nj != g.ntheta)
        throw std::invalid_argument("disk_jacobi_theta: grid mismatch");
    const int i = g.nr - 1;
    std::vector<double> nodes(5);
    for (int k = 0; k < 5; ++k) nodes[k] = g.r(i - 4 + k);
    const auto w1 = fd_weights(1.0, nodes, 1);
    std::vector<double> out(g.ntheta);
    for (int j = 0; j < g.ntheta; ++j) {
        double pr = 0.0;
        for (int k = 0; k < 5; ++k) pr += w1[k] * phi.at(i - 4 + k, j);
        out[j] = phi.at(i, j) - pr;
    }
    return out;
}

SurfaceFunction cat_jacobi_h(const CylinderGrid& g, const SurfaceFunction& phi) {
    if (phi.ni != g.nt || phi.nj != g.ntheta)
        throw std::invalid_argument("cat_jacobi_h: grid mismatch");
    std::vector<double> ptt;
    theta_second_derivative(phi.ni, phi.nj, phi.values, ptt);
    const double r0 = r0_cached();
    const double h = g.ht();

    SurfaceFunction out = phi;
    for (int i = 0; i < g.nt; ++i) {
        const double t = g.t(i);
        const double ch = std::cosh(t);
        const double c2 = r0 * r0 / (ch * ch);
        const double c4 = 2.0 * r0 * r0 / (ch * ch * ch * ch);
        for (int j = 0; j < g.ntheta; ++j) {
            double ptt_ij = ptt[static_cast<std::size_t>(i) * g.ntheta + j];
            double pss;
            if (i >= 1 && i < g.nt - 1) {
                pss = (phi.at(i - 1, j) - 2.0 * phi.at(i, j) + phi.at(i + 1, j)) /
                      (h * h);
            } else {
                // one-sided 5-point second derivative at the ends
                const int base = i == 0 ? 0 : g.nt - 5;
                static thread_local std::vector<double> w;
                std::vector<double> nodes(5);
                for (int k = 0; k < 5; ++k) nodes[k] = g.t(base + k);
                w = fd_weights(t, nodes, 2);
                pss = 0.0;
                for (int k = 0; k < 5; ++k) pss += w[k] * phi.at(base + k, j);
            }
            out.at(i, j) = -c4 * phi.at(i, j) - c2 * (pss + ptt_ij);
        }
    }
    return out;
}

std::array<std::vector<double>, 2> cat_jacobi_theta(const CylinderGrid& g,
                                                    const SurfaceFunction& phi) {
    if (phi.ni != g.nt || phi.nj != g.ntheta)
        throw std::invalid_argument("cat_jacobi_theta: grid mismatch");
    std::array<std::vector<double>, 2> out;
    out[0].resize(g.ntheta);
    out[1].resize(g.ntheta);
    for (int side = 0; side < 2; ++side) {
        const int i = side == 0 ? g.nt - 1 : 0;
        const int base = side == 0 ? g.nt - 5 : 0;
        std::vector<double> nodes(5);
        for (int k = 0; k < 5; ++k) nodes[k] = g.t(base + k);
        const auto w1 = fd_weights(g.t(i), nodes, 1);
        const double sgn = side == 0 ? 1.0 : -1.0;
        for (int j = 0; j < g.ntheta; ++j) {
            double pt = 0.0;
            for (int k = 0; k < 5; ++k) pt += w1[k] * phi.at(base + k, j);
            out[side][j] = phi.at(i, j) - sgn * g.t0 * pt;
        }
    }
    return out;
}

ModeDecomposition mode_reduce(const CylinderGrid& g, const SurfaceFunction& phi) {
    if (!power_of_two(g.ntheta))
        throw std::invalid_argument("mode_reduce: ntheta must be a power of two");
    ModeDecomposition md;
    md.ntheta = g.ntheta;
    md.coeffs.resize(g.nt, g.ntheta);
    double grid_power = 0.0, mode_power = 0.0;
    for (int i = 0; i < g.nt; ++i) {
        for (int k = 0; k < g.ntheta; ++k) {
            std::complex<double> acc = 0.0;
            for (int j = 0; j < g.ntheta; ++j) {
                const double ang = -2.0 * kPi * k * j / g.ntheta;
                acc += phi.at(i, j) *
                       std::complex<double>(std::cos(ang), std::sin(ang));
            }
            md.coeffs(i, k) = acc / static_cast<double>(g.ntheta);
            mode_power += std::norm(md.coeffs(i, k));
        }
        for (int j = 0; j < g.ntheta; ++j)
            grid_power += phi.at(i, j) * phi.at(i, j) / g.ntheta;
    }
    md.parseval_residual = std::abs(grid_power - mode_power) /
                           std::max(1.0, grid_power);
    return md;
}

SurfaceFunction mode_synthesize(const CylinderGrid& g,
                                const ModeDecomposition& md) {
    SurfaceFunction f;
    f.surface = Surface::Catenoid;
    f.ni = g.nt;
    f.nj = g.ntheta;
    f.values.assign(static_cast<std::size_t>(g.nt) * g.ntheta, 0.0);
    for (int i = 0; i < g.nt; ++i)
        for (int j = 0; j < g.ntheta; ++j) {
            std::complex<double> acc = 0.0;
            for (int k = 0; k < g.ntheta; ++k) {
                const double ang = 2.0 * kPi * k * j / g.ntheta;
                acc += md.coeffs(i, k) *
                       std::complex<double>(std::cos(ang), std::sin(ang));
            }
            f.at(i, j) = acc.real();
        }
    return f;
}

double FourierModeProblem::potential(double t) const {
    const double ch = std::cosh(t);
    return 2.0 / (ch * ch) - static_cast<double>(n) * n;
}

FundamentalPair mode_fundamental_solutions(int n) {
    const int m = std::abs(n);
    FundamentalPair fp;
    if (m == 0) {
        fp.closed_form = true;
        fp.u = [](double t) { return 1.0 - t * std::tanh(t); };
        fp.du = [](double t) {
            const double ch = std::cosh(t);
            return -std::tanh(t) - t / (ch * ch);
        };
        fp.v = [](double t) { return std::tanh(t); };
        fp.dv = [](double t) {
            const double ch = std::cosh(t);
            return 1.0 / (ch * ch);
        };
        fp.wronskian = 1.0;
        return fp;
    }
    if (m == 1) {
        fp.closed_form = true;
        fp.u = [](double t) { return std::sinh(t) + t / std::cosh(t); };
        fp.du = [](double t) {
            const double ch = std::cosh(t);
            return std::cosh(t) + (1.0 - t * std::tanh(t)) / ch;
        };
        fp.v = [](double t) { return 1.0 / std::cosh(t); };
        fp.dv = [](double t) {
            const double ch = std::cosh(t);
            return -std::sinh(t) / (ch * ch);
        };
        fp.wronskian = -2.0;
        return fp;
    }
    // |n| >= 2: integrate phi'' = (n^2 - 2 sech^2 t) phi from t = 0 with the
    // even (1,0) and odd (0,1) seeds; unit Wronskian by construction.
    const double t0 = t0_cached();
    const double h = 1e-4;
    const int steps = static_cast<int>(std::ceil((t0 + 4 * h) / h));
    auto rhs = [m](double t, double val) {
        const double ch = std::cosh(t);
        return (static_cast<double>(m) * m - 2.0 / (ch * ch)) * val;
    };
    auto integrate = [&](double v0, double d0) {
        auto table = std::make_shared<std::vector<std::array<double, 2>>>();
        table->reserve(steps + 1);
        double t = 0.0, v = v0, d = d0;
        table->push_back({v, d});
        for (int i = 0; i < steps; ++i) {
            const double k1v = d, k1d = rhs(t, v);
            const double k2v = d + 0.5 * h * k1d,
                         k2d = rhs(t + 0.5 * h, v + 0.5 * h * k1v);
            const double k3v = d + 0.5 * h * k2d,
                         k3d = rhs(t + 0.5 * h, v + 0.5 * h * k2v);
            const double k4v = d + h * k3d, k4d = rhs(t + h, v + h * k3v);
            v += h / 6 * (k1v + 2 * k2v + 2 * k3v + k4v);
            d += h / 6 * (k1d + 2 * k2d + 2 * k3d + k4d);
            t += h;
            table->push_back({v, d});
        }
        return table;
    };
    auto even = integrate(1.0, 0.0);
    auto odd = integrate(0.0, 1.0);

    auto hermite = [h](const std::shared_ptr<std::vector<std::array<double, 2>>>& tab,
                       double ta, int deriv, double parity) {
        // parity = +1 for even value / odd derivative, -1 for odd value.
        const double sign = ta < 0.0 ? -1.0 : 1.0;
        const double tt = std::abs(ta);
        const auto idx = static_cast<std::size_t>(tt / h);
        const std::size_t i = std::min(idx, tab->size() - 2);
        const double u = (tt - i * h) / h;
        const auto& lo = (*tab)[i];
        const auto& hi = (*tab)[i + 1];
        double out;
        if (deriv == 0) {
            const double h00 = (1 + 2 * u) * (1 - u) * (1 - u);
            const double h10 = u * (1 - u) * (1 - u);
            const double h01 = u * u * (3 - 2 * u);
            const double h11 = u * u * (u - 1);
            out = h00 * lo[0] + h10 * h * lo[1] + h01 * hi[0] + h11 * h * hi[1];
            return parity > 0 ? out : sign * out;
        }
        const double d00 = 6 * u * (u - 1);
        const double d10 = (1 - u) * (1 - 3 * u);
        const double d01 = -d00;
        const double d11 = u * (3 * u - 2);
        out = d00 * lo[0] / h + d10 * lo[1] + d01 * hi[0] / h + d11 * hi[1];
        return parity > 0 ? sign * out : out;
    };
    fp.closed_form = false;
    fp.u = [even, hermite](double t) { return hermite(even, t, 0, +1.0); };
    fp.du = [even, hermite](double t) { return hermite(even, t, 1, +1.0); };
    fp.v = [odd, hermite](double t) { return hermite(odd, t, 0, -1.0); };
    fp.dv = [odd, hermite](double t) { return hermite(odd, t, 1, -1.0); };
    fp.wronskian = 1.0;
    return fp;
}

double mode_bvp_determinant(int n) {
    const double t0 = t0_cached();
    const FundamentalPair fp = mode_fundamental_solutions(n);
    const FourierModeProblem mp{n, t0};
    // Normalize each solution to unit sup scale on [-t0, t0] so the fixed
    // kernel threshold is meaningful for every n.
    auto sup = [&](const std::function<double(double)>& f) {
        double m = 0.0;
        for (int i = 0; i <= 64; ++i)
            m = std::max(m, std::abs(f(-t0 + 2.0 * t0 * i / 64)));
        return m;
    };
    const double su = sup(fp.u), sv = sup(fp.v);
    const double bu_p = mp.robin_plus(fp.u(t0), fp.du(t0)) / su;
    const double bu_m = mp.robin_minus(fp.u(-t0), fp.du(-t0)) / su;
    const double bv_p = mp.robin_plus(fp.v(t0), fp.dv(t0)) / sv;
    const double bv_m = mp.robin_minus(fp.v(-t0), fp.dv(-t0)) / sv;
    return bu_p * bv_m - bu_m * bv_p;
}

RiccatiBound riccati_bound_check() {
    const double t0 = t0_cached();
    const double s2 = std::sqrt(2.0);
    RiccatiBound rb;
    rb.gamma_bound = s2 * std::tanh(s2 * t0);
    rb.inv_t0 = 1.0 / t0;
    rb.margin = rb.gamma_bound - rb.inv_t0;
    return rb;
}

double catenoid_kernel_profile(double t) {
    return std::sinh(t) + t / std::cosh(t);
}
double catenoid_kernel_profile_d(double t) {
    const double ch = std::cosh(t);
    return std::cosh(t) + (1.0 - t * std::tanh(t)) / ch;
}
double catenoid_kernel_profile_d2(double t) {
    const double ch = std::cosh(t);
    const double th = std::tanh(t);
    // d/dt [ cosh t + (1 - t tanh t)/cosh t ]
    return std::sinh(t) +
           ((-th - t / (ch * ch)) * ch - (1.0 - t * th) * std::sinh(t)) /
               (ch * ch);
}

KernelBases kernel_bases() {
    KernelBases kb;
    kb.disk.push_back({Surface::Disk,
                       [](double x, double) { return x; },
                       [](double, double) { return 1.0; },
                       [](double, double) { return 0.0; }});
    kb.disk.push_back({Surface::Disk,
                       [](double, double y) { return y; },
                       [](double, double) { return 0.0; },
                       [](double, double) { return 1.0; }});
    kb.catenoid.push_back(
        {Surface::Catenoid,
         [](double t, double th) { return catenoid_kernel_profile(t) * std::cos(th); },
         [](double t, double th) {
             return catenoid_kernel_profile_d(t) * std::cos(th);
         },
         [](double t, double th) {
             return -catenoid_kernel_profile(t) * std::sin(th);
         }});
    kb.catenoid.push_back(
        {Surface::Catenoid,
         [](double t, double th) { return catenoid_kernel_profile(t) * std::sin(th); },
         [](double t, double th) {
             return catenoid_kernel_profile_d(t) * std::sin(th);
         },
         [](double t, double th) {
             return catenoid_kernel_profile(t) * std::cos(th);
         }});
    return kb;
}

Eigen::MatrixXd kernel_gram(const std::vector<KernelElement>& basis) {
    const int m = static_cast<int>(basis.size());
    Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(m, m);
    if (m == 0) return gram;
    const int nu = 256, nv = 128;
    const double t0 = t0_cached(), r0 = r0_cached();
    for (int iu = 0; iu < nu; ++iu)
        for (int iv = 0; iv < nv; ++iv) {
            double u, w;  // parameter and area weight of the cell
            const double v = 2.0 * kPi * (iv + 0.5) / nv;
            if (basis.front().surface == Surface::Disk) {
                u = (iu + 0.5) / nu;
                w = u * (1.0 / nu) * (2.0 * kPi / nv);
            } else {
                u = -t0 + 2.0 * t0 * (iu + 0.5) / nu;
                const double ch = std::cosh(u);
                w = ch * ch / (r0 * r0) * (2.0 * t0 / nu) * (2.0 * kPi / nv);
            }
            for (int a = 0; a < m; ++a)
                for (int b = a; b < m; ++b) {
                    double x = u, y = v;
                    if (basis.front().surface == Surface::Disk) {
                        x = u * std::cos(v);
                        y = u * std::sin(v);
                    }
                    const double val =
                        basis[a].value(x, y) * basis[b].value(x, y) * w;
                    gram(a, b) += val;
                    if (a != b) gram(b, a) += val;
                }
        }
    return gram;
}

Vec3 embedding(Surface surface, double u, double v) {
    if (surface == Surface::Disk)
        return Vec3(u * std::cos(v), u * std::sin(v), 0.0);
    const double r0 = r0_cached();
    return Vec3(std::cosh(u) * std::cos(v) / r0, std::cosh(u) * std::sin(v) / r0,
                u / r0);
}

Vec3 surface_normal(Surface surface, double u, double v) {
    if (surface == Surface::Disk) return Vec3(0.0, 0.0, 1.0);
    // Unit normal of the catenoid pointing away from the axis.
    const double ch = std::cosh(u);
    return Vec3(std::cos(v) / ch, std::sin(v) / ch, -std::tanh(u));
}

SurfaceFunction conformal_h_variation(Surface surface, const AmbientScalar& phi) {
    auto value = [&](double u, double v) {
        const Vec3 p = embedding(surface, u, v);
        const Vec3 n = surface_normal(surface, u, v);
        // Both reference surfaces are minimal: dphi(N) - phi H / 2 = dphi(N).
        return phi.gradient(p).dot(n);
    };
    if (surface == Surface::Disk) {
        const DiskGrid g;
        SurfaceFunction f;
        f.surface = surface;
        f.ni = g.nr;
        f.nj = g.ntheta;
        f.values.resize(static_cast<std::size_t>(g.nr) * g.ntheta);
        for (int i = 0; i < g.nr; ++i)
            for (int j = 0; j < g.ntheta; ++j)
                f.at(i, j) = value(g.r(i), g.theta(j));
        return f;
    }
    const CylinderGrid g;
    SurfaceFunction f;
    f.surface = surface;
    f.ni = g.nt;
    f.nj = g.ntheta;
    f.values.resize(static_cast<std::size_t>(g.nt) * g.ntheta);
    for (int i = 0; i < g.nt; ++i)
        for (int j = 0; j < g.ntheta; ++j) f.at(i, j) = value(g.t(i), g.theta(j));
    return f;
}

std::vector<double> conformal_theta_variation(Surface surface,
                                              const AmbientScalar&) {
    const int nb = surface == Surface::Disk ? DiskGrid{}.ntheta
                                            : 2 * CylinderGrid{}.ntheta;
    return std::vector<double>(nb, 0.0);
}

namespace {

surfacegeom::SurfaceJet numeric_jet(const std::function<Vec3(double, double)>& f,
                                    double u, double v, double h) {
    surfacegeom::SurfaceJet jet;
    const Vec3 c = f(u, v);
    const Vec3 up = f(u + h, v), um = f(u - h, v);
    const Vec3 vp = f(u, v + h), vm = f(u, v - h);
    jet.p = c;
    jet.pu = (up - um) / (2 * h);
    jet.pv = (vp - vm) / (2 * h);
    jet.puu = (up - 2 * c + um) / (h * h);
    jet.pvv = (vp - 2 * c + vm) / (h * h);
    jet.puv = (f(u + h, v + h) - f(u + h, v - h) - f(u - h, v + h) +
               f(u - h, v - h)) /
              (4 * h * h);
    return jet;
}

}  // namespace

double fd_jacobi_h(const capmetric::MetricField& field,
                   const std::function<Vec3(double, double)>& map,
                   const std::function<double(double, double)>& phi, double u,
                   double v, const Vec3& ref, double eps, double hstep) {
    auto displaced = [&](double sign) {
        return [&, sign](double uu, double vv) {
            const Vec3 p = map(uu, vv);
            const Vec3 pu = (map(uu + hstep, vv) - map(uu - hstep, vv)) /
                            (2 * hstep);
            const Vec3 pv = (map(uu, vv + hstep) - map(uu, vv - hstep)) /
                            (2 * hstep);
            const Vec3 n = surfacegeom::unit_normal(field, p, pu, pv, ref);
            return Vec3(p + sign * eps * phi(uu, vv) * n);
        };
    };
    const auto jp = numeric_jet(displaced(+1.0), u, v, hstep);
    const auto jm = numeric_jet(displaced(-1.0), u, v, hstep);
    const double hp = surfacegeom::mean_curvature(field, jp, ref);
    const double hm = surfacegeom::mean_curvature(field, jm, ref);
    return (hp - hm) / (2 * eps);
}

double fd_jacobi_theta(const capmetric::MetricField& field,
                       const std::function<Vec3(double, double)>& map,
                       const std::function<double(double, double)>& phi,
                       double u, double v, const Vec3& ref, double eps,
                       double hstep) {
    auto theta_of = [&](double sign) {
        auto d = [&](double uu, double vv) {
            const Vec3 p = map(uu, vv);
            const Vec3 pu = (map(uu + hstep, vv) - map(uu - hstep, vv)) /
                            (2 * hstep);
            const Vec3 pv = (map(uu, vv + hstep) - map(uu, vv - hstep)) /
                            (2 * hstep);
            const Vec3 n = surfacegeom::unit_normal(field, p, pu, pv, ref);
            return Vec3(p + sign * eps * phi(uu, vv) * n);
        };
        const Vec3 p = d(u, v);
        const Vec3 pu = (d(u + hstep, v) - d(u - hstep, v)) / (2 * hstep);
        const Vec3 pv = (d(u, v + hstep) - d(u, v - hstep)) / (2 * hstep);
        return surfacegeom::boundary_angle(field, p, pu, pv, ref);
    };
    return (theta_of(+1.0) - theta_of(-1.0)) / (2 * eps);
}

FdCheckReport normal_perturbation_fd_check(
    Surface surface, const std::function<double(double, double)>& phi,
    double eps) {
    const auto field = capmetric::flat_field();
    auto map = [surface](double u, double v) { return embedding(surface, u, v); };
    const double hp = 1e-3;

    // Closed-form operator reference, with parameter derivatives of phi by
    // centered differences.
    auto d2 = [&](double u, double v, int which) {
        const double h = 1e-3;
        if (which == 0)
            return (phi(u + h, v) - 2 * phi(u, v) + phi(u - h, v)) / (h * h);
        return (phi(u, v + h) - 2 * phi(u, v) + phi(u, v - h)) / (h * h);
    };
    auto d1 = [&](double u, double v, int which) {
        const double h = 1e-3;
        if (which == 0) return (phi(u + h, v) - phi(u - h, v)) / (2 * h);
        return (phi(u, v + h) - phi(u, v - h)) / (2 * h);
    };

    FdCheckReport rep;
    rep.eps = eps;
    const double t0 = t0_cached(), r0 = r0_cached();

    std::vector<std::pair<double, double>> interior;
    if (surface == Surface::Disk) {
        for (double r : {0.25, 0.45, 0.65, 0.85})
            for (int j = 0; j < 6; ++j) interior.push_back({r, kPi * j / 3.0});
    } else {
        for (double f : {-0.75, -0.4, 0.0, 0.4, 0.75})
            for (int j = 0; j < 6; ++j)
                interior.push_back({f * t0, kPi * j / 3.0});
    }

    double scale = 0.0;
    std::vector<double> refs, fds;
    for (auto [u, v] : interior) {
        double ref_val;
        const Vec3 ref_dir = surface == Surface::Disk
                                 ? Vec3(0, 0, 1)
                                 : Vec3(std::cos(v), std::sin(v), 0);
        if (surface == Surface::Disk) {
            const double lap =
                d2(u, v, 0) + d1(u, v, 0) / u + d2(u, v, 1) / (u * u);
            ref_val = -lap;
        } else {
            const double ch = std::cosh(u);
            const double lap = d2(u, v, 0) + d2(u, v, 1);
            ref_val = -2.0 * r0 * r0 / (ch * ch * ch * ch) * phi(u, v) -
                      r0 * r0 / (ch * ch) * lap;
        }
        const double fd = fd_jacobi_h(field, map, phi, u, v, ref_dir, eps, hp);
        refs.push_back(ref_val);
        fds.push_back(fd);
        scale = std::max(scale, std::abs(ref_val));
        rep.max_abs_h_fd = std::max(rep.max_abs_h_fd, std::abs(fd));
    }
    // Boundary: Theta linearization against the Robin operator.
    std::vector<std::tuple<double, double, double>> boundary;  // u, v, sign
    if (surface == Surface::Disk) {
        for (int j = 0; j < 6; ++j) boundary.push_back({1.0, kPi * j / 3.0, 1.0});
    } else {
        for (int j = 0; j < 6; ++j) {
            boundary.push_back({t0, kPi * j / 3.0, 1.0});
            boundary.push_back({-t0, kPi * j / 3.0, -1.0});
        }
    }
    double tscale = 0.0;
    std::vector<double> trefs, tfds;
    for (auto [u, v, sgn] : boundary) {
        double ref_val;
        const Vec3 ref_dir = surface == Surface::Disk
                                 ? Vec3(0, 0, 1)
                                 : Vec3(std::cos(v), std::sin(v), 0);
        if (surface == Surface::Disk) {
            // one-sided derivative: use interior-shifted centered stencil
            const double h = 1e-3;
            const double pr =
                (3 * phi(1.0, v) - 4 * phi(1.0 - h, v) + phi(1.0 - 2 * h, v)) /
                (2 * h);
            ref_val = phi(1.0, v) - pr;
        } else {
            const double h = 1e-3;
            const double pt = sgn > 0
                                  ? (3 * phi(u, v) - 4 * phi(u - h, v) +
                                     phi(u - 2 * h, v)) /
                                        (2 * h)
                                  : (-3 * phi(u, v) + 4 * phi(u + h, v) -
                                     phi(u + 2 * h, v)) /
                                        (2 * h);
            ref_val = phi(u, v) - sgn * t0 * pt;
        }
        const double fd =
            fd_jacobi_theta(field, map, phi, u, v, ref_dir, eps, hp);
        trefs.push_back(ref_val);
        tfds.push_back(fd);
        tscale = std::max(tscale, std::abs(ref_val));
        rep.max_abs_theta_fd = std::max(rep.max_abs_theta_fd, std::abs(fd));
    }
    // Relative errors against the combined operator scale; either family may
    // vanish identically (constants, kernel elements).
    const double combined = std::max({scale, tscale, 1e-12});
    for (std::size_t k = 0; k < refs.size(); ++k)
        rep.max_rel_h =
            std::max(rep.max_rel_h, std::abs(fds[k] - refs[k]) / combined);
    for (std::size_t k = 0; k < trefs.size(); ++k)
        rep.max_rel_h =
            std::max(rep.max_rel_h, std::abs(tfds[k] - trefs[k]) / combined);
    return rep;
}

}  // namespace fbms::jacobi
