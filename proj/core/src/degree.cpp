#include "fbms/degree.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace fbms::degree {

namespace {

constexpr double kPi = std::numbers::pi;

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

// f(x) = a.x + x' Q x + c (x' D x)^2 restricted to S^2; a = 0 and the
// quartic even so that f descends to RP^2 when `even` is set.
struct Trial {
    Vec3 a = Vec3::Zero();
    Mat3 q = Mat3::Zero();
    Mat3 d = Mat3::Zero();
    double c = 0.0;

    double value(const Vec3& x) const {
        const double quad = x.dot(q * x);
        const double dd = x.dot(d * x);
        return a.dot(x) + quad + c * dd * dd;
    }
    Vec3 gradient(const Vec3& x) const {
        return a + 2.0 * q * x + 4.0 * c * x.dot(d * x) * (d * x);
    }
    Mat3 hessian(const Vec3& x) const {
        const Vec3 dx = d * x;
        return 2.0 * q + 4.0 * c * (x.dot(dx) * d + 2.0 * dx * dx.transpose());
    }
};

Trial sample_trial(std::mt19937& rng, bool even) {
    std::normal_distribution<double> nrm(0.0, 1.0);
    Trial t;
    Mat3 raw;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) raw(i, j) = nrm(rng);
    t.q = 0.5 * (raw + raw.transpose());
    if (even) {
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) raw(i, j) = nrm(rng);
        t.d = 0.5 * (raw + raw.transpose());
        t.c = 0.3 * nrm(rng);
    } else {
        for (int i = 0; i < 3; ++i) t.a[i] = nrm(rng);
    }
    return t;
}

// Newton on the Lagrange system grad f = lambda x, |x| = 1.
bool newton_critical(const Trial& t, Vec3& x, double& lambda) {
    lambda = x.dot(t.gradient(x));
    for (int it = 0; it < 60; ++it) {
        const Vec3 g = t.gradient(x) - lambda * x;
        const double cons = 0.5 * (x.squaredNorm() - 1.0);
        if (g.norm() < 1e-13 && std::abs(cons) < 1e-13) return true;
        Eigen::Matrix4d jac;
        jac.topLeftCorner<3, 3>() = t.hessian(x) - lambda * Mat3::Identity();
        jac.topRightCorner<3, 1>() = -x;
        jac.bottomLeftCorner<1, 3>() = x.transpose();
        jac(3, 3) = 0.0;
        Eigen::Vector4d rhs;
        rhs << -g, -cons;
        const Eigen::Vector4d step = jac.fullPivLu().solve(rhs);
        x += step.head<3>();
        lambda += step[3];
        x.normalize();
    }
    return false;
}

// Tangent Hessian eigenvalues at a refined critical point; returns the Morse
// index or -1 if the point is too close to degenerate.
int morse_index(const Trial& t, const Vec3& x, double lambda) {
    Vec3 e1 = x.cross(std::abs(x[0]) < 0.7 ? Vec3::UnitX() : Vec3::UnitY());
    e1.normalize();
    const Vec3 e2 = x.cross(e1);
    const Mat3 hs = t.hessian(x) - lambda * Mat3::Identity();
    Eigen::Matrix2d ht;
    ht(0, 0) = e1.dot(hs * e1);
    ht(0, 1) = e1.dot(hs * e2);
    ht(1, 0) = ht(0, 1);
    ht(1, 1) = e2.dot(hs * e2);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(ht);
    const double scale = std::max(1.0, std::abs(es.eigenvalues()[1]));
    if (std::abs(es.eigenvalues()[0]) < 1e-6 * scale ||
        std::abs(es.eigenvalues()[1]) < 1e-6 * scale)
        return -1;
    return (es.eigenvalues()[0] < 0.0 ? 1 : 0) +
           (es.eigenvalues()[1] < 0.0 ? 1 : 0);
}

// One Morse count; false signals a discarded (degenerate) trial.
bool morse_count(const Trial& t, bool even, int& chi) {
    std::vector<Vec3> points;
    std::vector<int> indices;
    const int nlat = 48, nlon = 96;
    for (int i = 0; i <= nlat; ++i) {
        const double ph = kPi * i / nlat;
        for (int j = 0; j < nlon; ++j) {
            const double th = 2.0 * kPi * j / nlon;
            Vec3 x(std::sin(ph) * std::cos(th), std::sin(ph) * std::sin(th),
                   std::cos(ph));
            const Vec3 g = t.gradient(x);
            const Vec3 tg = g - x.dot(g) * x;
            if (tg.norm() > 1.0) continue;  // seed only near-critical nodes
            double lambda;
            if (!newton_critical(t, x, lambda)) continue;
            bool dup = false;
            for (const Vec3& p : points)
                if ((p - x).norm() < 1e-6 || (even && (p + x).norm() < 1e-6)) {
                    dup = true;
                    break;
                }
            if (dup) continue;
            const int idx = morse_index(t, x, lambda);
            if (idx < 0) return false;
            points.push_back(x);
            indices.push_back(idx);
        }
    }
    if (points.empty()) return false;
    chi = 0;
    for (int idx : indices) chi += idx % 2 == 0 ? 1 : -1;
    return true;
}

}  // namespace

int euler_characteristic(Manifold m) {
    switch (m) {
        case Manifold::S2:
            return 2;
        case Manifold::RP2:
            return 1;
        case Manifold::RP2Pair:
            return 2;
    }
    throw std::invalid_argument("euler_characteristic: unknown manifold tag");
}

int family_contribution(int index, Manifold m) {
    if (index < 0) throw std::invalid_argument("family_contribution: index < 0");
    const int sign = index % 2 == 0 ? 1 : -1;
    return sign * euler_characteristic(m);
}

int morse_euler_oracle(Manifold m, int trial_count, unsigned seed) {
    if (trial_count < 1)
        throw std::invalid_argument("morse_euler_oracle: trial_count < 1");
    if (m == Manifold::RP2Pair)
        return 2 * morse_euler_oracle(Manifold::RP2, trial_count, seed);
    const bool even = m == Manifold::RP2;
    int common = 0;
    bool have = false;
    for (int trial = 0; trial < trial_count; ++trial) {
        std::mt19937 rng(seed + static_cast<unsigned>(trial));
        int chi = 0;
        bool ok = false;
        for (int attempt = 0; attempt < 8 && !ok; ++attempt)
            ok = morse_count(sample_trial(rng, even), even, chi);
        if (!ok)
            throw std::runtime_error(
                "morse_euler_oracle: resample cap hit on a degenerate trial");
        if (!have) {
            common = chi;
            have = true;
        } else if (chi != common) {
            throw std::runtime_error("morse_euler_oracle: trials disagree");
        }
    }
    return common;
}

DegreeLedger assemble_degree(Topology topology, int index) {
    DegreeLedger ledger;
    ledger.topology = topology;
    if (topology == Topology::Other) return ledger;
    FamilyRecord rec;
    rec.manifold = topology == Topology::Disk ? Manifold::S2 : Manifold::RP2Pair;
    rec.index = index;
    rec.euler = euler_characteristic(rec.manifold);
    rec.contribution = family_contribution(index, rec.manifold);
    ledger.families.push_back(rec);
    ledger.total = rec.contribution;
    return ledger;
}

std::string manifold_name(Manifold m) {
    switch (m) {
        case Manifold::S2:
            return "S2";
        case Manifold::RP2:
            return "RP2";
        case Manifold::RP2Pair:
            return "RP2_pair";
    }
    return "unknown";
}

std::string topology_name(Topology t) {
    switch (t) {
        case Topology::Disk:
            return "disk";
        case Topology::Annulus:
            return "annulus";
        case Topology::Other:
            return "other";
    }
    return "unknown";
}

}  // namespace fbms::degree
