#pragma once

#include <vector>

#include "fbms/jacobi.hpp"

namespace fbms::spectrum {

/// Eigenvalues of one azimuthal mode of a boundary value problem, from the
/// symmetric tridiagonal discretization at a single resolution.
struct ModeSpectrum {
    int n = 0;            // azimuthal mode number
    int points = 0;       // interior plus boundary unknowns
    double h = 0.0;       // mesh width
    std::vector<double> eigenvalues;  // ascending
};

// Catenoid mode problem -phi'' - (2/cosh^2 t - n^2) phi = lambda phi on
// [-t0, t0] with phi(+-t0) -+ t0 phi'(+-t0) = 0. `points` is the number of
// nodes including both ends.
ModeSpectrum catenoid_mode_spectrum(int n, int points);

// Disk radial problem -(r u')' + n^2 u / r = lambda r u on (0, 1) with
// u'(1) = u(1); u regular at 0 (n = 0) or u(0) = 0 (n >= 1).
ModeSpectrum disk_mode_spectrum(int n, int points);

/// One eigenpair of a mode problem; vector components are nodal values on
/// `nodes`, normalized in the discrete mass inner product.
struct ModeEigenpair {
    int n = 0;
    double eigenvalue = 0.0;
    std::vector<double> nodes;
    std::vector<double> vec;
    std::vector<double> weights;  // lumped mass per node
};

ModeEigenpair mode_eigenpair(jacobi::Surface surface, int n, int points, int k);

// Mass-weighted correlation |<a, b>_w| / (|a|_w |b|_w) of nodal vectors.
double weighted_correlation(const std::vector<double>& a,
                            const std::vector<double>& b,
                            const std::vector<double>& w);

/// Kernel and index counts of one surface operator, resolved across a
/// refinement ladder. zero_tol scales as C h^2 with the finest mesh width.
struct SpectralCounts {
    int index = 0;
    int nullity = 0;
    double zero_tol = 0.0;
    double smallest_abs_eigenvalue = 0.0;  // at the finest level
    int modes_scanned = 0;
    std::vector<int> levels;  // node counts per refinement level
};

// Counts negative and near-zero eigenvalues over azimuthal modes, stopping
// after two consecutive modes with no nonpositive spectrum.
SpectralCounts nullity_and_index(jacobi::Surface surface,
                                 const std::vector<int>& levels = {257, 513, 1025},
                                 double zero_tol_factor = 2.0);

/// Convergence record of one tracked eigenvalue across the ladder.
struct EigenvalueTrack {
    int n = 0;
    std::vector<double> values;   // one per level
    double richardson = 0.0;      // h^2 extrapolation from the last two levels
    double observed_order = 0.0;  // log2 of successive difference ratio
};

// Tracks the k-th eigenvalue (ascending, 0-based) of a mode across levels.
EigenvalueTrack track_eigenvalue(jacobi::Surface surface, int n, int k,
                                 const std::vector<int>& levels = {257, 513, 1025});

/// Discrete approximation of the operator pencil (J^h, J^theta) restricted
/// to a finite trial space, used to probe lower semicontinuity of the
/// nullity under the cap deformation.
struct SemicontinuityRow {
    double t = 0.0;
    double sigma_min = 0.0;       // smallest singular value of the pencil
    double sigma_scale = 0.0;     // largest singular value
    int near_kernel_dim = 0;      // singular values below tol * sigma_scale
};

struct SemicontinuityReport {
    std::vector<SemicontinuityRow> rows;
    int flat_kernel_dim = 0;     // dimension found at t = 0
    bool all_dim_two = false;    // every row reports exactly 2
};

// Assembles the FD pencil on a trial basis containing the two rotation
// Killing fields over the critical catenoid of g_t, at t = 0 and at the
// given deformation parameters. The rotation kernel must persist: each row
// reports exactly two near-zero singular values.
SemicontinuityReport semicontinuity_probe(const std::vector<double>& t_values = {0.05, 0.1},
                                          double tol = 1e-3);

}  // namespace fbms::spectrum
