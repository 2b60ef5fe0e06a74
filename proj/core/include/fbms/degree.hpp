#pragma once

#include <string>
#include <vector>

namespace fbms::degree {

enum class Manifold { S2, RP2, RP2Pair };
enum class Topology { Disk, Annulus, Other };

/// One non-degenerate solution family: its manifold of solutions, Morse
/// index, and signed contribution (-1)^index * chi.
struct FamilyRecord {
    Manifold manifold{};
    int index = 0;
    int euler = 0;
    int contribution = 0;
};

struct DegreeLedger {
    Topology topology{};
    std::vector<FamilyRecord> families;
    int total = 0;
};

int euler_characteristic(Manifold m);
int family_contribution(int index, Manifold m);

/// Monte Carlo Morse count: random low-order spherical harmonic
/// combinations on S^2 (antipodally even ones for RP^2), critical points by
/// mesh scan plus Newton refinement, chi = sum of (-1)^{Morse index}.
/// Near-degenerate trials are resampled up to a cap. Throws if the trials
/// disagree.
int morse_euler_oracle(Manifold m, int trial_count, unsigned seed = 20260826);

DegreeLedger assemble_degree(Topology topology, int index);

std::string manifold_name(Manifold m);
std::string topology_name(Topology t);

}  // namespace fbms::degree
