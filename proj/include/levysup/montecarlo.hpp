#pragma once

#include <cstdint>
#include <vector>

#include "levysup/models.hpp"

namespace levysup::mc {

struct SimConfig {
    std::uint64_t n_paths;
    std::uint32_t n_steps;
    std::uint64_t seed = 0;
    unsigned workers = 1;

    void validate() const;
};

enum class BiasNote { BiasedLow, Unbiased };

const char* bias_name(BiasNote b);

struct McEstimate {
    double value;
    double std_error; // binomial sqrt(p(1-p)/n)
    std::uint64_t n_paths;
    BiasNote bias_note;
};

// Fraction of paths whose running maximum over the grid {k T / n_steps}
// (including t = 0) exceeds u. Increments are exact draws of the
// marginal law at the grid spacing, so the only error sources are the
// binomial noise and the grid bias (biased low for continuous-time
// families). CompoundPoissonDrift is routed to the exact-jump version
// (unbiased).
McEstimate mc_sup_prob(const models::LevyModel& m, double u, double T,
                       const SimConfig& cfg);

// Exact-jump simulation for the finite-variation family: between jumps
// the path drifts down, so the supremum is attained at jump instants.
McEstimate mc_sup_prob_exact_jumps(const models::CompoundPoissonDrift& m,
                                   double u, double T, const SimConfig& cfg);

// Fraction of grid paths of the spectrally negative companion Y whose
// running maximum exceeds z by time T; biased low.
McEstimate mc_first_passage(const models::LevyModel& m, double z, double T,
                            const SimConfig& cfg);

// Per-bin frequency of {grid-inf of Y < -x and Y(T)+x in (e_j, e_{j+1}]}
// for the strictly increasing bin edges z_edges (one estimate per bin).
// The grid infimum is biased high, so the joint probabilities are
// biased low.
std::vector<McEstimate> mc_joint_inf_terminal(
    const models::LevyModel& m, double x, const std::vector<double>& z_edges,
    double T, const SimConfig& cfg);

} // namespace levysup::mc
