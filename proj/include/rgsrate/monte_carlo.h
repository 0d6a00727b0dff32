#ifndef RGSRATE_MONTE_CARLO_H
#define RGSRATE_MONTE_CARLO_H

#include <cstdint>

#include "rgsrate/tree.h"

namespace rgsrate {

struct mc_config {
    uint64_t n_samples = 1000000;
    uint64_t seed = 1;
    int threads = 0; // 0: RGSRATE_THREADS env var, else hardware_concurrency
};

struct mc_estimate {
    double mean = 0.0;
    double std_err = 0.0;
    uint64_t n = 0; // trials the estimate is conditioned on
};

struct mc_tree_result {
    mc_estimate pr_mx;
    mc_estimate pr_mz;
};

struct mc_logical_result {
    mc_estimate pr_mx;
    mc_estimate pr_mz;
    mc_estimate ebar_x; // conditioned on the logical X measurement succeeding
    mc_estimate ebar_z; // conditioned on the logical Z measurement succeeding
};

// Samples photon survival per tree qubit and replays the direct-or-indirect
// measurement procedure. Counts merge as integers, so results are identical
// for any thread count at a fixed seed.
mc_tree_result mc_tree_success(const tree_vector& b, double p_ph,
                               const mc_config& cfg);

// Adds a measurement flip channel of strength eps on every consumed photon,
// with majority voting across repeated indirect outcomes.
mc_logical_result mc_logical_error(const tree_vector& b, double p_ph,
                                   double eps, const mc_config& cfg);

} // namespace rgsrate

#endif
