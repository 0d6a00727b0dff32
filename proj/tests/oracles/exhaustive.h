#ifndef RGSRATE_TESTS_EXHAUSTIVE_H
#define RGSRATE_TESTS_EXHAUSTIVE_H

#include <vector>

#include "rgsrate/tree.h"

namespace rgsrate_tests {

struct exhaustive_result {
    double pr_mx = 0.0;
    double pr_mz = 0.0;
    double ebar_x = 0.0; // conditioned on the logical X measurement working
    double ebar_z = 0.0; // conditioned on the logical Z measurement working
};

// Replays the direct-or-indirect measurement procedure over every photon
// presence pattern of the tree; measurement flips are averaged analytically
// per pattern, so the result is exact up to rounding. Only usable for small
// trees (cost 2^photons).
exhaustive_result exhaustive_tree(const rgsrate::tree_vector& b, double p_ph,
                                  double eps);

// Every branching vector (any depth, entries >= 1) with at most max_photons
// photons, in lexicographic order.
std::vector<std::vector<int>> all_trees_up_to(int max_photons);

} // namespace rgsrate_tests

#endif
