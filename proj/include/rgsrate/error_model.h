#ifndef RGSRATE_ERROR_MODEL_H
#define RGSRATE_ERROR_MODEL_H

#include <cstdint>
#include <vector>

#include "rgsrate/tree.h"

namespace rgsrate {

// Probability that a majority vote over m independent outcomes, each wrong
// with probability e1, returns the wrong value. Even m drops one vote.
double majority_vote_error(int m, double e1);

// Indirect-measurement error probabilities per tree level, for single-photon
// error probability eps. e_single[k] is the error of one successful indirect
// branch at level k; e_indirect[k] the majority-voted error over all
// successful branches, conditioned on at least one success.
struct error_analysis {
    double eps = 0.0;
    std::vector<double> e_single;        // k = 0..n-1
    std::vector<double> e_indirect;      // k = 0..n-1
    std::vector<bool> indirect_possible; // r_k > 0
};

error_analysis indirect_error_levels(const tree_vector& b,
                                     const tree_analysis& ta, double eps);

// Logical measurement error rates of the encoded qubit, conditioned on the
// logical measurement succeeding.
struct logical_errors {
    double ebar_x = 0.0;
    double ebar_z = 0.0;
};
logical_errors logical_error_rates(const tree_vector& b,
                                   const tree_analysis& ta,
                                   const error_analysis& ea);

// End-to-end Pauli error rates and fidelity of the pair shared by Alice and
// Bob after n_qr repeater nodes, each RGS having 2m arms.
struct fidelity_report {
    double e_x = 0.0;
    double e_y = 0.0;
    double e_z = 0.0;
    double f_ab = 1.0;
};
fidelity_report pair_fidelity(double ebar_x, double ebar_z, double eps,
                              int64_t n_qr, int m);

double binary_entropy(double f);

// Secret key rate R (1 - 2 h(F)), clamped at zero.
double secret_key_rate(double rate_hz, double f_ab);

// Matter-qubit coherence time required to keep the RGS error budget below
// eps_target: T2 = -3 T_RGS / (N_ph ln(1 - eps_target)).
double coherence_time_requirement(double t_rgs_s, int64_t n_photons,
                                  double eps_target);

} // namespace rgsrate

#endif
