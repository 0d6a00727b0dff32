#ifndef RGSRATE_RATE_H
#define RGSRATE_RATE_H

#include <cstdint>

#include "rgsrate/channel.h"
#include "rgsrate/error_model.h"
#include "rgsrate/tree.h"

namespace rgsrate {

// Repeater graph state with 2m arms; every first-leaf qubit carries the same
// tree code.
struct rgs_shape {
    int m = 1;
    tree_vector tree;

    void validate() const;
};

// Photons per RGS: 2m (1 + tree photons).
int64_t photon_count(const rgs_shape& shape);

// Matter qubits across the chain: (links - 1) source nodes, depth+1 each.
int64_t matter_qubit_count(int tree_depth, double l_km, double l0_km);

double bell_success_prob(double p_ph);

// Probability that one link heralds entanglement: at least one of m Bell
// measurements succeeds and all logical measurements on both halves succeed.
double link_success_prob(const rgs_shape& shape, double p_ph);

// RGS generation time from the full matter-qubit operation sequence.
double rgs_generation_time_full(const rgs_shape& shape, const scenario& sc);

// CZ-dominated limit: 2m (2 + f(b, n-2)) T_CZ.
double rgs_generation_time_cz(const rgs_shape& shape, double t_cz_s);

// Secret-key capacity of direct fiber transmission at a given source
// repetition rate: rep_hz * (-log2(1 - eta_t(L))).
double direct_transmission_skr(const channel_params& ch, double l_km,
                               double rep_rate_hz);

// Everything the protocol yields for one scenario.
struct rate_report {
    double p_ph = 0.0;
    double p_bell = 0.0;
    double p_link = 0.0;
    double t_rgs_s = 0.0;
    double n_links = 0.0;          // exponent actually applied to p_link
    int64_t n_matter = 0;
    int64_t n_photons = 0;
    double rate_hz = 0.0;
    double rate_per_matter_hz = 0.0;
    double ebar_x = 0.0;
    double ebar_z = 0.0;
    double f_ab = 1.0;
    double skr_hz = 0.0;
    double skr_per_matter_hz = 0.0;
};

// fractional_links keeps the raw L/L0 exponent; the default rounds to the
// integer link count used for node placement.
rate_report evaluate_scenario(const rgs_shape& shape, const channel_params& ch,
                              const scenario& sc, bool fractional_links = false);

} // namespace rgsrate

#endif
