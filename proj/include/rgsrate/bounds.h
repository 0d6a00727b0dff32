#ifndef RGSRATE_BOUNDS_H
#define RGSRATE_BOUNDS_H

#include "rgsrate/channel.h"

namespace rgsrate {

// Heralded entanglement generation between neighbouring memory nodes.
// Emission and detection are taken as perfect in these timing models; only
// fiber loss enters the success probabilities.
enum class heralded_scheme {
    midpoint_herald, // photons meet a midpoint detector: trial l0/c,
                     // success e^{-l0/l_att} / 2 (linear-optics ceiling)
    direct_to_node,  // photon travels the full link to the next node:
                     // trial 2 l0/c, success e^{-l0/l_att}
    weak_excitation, // faint emission keeps two-photon events rare:
                     // trial l0/c, success excitation_prob * e^{-l0/(2 l_att)}
};

struct heralded_params {
    heralded_scheme scheme = heralded_scheme::midpoint_herald;
    double excitation_prob = 0.05; // weak_excitation only, << 1/2
};

double heralded_success_prob(const heralded_params& hp,
                             const channel_params& ch, double l0_km);

double heralded_trial_time(const heralded_params& hp, const channel_params& ch,
                           double l0_km);

// Expected time to herald entanglement over one link: trial / success.
double heralded_entanglement_time(const heralded_params& hp,
                                  const channel_params& ch, double l0_km);

// Rate ceiling per matter qubit for repeaters with two memories per node:
// (2 - p) / (15 - 8 p) * c / L; equals c/7L at p = 1.
double two_qm_bound(double p_ent, const channel_params& ch, double l_km);

// Mean extra storage time when both neighbouring links still need to herald:
// (3 - 2p) / (2 - p) * t_ent.
double storage_time_case4(double p_ent, double t_ent_s);

// Average over the four readiness cases: (7/4 - p) / (2 - p) * t_ent.
double storage_time_avg(double p_ent, double t_ent_s);

struct memory_bound_report {
    double p_ent = 0.0;
    double t_trial_s = 0.0;
    double t_ent_avg_s = 0.0;   // trial / success
    double t_store_avg_s = 0.0; // four-case average
    double r_generic_hz = 0.0;  // c/4L
    double r_two_qm_hz = 0.0;   // two_qm_bound at this p_ent
};

memory_bound_report memory_bound(const heralded_params& hp,
                                 const channel_params& ch, double l_km,
                                 double l0_km);

} // namespace rgsrate

#endif
