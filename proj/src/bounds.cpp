#include "rgsrate/bounds.h"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace rgsrate {

double heralded_success_prob(const heralded_params& hp,
                             const channel_params& ch, double l0_km) {
    if (!(l0_km > 0.0))
        throw std::domain_error("l0_km must be positive");
    const double eta_t = std::exp(-l0_km / ch.l_att_km);
    switch (hp.scheme) {
    case heralded_scheme::midpoint_herald:
        return 0.5 * eta_t;
    case heralded_scheme::direct_to_node:
        return eta_t;
    case heralded_scheme::weak_excitation:
        if (!(hp.excitation_prob > 0.0 && hp.excitation_prob < 0.5))
            throw std::domain_error("excitation_prob must be in (0, 0.5)");
        return hp.excitation_prob * std::exp(-l0_km / (2.0 * ch.l_att_km));
    }
    throw std::invalid_argument("unknown heralded scheme");
}

double heralded_trial_time(const heralded_params& hp, const channel_params& ch,
                           double l0_km) {
    if (!(l0_km > 0.0))
        throw std::domain_error("l0_km must be positive");
    const double flight = l0_km / ch.c_km_per_s;
    // photons plus the heralding signal cover l0 once via a midpoint, twice
    // when the photon travels the full link
    return (hp.scheme == heralded_scheme::direct_to_node) ? 2.0 * flight
                                                          : flight;
}

double heralded_entanglement_time(const heralded_params& hp,
                                  const channel_params& ch, double l0_km) {
    const double p = heralded_success_prob(hp, ch, l0_km);
    const double t = heralded_trial_time(hp, ch, l0_km);
    if (p <= 0.0)
        return std::numeric_limits<double>::infinity();
    return t / p;
}

double two_qm_bound(double p_ent, const channel_params& ch, double l_km) {
    if (!(p_ent > 0.0 && p_ent <= 1.0))
        throw std::domain_error("p_ent must be in (0, 1]");
    if (!(l_km > 0.0))
        throw std::domain_error("l_km must be positive");
    return (2.0 - p_ent) / (15.0 - 8.0 * p_ent) * ch.c_km_per_s / l_km;
}

double storage_time_case4(double p_ent, double t_ent_s) {
    if (!(p_ent > 0.0 && p_ent <= 1.0))
        throw std::domain_error("p_ent must be in (0, 1]");
    return (3.0 - 2.0 * p_ent) / (2.0 - p_ent) * t_ent_s;
}

double storage_time_avg(double p_ent, double t_ent_s) {
    if (!(p_ent > 0.0 && p_ent <= 1.0))
        throw std::domain_error("p_ent must be in (0, 1]");
    return (1.75 - p_ent) / (2.0 - p_ent) * t_ent_s;
}

memory_bound_report memory_bound(const heralded_params& hp,
                                 const channel_params& ch, double l_km,
                                 double l0_km) {
    ch.validate();
    if (!(l0_km <= l_km))
        throw std::domain_error("l0_km cannot exceed l_km");
    memory_bound_report r;
    r.p_ent = heralded_success_prob(hp, ch, l0_km);
    r.t_trial_s = heralded_trial_time(hp, ch, l0_km);
    r.t_ent_avg_s = heralded_entanglement_time(hp, ch, l0_km);
    r.t_store_avg_s = storage_time_avg(r.p_ent, r.t_ent_avg_s);
    r.r_generic_hz = memory_rate_upper_bound(ch, l_km);
    r.r_two_qm_hz = two_qm_bound(r.p_ent, ch, l_km);
    return r;
}

} // namespace rgsrate
