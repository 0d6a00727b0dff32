#include "rgsrate/channel.h"

#include <cmath>
#include <stdexcept>

namespace rgsrate {

void channel_params::validate() const {
    if (!(l_att_km > 0.0))
        throw std::domain_error("l_att_km must be positive");
    if (!(c_km_per_s > 0.0))
        throw std::domain_error("c_km_per_s must be positive");
    if (!(eta_c >= 0.0 && eta_c <= 1.0))
        throw std::domain_error("eta_c must be in [0, 1]");
    if (!(eta_d >= 0.0 && eta_d <= 1.0))
        throw std::domain_error("eta_d must be in [0, 1]");
    if (!(epsilon >= 0.0 && epsilon <= 0.5))
        throw std::domain_error("epsilon must be in [0, 0.5]");
}

void scenario::validate() const {
    if (!(l_km > 0.0))
        throw std::domain_error("l_km must be positive");
    if (!(l0_km > 0.0))
        throw std::domain_error("l0_km must be positive");
    if (!(l0_km <= l_km))
        throw std::domain_error("l0_km cannot exceed l_km");
    if (!(t_cz_s >= 0.0 && t_eph_s >= 0.0 && t_meas_s >= 0.0 && t_h_s >= 0.0))
        throw std::domain_error("gate times must be non-negative");
}

double transmission(double l_km, double l_att_km) {
    if (!(l_km >= 0.0))
        throw std::domain_error("fiber length must be non-negative");
    if (!(l_att_km > 0.0))
        throw std::domain_error("l_att_km must be positive");
    return std::exp(-l_km / l_att_km);
}

double single_photon_prob(const channel_params& ch, double l0_km) {
    return ch.eta_prod() * transmission(0.5 * l0_km, ch.l_att_km);
}

double memory_rate_upper_bound(const channel_params& ch, double l_km) {
    if (!(l_km > 0.0))
        throw std::domain_error("l_km must be positive");
    return ch.c_km_per_s / (4.0 * l_km);
}

} // namespace rgsrate
