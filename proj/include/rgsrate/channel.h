#ifndef RGSRATE_CHANNEL_H
#define RGSRATE_CHANNEL_H

namespace rgsrate {

// Fiber and hardware parameters shared by every computation.
// Distances in km, times in seconds, rates in Hz.
struct channel_params {
    double l_att_km = 20.0;     // fiber attenuation length
    double c_km_per_s = 2e5;    // speed of light in fiber
    double eta_c = 1.0;         // photon collection efficiency
    double eta_d = 1.0;         // photon detection efficiency
    double epsilon = 0.0;       // single-photon error probability

    double t_att_s() const { return l_att_km / c_km_per_s; }
    double eta_prod() const { return eta_c * eta_d; }
    void validate() const;
};

// One concrete deployment: total distance, node separation, gate times.
struct scenario {
    double l_km = 0.0;          // Alice-Bob distance
    double l0_km = 0.0;         // separation between adjacent source nodes
    double t_cz_s = 10e-9;      // CZ gate time
    double t_eph_s = 0.0;       // photon emission time
    double t_meas_s = 0.0;      // matter-qubit measurement time
    double t_h_s = 0.0;         // Hadamard time

    double n_links() const { return l_km / l0_km; }
    void validate() const;
};

// Fiber transmission probability exp(-l/l_att).
double transmission(double l_km, double l_att_km);

// Probability that one photon is collected, survives l0/2 of fiber and is
// detected at the measurement node.
double single_photon_prob(const channel_params& ch, double l0_km);

// Generic upper bound c/(4L) on the secret-key rate of any memory-based
// repeater chain spanning l_km.
double memory_rate_upper_bound(const channel_params& ch, double l_km);

} // namespace rgsrate

#endif
