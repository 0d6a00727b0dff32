#include "rgsrate/rate.h"

#include <cmath>
#include <stdexcept>

namespace rgsrate {

void rgs_shape::validate() const {
    if (m < 1)
        throw std::domain_error("m must be at least 1");
    // tree validity is enforced by its constructor
}

int64_t photon_count(const rgs_shape& shape) {
    shape.validate();
    return 2 * static_cast<int64_t>(shape.m) * (1 + shape.tree.photon_count());
}

int64_t matter_qubit_count(int tree_depth, double l_km, double l0_km) {
    if (tree_depth < 1)
        throw std::domain_error("tree_depth must be at least 1");
    if (!(l0_km > 0.0) || !(l_km >= l0_km))
        throw std::domain_error("need 0 < l0_km <= l_km");
    const int64_t n_links = std::llround(l_km / l0_km);
    return (n_links - 1) * (static_cast<int64_t>(tree_depth) + 1);
}

double bell_success_prob(double p_ph) {
    if (!(p_ph >= 0.0 && p_ph <= 1.0))
        throw std::domain_error("p_ph must be in [0, 1]");
    return 0.5 * p_ph * p_ph;
}

double link_success_prob(const rgs_shape& shape, double p_ph) {
    shape.validate();
    const logical_probs lp = logical_meas_probs(shape.tree, p_ph);
    const double p_bell = bell_success_prob(p_ph);
    const double any_bell =
        (p_bell >= 1.0) ? 1.0 : -std::expm1(shape.m * std::log1p(-p_bell));
    return any_bell * lp.pr_mx * lp.pr_mx *
           std::pow(lp.pr_mz, 2.0 * shape.m - 2.0);
}

double rgs_generation_time_full(const rgs_shape& shape, const scenario& sc) {
    shape.validate();
    const double two_m = 2.0 * shape.m;
    const int n = shape.tree.depth();
    const double f_outer = static_cast<double>(shape.tree.cumulative_width(n - 1));
    const double f_inner = static_cast<double>(shape.tree.cumulative_width(n - 2));
    return two_m * (1.0 + f_outer) * sc.t_eph_s + sc.t_meas_s +
           two_m * (2.0 + f_inner) * (sc.t_meas_s + sc.t_cz_s) +
           two_m * f_inner * sc.t_h_s;
}

double rgs_generation_time_cz(const rgs_shape& shape, double t_cz_s) {
    shape.validate();
    const int n = shape.tree.depth();
    const double f_inner = static_cast<double>(shape.tree.cumulative_width(n - 2));
    return 2.0 * shape.m * (2.0 + f_inner) * t_cz_s;
}

double direct_transmission_skr(const channel_params& ch, double l_km,
                               double rep_rate_hz) {
    if (!(rep_rate_hz >= 0.0))
        throw std::domain_error("rep_rate_hz must be non-negative");
    const double eta = ch.eta_prod() * transmission(l_km, ch.l_att_km);
    // -log2(1 - eta); eta is ~1e-22 at long distance, so expand via log1p
    return rep_rate_hz * (-std::log1p(-eta) / M_LN2);
}

rate_report evaluate_scenario(const rgs_shape& shape, const channel_params& ch,
                              const scenario& sc, bool fractional_links) {
    shape.validate();
    ch.validate();
    sc.validate();

    rate_report rep;
    rep.p_ph = single_photon_prob(ch, sc.l0_km);
    rep.p_bell = bell_success_prob(rep.p_ph);

    const tree_analysis ta = analyze_tree(shape.tree, rep.p_ph);
    const double any_bell =
        (rep.p_bell >= 1.0)
            ? 1.0
            : -std::expm1(shape.m * std::log1p(-rep.p_bell));
    rep.p_link = any_bell * ta.pr_mx_logical * ta.pr_mx_logical *
                 std::pow(ta.pr_mz_logical, 2.0 * shape.m - 2.0);

    rep.t_rgs_s = rgs_generation_time_full(shape, sc);

    const double n_real = sc.l_km / sc.l0_km;
    const int64_t n_int = std::llround(n_real);
    rep.n_links = fractional_links ? n_real : static_cast<double>(n_int);
    rep.n_matter = (n_int - 1) * (static_cast<int64_t>(shape.tree.depth()) + 1);
    rep.n_photons = photon_count(shape);

    if (rep.p_link > 0.0)
        rep.rate_hz =
            std::exp(rep.n_links * std::log(rep.p_link) - std::log(rep.t_rgs_s));
    rep.rate_per_matter_hz = rep.rate_hz / static_cast<double>(rep.n_matter);

    const int64_t n_qr = n_int - 1;
    if (ch.epsilon > 0.0) {
        const error_analysis ea =
            indirect_error_levels(shape.tree, ta, ch.epsilon);
        const logical_errors le = logical_error_rates(shape.tree, ta, ea);
        rep.ebar_x = le.ebar_x;
        rep.ebar_z = le.ebar_z;
        const fidelity_report fr =
            pair_fidelity(le.ebar_x, le.ebar_z, ch.epsilon, n_qr, shape.m);
        rep.f_ab = fr.f_ab;
        rep.skr_hz = secret_key_rate(rep.rate_hz, fr.f_ab);
    } else {
        rep.f_ab = 1.0;
        rep.skr_hz = rep.rate_hz;
    }
    rep.skr_per_matter_hz = rep.skr_hz / static_cast<double>(rep.n_matter);
    return rep;
}

} // namespace rgsrate
