#include "rgsrate/optimizer.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "rgsrate/bounds.h"
#include "rgsrate/error_model.h"

namespace rgsrate {

void search_space::validate() const {
    if (m_min < 1 || m_max < m_min)
        throw std::domain_error("need 1 <= m_min <= m_max");
    if (b0_min < 1 || b0_max < b0_min)
        throw std::domain_error("need 1 <= b0_min <= b0_max");
    if (b1_min < 1 || b1_max < b1_min)
        throw std::domain_error("need 1 <= b1_min <= b1_max");
    if (!(l0_min_att > 0.0) || !(l0_max_att >= l0_min_att))
        throw std::domain_error("need 0 < l0_min_att <= l0_max_att");
}

std::pair<int, int> search_space::link_range(double l_km,
                                             double l_att_km) const {
    validate();
    if (!(l_km > 0.0) || !(l_att_km > 0.0))
        throw std::domain_error("distances must be positive");
    // 1e-9 fuzz keeps exact boundaries (e.g. L a multiple of l_att) inside
    const double lo = l_km / (l0_max_att * l_att_km);
    const double hi = l_km / (l0_min_att * l_att_km);
    const int n_min = std::max(2, static_cast<int>(std::ceil(lo - 1e-9)));
    const int n_max = static_cast<int>(std::floor(hi + 1e-9));
    if (n_max < n_min)
        throw std::domain_error("node separation window admits no link count");
    return {n_min, n_max};
}

namespace {

// best link count seen so far for one (m, b0, b1)
struct shape_best {
    bool set = false;
    int n = 0;
    double obj = 0.0;
};

double pick_objective(objective_kind kind, const rate_report& rep) {
    return kind == objective_kind::secret_key_per_matter
               ? rep.skr_per_matter_hz
               : rep.rate_per_matter_hz;
}

} // namespace

optimization_result optimize(double l_km, const channel_params& ch,
                             const scenario& sc_template,
                             const search_space& space) {
    ch.validate();
    space.validate();
    {
        scenario probe = sc_template;
        probe.l_km = l_km;
        probe.l0_km = l_km;
        probe.validate(); // gate times and l_km > 0
    }
    if (sc_template.t_cz_s == 0.0 && sc_template.t_eph_s == 0.0 &&
        sc_template.t_meas_s == 0.0 && sc_template.t_h_s == 0.0)
        throw std::domain_error("all gate times are zero");

    const auto [n_min, n_max] = space.link_range(l_km, ch.l_att_km);
    const int nm = space.m_max - space.m_min + 1;
    const int nb0 = space.b0_max - space.b0_min + 1;
    const int nb1 = space.b1_max - space.b1_min + 1;
    std::vector<shape_best> grid(static_cast<size_t>(nm) *
                                 static_cast<size_t>(nb0) *
                                 static_cast<size_t>(nb1));
    const auto grid_at = [&](int m, int b0, int b1) -> shape_best& {
        const size_t i = (static_cast<size_t>(m - space.m_min) *
                              static_cast<size_t>(nb0) +
                          static_cast<size_t>(b0 - space.b0_min)) *
                             static_cast<size_t>(nb1) +
                         static_cast<size_t>(b1 - space.b1_min);
        return grid[i];
    };

    const double eps = ch.epsilon;
    const bool want_key =
        space.objective == objective_kind::secret_key_per_matter;
    for (int b0 = space.b0_min; b0 <= space.b0_max; ++b0) {
        for (int b1 = space.b1_min; b1 <= space.b1_max; ++b1) {
            const tree_vector tree(std::vector<int>{b0, b1});
            const double f_outer =
                static_cast<double>(tree.cumulative_width(1));
            const double f_inner =
                static_cast<double>(tree.cumulative_width(0));
            // t_rgs = 2 m k_time + t_meas
            const double k_time =
                (1.0 + f_outer) * sc_template.t_eph_s +
                (2.0 + f_inner) * (sc_template.t_meas_s + sc_template.t_cz_s) +
                f_inner * sc_template.t_h_s;
            for (int n = n_min; n <= n_max; ++n) {
                const double l0 = l_km / n;
                const double p_ph = single_photon_prob(ch, l0);
                const tree_analysis ta = analyze_tree(tree, p_ph);
                const double prmx = ta.pr_mx_logical;
                const double prmz = ta.pr_mz_logical;
                const double p_bell = bell_success_prob(p_ph);
                const double log_miss = std::log1p(-p_bell);
                double ebx = 0.0;
                double ebz = 0.0;
                if (eps > 0.0 && want_key) {
                    const error_analysis ea =
                        indirect_error_levels(tree, ta, eps);
                    const logical_errors le =
                        logical_error_rates(tree, ta, ea);
                    ebx = le.ebar_x;
                    ebz = le.ebar_z;
                }
                const double n_matter = 3.0 * (n - 1);
                for (int m = space.m_min; m <= space.m_max; ++m) {
                    const double any_bell = -std::expm1(m * log_miss);
                    const double p_link = any_bell * prmx * prmx *
                                          std::pow(prmz, 2.0 * m - 2.0);
                    const double t_rgs =
                        2.0 * m * k_time + sc_template.t_meas_s;
                    double rate = 0.0;
                    if (p_link > 0.0)
                        rate = std::exp(n * std::log(p_link) -
                                        std::log(t_rgs));
                    double value = rate;
                    if (want_key && eps > 0.0 && rate > 0.0) {
                        const fidelity_report fr =
                            pair_fidelity(ebx, ebz, eps, n - 1, m);
                        value = secret_key_rate(rate, fr.f_ab);
                    }
                    const double obj = value / n_matter;
                    shape_best& cur = grid_at(m, b0, b1);
                    // ties keep the smaller link count
                    if (!cur.set || obj > cur.obj * (1.0 + 1e-12)) {
                        cur.set = true;
                        cur.n = n;
                        cur.obj = obj;
                    }
                }
            }
        }
    }

    optimization_result out;
    out.objective = space.objective;
    if (space.keep_trace)
        out.trace.reserve(grid.size());
    scenario sc2 = sc_template;
    sc2.l_km = l_km;
    bool have_best = false;
    // lexicographic (m, b0, b1) pass; ties keep the earlier candidate
    for (int m = space.m_min; m <= space.m_max; ++m) {
        for (int b0 = space.b0_min; b0 <= space.b0_max; ++b0) {
            for (int b1 = space.b1_min; b1 <= space.b1_max; ++b1) {
                const shape_best& sb = grid_at(m, b0, b1);
                candidate c;
                c.m = m;
                c.b0 = b0;
                c.b1 = b1;
                c.n_links = sb.n;
                c.l0_km = l_km / sb.n;
                sc2.l0_km = c.l0_km;
                const rgs_shape shape{m, tree_vector(std::vector<int>{b0, b1})};
                c.report = evaluate_scenario(shape, ch, sc2);
                c.objective = pick_objective(space.objective, c.report);
                if (!have_best ||
                    c.objective > out.best.objective * (1.0 + 1e-12)) {
                    out.best = c;
                    have_best = true;
                }
                if (space.keep_trace)
                    out.trace.push_back(std::move(c));
            }
        }
    }
    out.feasible = out.best.objective > 0.0;
    return out;
}

distance_sweep sweep_distance(const std::vector<double>& l_list_km,
                              const channel_params& ch, const scenario& sc,
                              const search_space& space, double fit_l_min_km,
                              double fit_l_max_km) {
    if (l_list_km.empty())
        throw std::domain_error("need at least one distance");
    distance_sweep out;
    out.l_km = l_list_km;
    out.results.reserve(l_list_km.size());
    for (const double l : l_list_km)
        out.results.push_back(optimize(l, ch, sc, space));

    const bool fit_all = (fit_l_min_km == 0.0 && fit_l_max_km == 0.0);
    std::vector<double> xs;
    std::vector<double> ys;
    for (size_t i = 0; i < l_list_km.size(); ++i) {
        const double l = l_list_km[i];
        if (!fit_all && (l < fit_l_min_km || l > fit_l_max_km))
            continue;
        const optimization_result& r = out.results[i];
        if (!r.feasible)
            continue;
        xs.push_back(std::log(l));
        ys.push_back(std::log(r.best.objective));
    }
    if (xs.size() >= 2) {
        const double n = static_cast<double>(xs.size());
        double mx = 0.0;
        double my = 0.0;
        for (size_t i = 0; i < xs.size(); ++i) {
            mx += xs[i];
            my += ys[i];
        }
        mx /= n;
        my /= n;
        double sxy = 0.0;
        double sxx = 0.0;
        for (size_t i = 0; i < xs.size(); ++i) {
            sxy += (xs[i] - mx) * (ys[i] - my);
            sxx += (xs[i] - mx) * (xs[i] - mx);
        }
        if (sxx > 0.0) {
            out.scaling_exponent = sxy / sxx;
            out.exponent_defined = true;
        }
    }
    return out;
}

std::vector<rate_report> fixed_shape_sweep(const rgs_shape& shape,
                                           double l0_km,
                                           const std::vector<double>& l_list_km,
                                           const channel_params& ch,
                                           const scenario& sc) {
    std::vector<rate_report> out;
    out.reserve(l_list_km.size());
    scenario sc2 = sc;
    sc2.l0_km = l0_km;
    for (const double l : l_list_km) {
        sc2.l_km = l;
        out.push_back(evaluate_scenario(shape, ch, sc2));
    }
    return out;
}

rate_quantity default_quantity(scan_parameter p) {
    return p == scan_parameter::eta_prod ? rate_quantity::total
                                         : rate_quantity::per_matter;
}

namespace {

std::pair<double, double> default_bracket(scan_parameter p) {
    switch (p) {
    case scan_parameter::t_cz:
        return {1e-9, 1e-5};
    case scan_parameter::eta_prod:
        return {0.5, 1.0};
    case scan_parameter::epsilon:
        return {0.0, 0.01};
    }
    throw std::domain_error("unknown scan parameter");
}

} // namespace

crossover_result find_crossover(const crossover_request& req, double l_km,
                                const channel_params& ch, const scenario& sc,
                                const search_space& space) {
    if (!(req.rel_tol > 0.0) || !(req.rel_tol < 1.0))
        throw std::domain_error("rel_tol must be in (0, 1)");
    if (req.prescan_points < 3)
        throw std::domain_error("need at least 3 prescan points");
    if (req.direct_rep_exponent < 0 || req.direct_rep_exponent > 12)
        throw std::domain_error("direct_rep_exponent must be in [0, 12]");

    double lo = req.scan_lo;
    double hi = req.scan_hi;
    if (lo == 0.0 && hi == 0.0) {
        const auto br = default_bracket(req.parameter);
        lo = br.first;
        hi = br.second;
    }
    if (!(hi > lo))
        throw std::domain_error("scan bracket needs scan_hi > scan_lo");

    const rate_quantity qty =
        req.quantity ? *req.quantity : default_quantity(req.parameter);

    // (optimized quantity, baseline) at one value of the scanned parameter;
    // the direct-transmission baseline moves with the scanned eta and t_cz
    const auto eval = [&](double x) -> std::pair<double, double> {
        channel_params ch2 = ch;
        scenario sc2 = sc;
        sc2.l_km = l_km;
        switch (req.parameter) {
        case scan_parameter::t_cz:
            sc2.t_cz_s = x;
            break;
        case scan_parameter::eta_prod:
            ch2.eta_c = x;
            ch2.eta_d = 1.0;
            break;
        case scan_parameter::epsilon:
            ch2.epsilon = x;
            break;
        }
        const optimization_result res = optimize(l_km, ch2, sc2, space);
        const double q = qty == rate_quantity::total
                             ? res.best.report.skr_hz
                             : res.best.report.skr_per_matter_hz;
        double base = 0.0;
        if (req.baseline == baseline_kind::memory_bound) {
            base = two_qm_bound(1.0, ch2, l_km);
        } else {
            if (!(sc2.t_cz_s > 0.0))
                throw std::domain_error(
                    "direct baseline needs a positive t_cz");
            base = direct_transmission_skr(
                ch2, l_km,
                std::pow(10.0, req.direct_rep_exponent) / sc2.t_cz_s);
        }
        return {q, base};
    };

    const int k = req.prescan_points;
    std::vector<double> xs(static_cast<size_t>(k));
    std::vector<double> qs(static_cast<size_t>(k));
    std::vector<double> fs(static_cast<size_t>(k));
    std::vector<double> bs(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) {
        xs[i] = lo + (hi - lo) * i / (k - 1);
        const auto [q, base] = eval(xs[i]);
        qs[i] = q;
        bs[i] = base;
        fs[i] = q - base;
    }

    // coarse monotonicity check; 2% slack tolerates the small jumps the
    // discrete shape argmax produces
    const bool rising = qs[k - 1] > qs[0];
    for (int i = 0; i + 1 < k; ++i) {
        const double slack =
            0.02 * std::max(std::abs(qs[i]), std::abs(qs[i + 1]));
        const bool bad = rising ? qs[i + 1] < qs[i] - slack
                                : qs[i + 1] > qs[i] + slack;
        if (bad)
            throw std::domain_error(
                "quantity is not monotone across the scan bracket");
    }

    crossover_result res;
    res.quantity = qty;
    int seg = -1;
    for (int i = 0; i < k; ++i) {
        if (fs[i] == 0.0) {
            res.found = true;
            res.value = xs[i];
            res.rgs_rate_hz = qs[i];
            res.baseline_rate_hz = bs[i];
            return res;
        }
        if (i + 1 < k && (fs[i] > 0.0) != (fs[i + 1] > 0.0)) {
            seg = i;
            break;
        }
    }
    if (seg < 0) {
        // no crossing in the bracket; report the upper endpoint for context
        res.value = 0.0;
        res.rgs_rate_hz = qs[k - 1];
        res.baseline_rate_hz = bs[k - 1];
        return res;
    }

    double a = xs[seg];
    double b = xs[seg + 1];
    double fa = fs[seg];
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (a + b);
        const auto [q, base] = eval(mid);
        const double fm = q - base;
        res.value = mid;
        res.rgs_rate_hz = q;
        res.baseline_rate_hz = base;
        if (std::abs(fm) <= req.rel_tol * std::abs(base)) {
            res.found = true;
            return res;
        }
        if ((fm > 0.0) == (fa > 0.0)) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
        if (b - a <= 1e-12 * std::max(std::abs(a), std::abs(b))) {
            res.found = true;
            return res;
        }
    }
    res.found = true; // bracket exhausted
    return res;
}

} // namespace rgsrate
