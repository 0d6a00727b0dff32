// acceptance gate: one line per criterion, nonzero exit when any fails
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "oracles/exhaustive.h"
#include "rgsrate/bounds.h"
#include "rgsrate/error_model.h"
#include "rgsrate/monte_carlo.h"
#include "rgsrate/optimizer.h"
#include "rgsrate/rate.h"
#include "rgsrate/tree.h"

using namespace rgsrate;

namespace {

int failures = 0;

void report(bool ok, const std::string& line) {
    std::printf("%s: %s\n", ok ? "PASS" : "FAIL", line.c_str());
    std::fflush(stdout);
    if (!ok)
        ++failures;
}

std::string num(double v, const char* fmt = "%.4g") {
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, v);
    return buf;
}

scenario cz_scenario() {
    scenario sc;
    sc.t_cz_s = 1e-8;
    return sc;
}

struct table2_row {
    double l_over_latt;
    int m;
    int b0;
    int b1;
    double l0_over_latt;
    double robj_tcz;
};

void criterion_1() {
    const channel_params ch;
    const std::vector<table2_row> rows = {
        {10.0, 11, 8, 4, 0.23, 2.4e-5},  {25.0, 13, 10, 5, 0.21, 6.8e-6},
        {50.0, 14, 10, 5, 0.19, 2.8e-6}, {100.0, 15, 10, 5, 0.17, 1.1e-6},
        {150.0, 16, 10, 5, 0.15, 6.8e-7}};
    bool ok = true;
    std::ostringstream detail;
    for (const table2_row& row : rows) {
        const double l = row.l_over_latt * ch.l_att_km;
        const optimization_result res =
            optimize(l, ch, cz_scenario(), search_space{});
        const double objtcz = res.best.objective * 1e-8;
        const bool shape_exact = res.best.m == row.m &&
                                 res.best.b0 == row.b0 &&
                                 res.best.b1 == row.b1;
        const bool obj_close = std::abs(objtcz - row.robj_tcz) <=
                               0.02 * row.robj_tcz;
        const double l0_att = res.best.l0_km / ch.l_att_km;
        const bool l0_ok = std::abs(l0_att - row.l0_over_latt) <= 0.02 + 1e-12;
        const bool robj_ok = std::abs(objtcz - row.robj_tcz) <=
                             0.10 * row.robj_tcz;
        if (!(res.feasible && (shape_exact || obj_close) && l0_ok && robj_ok))
            ok = false;
        detail << " " << row.l_over_latt << ":(" << res.best.m << ","
               << res.best.b0 << "," << res.best.b1 << ")@"
               << num(l0_att, "%.3f") << "," << num(objtcz);
    }
    report(ok, "C1 tabulated optima at L/L_att {10,25,50,100,150}:" +
                   detail.str());
}

void criterion_2() {
    const channel_params ch;
    scenario sc = cz_scenario();
    sc.l_km = 1000.0;
    sc.l0_km = 1000.0 / 263.0;
    const rgs_shape shape{14, tree_vector({10, 5})};
    const rate_report rep = evaluate_scenario(shape, ch, sc);
    const double bound = memory_rate_upper_bound(ch, 1000.0);
    const bool ok = std::abs(rep.rate_hz - 220e3) <= 22e3 &&
                    rep.n_matter == 786 &&
                    std::abs(rep.rate_per_matter_hz - 276.0) <= 27.6 &&
                    std::abs(bound - 50.0) <= 50.0 * 1e-12;
    report(ok, "C2 worked example at 1000 km: R=" + num(rep.rate_hz) +
                   " Hz vs 220 kHz, N_m=" + std::to_string(rep.n_matter) +
                   ", per matter " + num(rep.rate_per_matter_hz) +
                   " Hz vs 276 Hz, memory bound " + num(bound) + " Hz");
}

void criterion_3() {
    const channel_params ch;
    std::vector<double> ls;
    for (double f : {50.0, 75.0, 100.0, 125.0, 150.0, 175.0, 200.0})
        ls.push_back(f * ch.l_att_km);
    const distance_sweep sw =
        sweep_distance(ls, ch, cz_scenario(), search_space{});
    const bool ok = sw.exponent_defined &&
                    sw.scaling_exponent >= -1.35 &&
                    sw.scaling_exponent <= -1.19;
    report(ok, "C3 power-law exponent over [50,200] L_att: " +
                   num(sw.scaling_exponent, "%.6f") + " within -1.27 +/- 0.08");
}

void criterion_4() {
    const channel_params ch;
    bool ok = true;
    std::ostringstream detail;

    crossover_request req;
    req.parameter = scan_parameter::eta_prod;
    const crossover_result eta =
        find_crossover(req, 1000.0, ch, cz_scenario(), search_space{});
    ok = ok && eta.found && eta.value >= 0.83 && eta.value <= 0.87;
    detail << "eta=" << num(eta.value, "%.5f") << " in [0.83,0.87]";

    req = crossover_request{};
    req.parameter = scan_parameter::epsilon;
    const crossover_result eps =
        find_crossover(req, 1000.0, ch, cz_scenario(), search_space{});
    ok = ok && eps.found && eps.value >= 5e-5 && eps.value <= 2e-4;
    detail << "; eps=" << num(eps.value) << " in [5e-5,2e-4]";

    req = crossover_request{};
    req.parameter = scan_parameter::t_cz;
    const crossover_result tcz =
        find_crossover(req, 4000.0, ch, cz_scenario(), search_space{});
    const double target = 6e-4 * ch.t_att_s();
    ok = ok && tcz.found && tcz.value >= target / 1.5 &&
         tcz.value <= target * 1.5;
    detail << "; t_cz=" << num(tcz.value) << " within 1.5x of "
           << num(target);

    report(ok, "C4 crossover thresholds: " + detail.str());
}

void criterion_5() {
    const auto trees = rgsrate_tests::all_trees_up_to(16);
    double worst_pr = 0.0;
    double worst_err = 0.0;
    const double eps = 0.1;
    for (const auto& spec : trees) {
        const tree_vector b(spec);
        for (double p : {0.3, 0.5, 0.7, 0.9}) {
            const tree_analysis ta = analyze_tree(b, p);
            const logical_probs lp = logical_meas_probs(b, ta);
            const error_analysis ea = indirect_error_levels(b, ta, eps);
            const logical_errors le = logical_error_rates(b, ta, ea);
            const rgsrate_tests::exhaustive_result ex =
                rgsrate_tests::exhaustive_tree(b, p, eps);
            worst_pr = std::max(worst_pr, std::abs(lp.pr_mx - ex.pr_mx));
            worst_pr = std::max(worst_pr, std::abs(lp.pr_mz - ex.pr_mz));
            worst_err = std::max(worst_err, std::abs(le.ebar_x - ex.ebar_x));
            worst_err = std::max(worst_err, std::abs(le.ebar_z - ex.ebar_z));
        }
    }
    const bool ok = worst_pr <= 1e-12 && worst_err <= 1e-10;
    report(ok, "C5 brute force over " + std::to_string(trees.size()) +
                   " trees (<=16 photons) x 4 transfer probs: max success "
                   "dev " +
                   num(worst_pr, "%.2e") + " <= 1e-12, max error dev " +
                   num(worst_err, "%.2e") + " <= 1e-10 (eps=0.1)");
}

void criterion_6() {
    mc_config cfg;
    cfg.n_samples = 1000000;
    cfg.seed = 1;
    bool ok = true;
    double worst_sigma = 0.0;
    const auto pull = [&](const mc_estimate& e, double truth) {
        const double dev = std::abs(e.mean - truth);
        if (e.std_err == 0.0) {
            if (dev > 1e-12)
                ok = false;
            return;
        }
        worst_sigma = std::max(worst_sigma, dev / e.std_err);
        if (dev > 3.0 * e.std_err + 1e-12)
            ok = false;
    };
    for (const auto& spec : {std::vector<int>{4, 2}, {10, 5}}) {
        const tree_vector b(spec);
        for (double p : {0.8, 0.91}) {
            const tree_analysis ta = analyze_tree(b, p);
            const logical_probs lp = logical_meas_probs(b, ta);
            for (double eps : {0.0, 1e-3}) {
                const error_analysis ea = indirect_error_levels(b, ta, eps);
                const logical_errors le = logical_error_rates(b, ta, ea);
                const mc_logical_result mc = mc_logical_error(b, p, eps, cfg);
                pull(mc.pr_mx, lp.pr_mx);
                pull(mc.pr_mz, lp.pr_mz);
                pull(mc.ebar_x, le.ebar_x);
                pull(mc.ebar_z, le.ebar_z);
            }
        }
    }
    const tree_vector b({10, 5});
    const mc_logical_result a = mc_logical_error(b, 0.91, 1e-3, cfg);
    const mc_logical_result c = mc_logical_error(b, 0.91, 1e-3, cfg);
    const bool repro = a.pr_mx.mean == c.pr_mx.mean &&
                       a.pr_mz.mean == c.pr_mz.mean &&
                       a.ebar_x.mean == c.ebar_x.mean &&
                       a.ebar_z.mean == c.ebar_z.mean &&
                       a.ebar_x.n == c.ebar_x.n;
    ok = ok && repro;
    report(ok, "C6 Monte Carlo at 1e6 samples: worst deviation " +
                   num(worst_sigma, "%.2f") +
                   " standard errors (<= 3), fixed-seed rerun bit-identical: " +
                   (repro ? "yes" : "no"));
}

void criterion_7() {
    // a single logical basis can beat p_ph even below threshold (e.g.
    // b=(1,30) reaches Pr(M_Z) ~ 1 at p_ph=0.49), so the meaningful
    // threshold statement is the product bound both bases obey
    double worst_product = 0.0;
    double best_single = 0.0;
    for (int b0 = 1; b0 <= 30; ++b0) {
        for (int b1 = 1; b1 <= 30; ++b1) {
            const logical_probs lp =
                logical_meas_probs(tree_vector({b0, b1}), 0.49);
            worst_product = std::max(worst_product, lp.pr_mx * lp.pr_mz);
            best_single = std::max(best_single, lp.pr_mz);
        }
    }
    double best_07 = 0.0;
    for (int b0 = 1; b0 <= 30; ++b0)
        for (int b1 = 1; b1 <= 30; ++b1)
            best_07 = std::max(best_07,
                               logical_meas_probs(tree_vector({b0, b1}), 0.7)
                                   .pr_mz);
    const bool ok = worst_product <= 0.49 + 0.05 && best_07 > 0.99;
    report(ok, "C7 loss-tolerance threshold: max Pr(MX)*Pr(MZ) at p_ph=0.49 "
               "is " +
                   num(worst_product, "%.4f") +
                   " <= 0.54 (single-basis max " + num(best_single, "%.4f") +
                   " exceeds p_ph, hence the product form); at p_ph=0.7 max "
                   "Pr(MZ)=" +
                   num(best_07, "%.6f") + " > 0.99");
}

double series_mean_max_trials(double p) {
    double mean = 0.0;
    double prev_cdf = 0.0;
    for (int n = 1; n < 100000; ++n) {
        const double cdf = std::pow(1.0 - std::pow(1.0 - p, n), 2);
        mean += n * (cdf - prev_cdf);
        prev_cdf = cdf;
        if (1.0 - cdf < 1e-18)
            break;
    }
    return mean;
}

void criterion_8() {
    const channel_params ch;
    bool ok = true;

    double worst_c7l = 0.0;
    for (double l : {100.0, 500.0, 1000.0, 2500.0, 4000.0}) {
        const double want = ch.c_km_per_s / (7.0 * l);
        worst_c7l = std::max(worst_c7l,
                             std::abs(two_qm_bound(1.0, ch, l) - want) / want);
    }
    ok = ok && worst_c7l <= 1e-12;

    double worst_series = 0.0;
    for (int i = 1; i <= 10; ++i) {
        const double p = 0.1 * i;
        const double series = series_mean_max_trials(p);
        const double val = storage_time_case4(p, 1.0 / p);
        worst_series = std::max(worst_series,
                                std::abs(val - series) / series);
    }
    ok = ok && worst_series <= 1e-6;

    const optimization_result res =
        optimize(50.0 * ch.l_att_km, ch, cz_scenario(), search_space{});
    const double t2 = coherence_time_requirement(
        res.best.report.t_rgs_s, res.best.report.n_photons, 1e-4);
    const double ratio = t2 / 1e-8;
    ok = ok && ratio >= 1000.0 && ratio <= 10000.0;

    report(ok, "C8 bounds algebra: c/7L dev " + num(worst_c7l, "%.2e") +
                   ", storage series dev " + num(worst_series, "%.2e") +
                   ", T2/T_CZ at the 50 L_att optimum = " +
                   num(ratio, "%.1f") + " in [1000,10000]");
}

} // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    if (failures > 0) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all acceptance criteria passed\n");
    return 0;
}
