#ifndef RGSRATE_OPTIMIZER_H
#define RGSRATE_OPTIMIZER_H

#include <optional>
#include <utility>
#include <vector>

#include "rgsrate/channel.h"
#include "rgsrate/rate.h"

namespace rgsrate {

enum class objective_kind {
    rate_per_matter,
    secret_key_per_matter, // equals rate_per_matter when epsilon = 0
};

// Exhaustive grid over (m, b0, b1) with a node-separation scan per shape.
// The link count is the integer n = L / L0, scanned over the range implied
// by the L0 window.
struct search_space {
    int m_min = 1;
    int m_max = 30;
    int b0_min = 1;
    int b0_max = 20;
    int b1_min = 1;
    int b1_max = 20;
    double l0_min_att = 0.05; // node separation window, units of l_att
    double l0_max_att = 1.0;
    objective_kind objective = objective_kind::secret_key_per_matter;
    bool keep_trace = true;

    void validate() const;
    // [n_min, n_max] for a total distance; at least 2 links.
    std::pair<int, int> link_range(double l_km, double l_att_km) const;
};

struct candidate {
    int m = 0;
    int b0 = 0;
    int b1 = 0;
    int n_links = 0;
    double l0_km = 0.0;
    double objective = 0.0;
    rate_report report;
};

struct optimization_result {
    bool feasible = false;
    objective_kind objective = objective_kind::secret_key_per_matter;
    candidate best;
    // one entry per (m, b0, b1): its best link count; deterministic order
    std::vector<candidate> trace;
};

// Grid search maximizing the chosen objective. sc_template supplies gate
// times; its distances are ignored. Ties within 1e-12 relative objective
// resolve to the lexicographically smallest (m, b0, b1, n_links).
optimization_result optimize(double l_km, const channel_params& ch,
                             const scenario& sc_template,
                             const search_space& space);

struct distance_sweep {
    std::vector<double> l_km;
    std::vector<optimization_result> results;
    // least-squares slope of ln(objective) vs ln(L) over the fit window
    double scaling_exponent = 0.0;
    bool exponent_defined = false;
};

distance_sweep sweep_distance(const std::vector<double>& l_list_km,
                              const channel_params& ch, const scenario& sc,
                              const search_space& space,
                              double fit_l_min_km = 0.0,
                              double fit_l_max_km = 0.0); // 0,0: fit all

// Re-evaluates one frozen (shape, L0) across distances.
std::vector<rate_report> fixed_shape_sweep(const rgs_shape& shape,
                                           double l0_km,
                                           const std::vector<double>& l_list_km,
                                           const channel_params& ch,
                                           const scenario& sc);

enum class scan_parameter { t_cz, eta_prod, epsilon };
enum class baseline_kind { memory_bound, direct_transmission };
enum class rate_quantity { total, per_matter };

// Which optimized quantity is compared against the baseline when the caller
// does not choose: total protocol rate for the eta_prod scan (the baselines
// are absolute rates), per-matter for t_cz and epsilon (resource-efficiency
// thresholds).
rate_quantity default_quantity(scan_parameter p);

struct crossover_request {
    scan_parameter parameter = scan_parameter::eta_prod;
    baseline_kind baseline = baseline_kind::memory_bound;
    std::optional<rate_quantity> quantity; // empty: default_quantity(parameter)
    double scan_lo = 0.0; // 0,0: per-parameter default bracket
    double scan_hi = 0.0;
    int direct_rep_exponent = 6; // direct-transmission source rate 10^i / t_cz
    double rel_tol = 1e-3;
    int prescan_points = 9;
};

struct crossover_result {
    bool found = false;
    double value = 0.0; // threshold of the scanned parameter
    double rgs_rate_hz = 0.0;
    double baseline_rate_hz = 0.0;
    rate_quantity quantity = rate_quantity::per_matter;
};

// Bisects the scanned parameter until the optimized quantity meets the
// baseline within rel_tol. The memory-bound baseline is the two-memory
// repeater ceiling at unit heralding probability, c/7L. A coarse pre-scan
// asserts the quantity is monotone in the parameter; no sign change in the
// bracket reports found = false.
crossover_result find_crossover(const crossover_request& req, double l_km,
                                const channel_params& ch, const scenario& sc,
                                const search_space& space);

} // namespace rgsrate

#endif
