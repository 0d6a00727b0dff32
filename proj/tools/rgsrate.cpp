// command-line front end: eval, optimize, sweep, crossover, bounds, mc-check
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "rgsrate/bounds.h"
#include "rgsrate/config.h"
#include "rgsrate/error_model.h"
#include "rgsrate/monte_carlo.h"
#include "rgsrate/optimizer.h"
#include "rgsrate/rate.h"
#include "rgsrate/table.h"

using namespace rgsrate;

namespace {

struct cli_options {
    std::string command;
    std::string format = "csv"; // csv | json
    std::string output = "-";   // - : stdout
    // channel
    double l_att_km = 20.0;
    double c_km_per_s = 2e5;
    double eta_c = 1.0;
    double eta_d = 1.0;
    double epsilon = 0.0;
    // gate times
    double t_cz_s = 10e-9;
    double t_eph_s = 0.0;
    double t_meas_s = 0.0;
    double t_h_s = 0.0;
    // scenario / shape
    std::string L;  // km, or Latt suffix
    std::string L0;
    int m = 1;
    std::string tree = "2"; // comma-separated branching vector
    bool fractional_links = false;
    // search space
    int m_min = 1;
    int m_max = 30;
    int b0_min = 1;
    int b0_max = 20;
    int b1_min = 1;
    int b1_max = 20;
    double l0_min_att = 0.05;
    double l0_max_att = 1.0;
    std::string objective = "skr_per_matter"; // | rate_per_matter
    bool trace = false;
    // sweep
    std::string L_list;
    std::string fit_L_min;
    std::string fit_L_max;
    // crossover
    std::string parameter = "eta_prod"; // t_cz | eta_prod | epsilon
    std::string baseline = "memory_bound"; // | direct_transmission
    std::string quantity = "default";      // | total | per_matter
    double scan_lo = 0.0;
    double scan_hi = 0.0;
    double rel_tol = 1e-3;
    int prescan_points = 9;
    int direct_rep_exponent = 6;
    // bounds
    double excitation_prob = 0.05;
    // mc-check
    double pph = 1.0;
    uint64_t samples = 1000000;
    uint64_t seed = 1;
    int threads = 0;
};

double parse_double(const std::string& key, const std::string& v) {
    char* end = nullptr;
    const double x = std::strtod(v.c_str(), &end);
    if (v.empty() || end != v.c_str() + v.size())
        throw std::invalid_argument("config key " + key + ": bad number '" +
                                    v + "'");
    return x;
}

int parse_int(const std::string& key, const std::string& v) {
    const double x = parse_double(key, v);
    const int i = static_cast<int>(x);
    if (static_cast<double>(i) != x)
        throw std::invalid_argument("config key " + key +
                                    ": expected integer, got '" + v + "'");
    return i;
}

uint64_t parse_u64(const std::string& key, const std::string& v) {
    const double x = parse_double(key, v);
    if (x < 0 || x != std::floor(x))
        throw std::invalid_argument("config key " + key +
                                    ": expected count, got '" + v + "'");
    return static_cast<uint64_t>(x);
}

bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1")
        return true;
    if (v == "false" || v == "0")
        return false;
    throw std::invalid_argument("config key " + key +
                                ": expected true/false, got '" + v + "'");
}

void apply_config(cli_options& o, const kv_pairs& kv) {
    using setter = std::function<void(const std::string&, const std::string&)>;
    const std::map<std::string, setter> set = {
        {"command", [&](const std::string&, const std::string& v) { o.command = v; }},
        {"format", [&](const std::string&, const std::string& v) { o.format = v; }},
        {"output", [&](const std::string&, const std::string& v) { o.output = v; }},
        {"l_att_km", [&](const std::string& k, const std::string& v) { o.l_att_km = parse_double(k, v); }},
        {"c_km_per_s", [&](const std::string& k, const std::string& v) { o.c_km_per_s = parse_double(k, v); }},
        {"eta_c", [&](const std::string& k, const std::string& v) { o.eta_c = parse_double(k, v); }},
        {"eta_d", [&](const std::string& k, const std::string& v) { o.eta_d = parse_double(k, v); }},
        {"epsilon", [&](const std::string& k, const std::string& v) { o.epsilon = parse_double(k, v); }},
        {"t_cz_s", [&](const std::string& k, const std::string& v) { o.t_cz_s = parse_double(k, v); }},
        {"t_eph_s", [&](const std::string& k, const std::string& v) { o.t_eph_s = parse_double(k, v); }},
        {"t_meas_s", [&](const std::string& k, const std::string& v) { o.t_meas_s = parse_double(k, v); }},
        {"t_h_s", [&](const std::string& k, const std::string& v) { o.t_h_s = parse_double(k, v); }},
        {"L", [&](const std::string&, const std::string& v) { o.L = v; }},
        {"L0", [&](const std::string&, const std::string& v) { o.L0 = v; }},
        {"m", [&](const std::string& k, const std::string& v) { o.m = parse_int(k, v); }},
        {"tree", [&](const std::string&, const std::string& v) { o.tree = v; }},
        {"fractional_links", [&](const std::string& k, const std::string& v) { o.fractional_links = parse_bool(k, v); }},
        {"m_min", [&](const std::string& k, const std::string& v) { o.m_min = parse_int(k, v); }},
        {"m_max", [&](const std::string& k, const std::string& v) { o.m_max = parse_int(k, v); }},
        {"b0_min", [&](const std::string& k, const std::string& v) { o.b0_min = parse_int(k, v); }},
        {"b0_max", [&](const std::string& k, const std::string& v) { o.b0_max = parse_int(k, v); }},
        {"b1_min", [&](const std::string& k, const std::string& v) { o.b1_min = parse_int(k, v); }},
        {"b1_max", [&](const std::string& k, const std::string& v) { o.b1_max = parse_int(k, v); }},
        {"l0_min_att", [&](const std::string& k, const std::string& v) { o.l0_min_att = parse_double(k, v); }},
        {"l0_max_att", [&](const std::string& k, const std::string& v) { o.l0_max_att = parse_double(k, v); }},
        {"objective", [&](const std::string&, const std::string& v) { o.objective = v; }},
        {"trace", [&](const std::string& k, const std::string& v) { o.trace = parse_bool(k, v); }},
        {"L_list", [&](const std::string&, const std::string& v) { o.L_list = v; }},
        {"fit_L_min", [&](const std::string&, const std::string& v) { o.fit_L_min = v; }},
        {"fit_L_max", [&](const std::string&, const std::string& v) { o.fit_L_max = v; }},
        {"parameter", [&](const std::string&, const std::string& v) { o.parameter = v; }},
        {"baseline", [&](const std::string&, const std::string& v) { o.baseline = v; }},
        {"quantity", [&](const std::string&, const std::string& v) { o.quantity = v; }},
        {"scan_lo", [&](const std::string& k, const std::string& v) { o.scan_lo = parse_double(k, v); }},
        {"scan_hi", [&](const std::string& k, const std::string& v) { o.scan_hi = parse_double(k, v); }},
        {"rel_tol", [&](const std::string& k, const std::string& v) { o.rel_tol = parse_double(k, v); }},
        {"prescan_points", [&](const std::string& k, const std::string& v) { o.prescan_points = parse_int(k, v); }},
        {"direct_rep_exponent", [&](const std::string& k, const std::string& v) { o.direct_rep_exponent = parse_int(k, v); }},
        {"excitation_prob", [&](const std::string& k, const std::string& v) { o.excitation_prob = parse_double(k, v); }},
        {"pph", [&](const std::string& k, const std::string& v) { o.pph = parse_double(k, v); }},
        {"samples", [&](const std::string& k, const std::string& v) { o.samples = parse_u64(k, v); }},
        {"seed", [&](const std::string& k, const std::string& v) { o.seed = parse_u64(k, v); }},
        {"threads", [&](const std::string& k, const std::string& v) { o.threads = parse_int(k, v); }},
    };
    for (const auto& [k, v] : kv) {
        const auto it = set.find(k);
        if (it == set.end())
            throw std::invalid_argument("unknown config key: " + k);
        it->second(k, v);
    }
}

std::string normalize_distance(const std::string& s, double l_att_km) {
    if (s.empty())
        return s;
    return format_double(parse_distance_km(s, l_att_km)) + "km";
}

std::string normalize_distance_list(const std::string& s, double l_att_km) {
    if (s.empty())
        return s;
    std::string out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!out.empty())
            out += ',';
        out += normalize_distance(item, l_att_km);
    }
    return out;
}

std::string bool_str(bool b) { return b ? "true" : "false"; }

kv_pairs effective_config(const cli_options& o) {
    kv_pairs kv;
    const auto add = [&](const std::string& k, const std::string& v) {
        kv.emplace_back(k, v);
    };
    add("command", o.command);
    add("format", o.format);
    add("output", o.output);
    add("l_att_km", format_double(o.l_att_km));
    add("c_km_per_s", format_double(o.c_km_per_s));
    add("eta_c", format_double(o.eta_c));
    add("eta_d", format_double(o.eta_d));
    add("epsilon", format_double(o.epsilon));
    add("t_cz_s", format_double(o.t_cz_s));
    add("t_eph_s", format_double(o.t_eph_s));
    add("t_meas_s", format_double(o.t_meas_s));
    add("t_h_s", format_double(o.t_h_s));
    add("L", normalize_distance(o.L, o.l_att_km));
    add("L0", normalize_distance(o.L0, o.l_att_km));
    add("m", std::to_string(o.m));
    add("tree", o.tree);
    add("fractional_links", bool_str(o.fractional_links));
    add("m_min", std::to_string(o.m_min));
    add("m_max", std::to_string(o.m_max));
    add("b0_min", std::to_string(o.b0_min));
    add("b0_max", std::to_string(o.b0_max));
    add("b1_min", std::to_string(o.b1_min));
    add("b1_max", std::to_string(o.b1_max));
    add("l0_min_att", format_double(o.l0_min_att));
    add("l0_max_att", format_double(o.l0_max_att));
    add("objective", o.objective);
    add("trace", bool_str(o.trace));
    add("L_list", normalize_distance_list(o.L_list, o.l_att_km));
    add("fit_L_min", normalize_distance(o.fit_L_min, o.l_att_km));
    add("fit_L_max", normalize_distance(o.fit_L_max, o.l_att_km));
    add("parameter", o.parameter);
    add("baseline", o.baseline);
    add("quantity", o.quantity);
    add("scan_lo", format_double(o.scan_lo));
    add("scan_hi", format_double(o.scan_hi));
    add("rel_tol", format_double(o.rel_tol));
    add("prescan_points", std::to_string(o.prescan_points));
    add("direct_rep_exponent", std::to_string(o.direct_rep_exponent));
    add("excitation_prob", format_double(o.excitation_prob));
    add("pph", format_double(o.pph));
    add("samples", std::to_string(o.samples));
    add("seed", std::to_string(o.seed));
    add("threads", std::to_string(o.threads));
    return kv;
}

channel_params make_channel(const cli_options& o) {
    channel_params ch;
    ch.l_att_km = o.l_att_km;
    ch.c_km_per_s = o.c_km_per_s;
    ch.eta_c = o.eta_c;
    ch.eta_d = o.eta_d;
    ch.epsilon = o.epsilon;
    ch.validate();
    return ch;
}

scenario make_scenario(const cli_options& o, double l_km, double l0_km) {
    scenario sc;
    sc.l_km = l_km;
    sc.l0_km = l0_km;
    sc.t_cz_s = o.t_cz_s;
    sc.t_eph_s = o.t_eph_s;
    sc.t_meas_s = o.t_meas_s;
    sc.t_h_s = o.t_h_s;
    return sc;
}

search_space make_space(const cli_options& o) {
    search_space sp;
    sp.m_min = o.m_min;
    sp.m_max = o.m_max;
    sp.b0_min = o.b0_min;
    sp.b0_max = o.b0_max;
    sp.b1_min = o.b1_min;
    sp.b1_max = o.b1_max;
    sp.l0_min_att = o.l0_min_att;
    sp.l0_max_att = o.l0_max_att;
    sp.keep_trace = true;
    if (o.objective == "skr_per_matter")
        sp.objective = objective_kind::secret_key_per_matter;
    else if (o.objective == "rate_per_matter")
        sp.objective = objective_kind::rate_per_matter;
    else
        throw std::invalid_argument("objective must be skr_per_matter or "
                                    "rate_per_matter");
    return sp;
}

std::vector<int> parse_tree_list(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(parse_int("tree", item));
    if (out.empty())
        throw std::invalid_argument("tree must list at least one branching "
                                    "parameter");
    return out;
}

std::vector<double> parse_distance_list(const std::string& s,
                                        double l_att_km) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(parse_distance_km(item, l_att_km));
    if (out.empty())
        throw std::invalid_argument("L_list must contain at least one "
                                    "distance");
    return out;
}

double required_distance(const std::string& value, const char* key,
                         double l_att_km) {
    if (value.empty())
        throw std::invalid_argument(std::string(key) + " is required");
    return parse_distance_km(value, l_att_km);
}

// echo every input: [command, channel, gate times], prepended to all rows
std::vector<std::string> input_columns() {
    return {"command", "l_att_km",  "c_km_per_s", "eta_c",   "eta_d",
            "epsilon", "t_cz_s",    "t_eph_s",    "t_meas_s", "t_h_s"};
}

std::vector<std::string> input_cells(const cli_options& o) {
    return {o.command,
            format_double(o.l_att_km),
            format_double(o.c_km_per_s),
            format_double(o.eta_c),
            format_double(o.eta_d),
            format_double(o.epsilon),
            format_double(o.t_cz_s),
            format_double(o.t_eph_s),
            format_double(o.t_meas_s),
            format_double(o.t_h_s)};
}

void append(std::vector<std::string>& v, std::vector<std::string> tail) {
    for (auto& s : tail)
        v.push_back(std::move(s));
}

std::vector<std::string> report_columns() {
    return {"p_ph",      "p_bell",  "p_link",   "t_rgs_s",
            "n_links",   "n_matter", "n_photons", "rate_hz",
            "rate_per_matter_hz", "ebar_x", "ebar_z", "f_ab",
            "skr_hz",    "skr_per_matter_hz"};
}

std::vector<std::string> report_cells(const rate_report& r) {
    return {format_double(r.p_ph),
            format_double(r.p_bell),
            format_double(r.p_link),
            format_double(r.t_rgs_s),
            format_double(r.n_links),
            std::to_string(r.n_matter),
            std::to_string(r.n_photons),
            format_double(r.rate_hz),
            format_double(r.rate_per_matter_hz),
            format_double(r.ebar_x),
            format_double(r.ebar_z),
            format_double(r.f_ab),
            format_double(r.skr_hz),
            format_double(r.skr_per_matter_hz)};
}

std::vector<std::string> space_columns() {
    return {"m_min", "m_max", "b0_min", "b0_max", "b1_min", "b1_max",
            "l0_min_att", "l0_max_att", "objective"};
}

std::vector<std::string> space_cells(const cli_options& o) {
    return {std::to_string(o.m_min),      std::to_string(o.m_max),
            std::to_string(o.b0_min),     std::to_string(o.b0_max),
            std::to_string(o.b1_min),     std::to_string(o.b1_max),
            format_double(o.l0_min_att),  format_double(o.l0_max_att),
            o.objective};
}

int emit(const cli_options& o, const table& t) {
    std::ofstream file;
    std::ostream* os = &std::cout;
    if (o.output != "-") {
        file.open(o.output);
        if (!file)
            throw std::runtime_error("cannot open output file: " + o.output);
        os = &file;
    }
    if (o.format == "csv")
        write_csv(*os, t);
    else if (o.format == "json")
        write_json(*os, t);
    else
        throw std::invalid_argument("format must be csv or json");
    return 0;
}

int run_eval(const cli_options& o) {
    const double l_km = required_distance(o.L, "L", o.l_att_km);
    const double l0_km = required_distance(o.L0, "L0", o.l_att_km);
    const channel_params ch = make_channel(o);
    const scenario sc = make_scenario(o, l_km, l0_km);
    const rgs_shape shape{o.m, tree_vector(parse_tree_list(o.tree))};
    const rate_report rep = evaluate_scenario(shape, ch, sc,
                                              o.fractional_links);

    table t;
    t.columns = input_columns();
    append(t.columns, {"L_km", "L0_km", "m", "tree", "fractional_links"});
    append(t.columns, report_columns());
    auto row = input_cells(o);
    append(row, {format_double(l_km), format_double(l0_km),
                 std::to_string(o.m), o.tree, bool_str(o.fractional_links)});
    append(row, report_cells(rep));
    t.add_row(std::move(row));
    return emit(o, t);
}

int run_optimize(const cli_options& o) {
    const double l_km = required_distance(o.L, "L", o.l_att_km);
    const channel_params ch = make_channel(o);
    const scenario sc = make_scenario(o, l_km, l_km);
    const search_space sp = make_space(o);
    const optimization_result res = optimize(l_km, ch, sc, sp);

    table t;
    t.columns = input_columns();
    append(t.columns, {"L_km"});
    append(t.columns, space_columns());
    append(t.columns,
           {"feasible", "is_best", "m", "b0", "b1", "n_links", "l0_km",
            "objective_hz"});
    append(t.columns, report_columns());

    const auto add_candidate = [&](const candidate& c, bool best) {
        auto row = input_cells(o);
        append(row, {format_double(l_km)});
        append(row, space_cells(o));
        append(row, {bool_str(res.feasible), bool_str(best),
                     std::to_string(c.m), std::to_string(c.b0),
                     std::to_string(c.b1), std::to_string(c.n_links),
                     format_double(c.l0_km), format_double(c.objective)});
        append(row, report_cells(c.report));
        t.add_row(std::move(row));
    };
    if (o.trace) {
        for (const candidate& c : res.trace)
            add_candidate(c, c.m == res.best.m && c.b0 == res.best.b0 &&
                                 c.b1 == res.best.b1);
    } else {
        add_candidate(res.best, true);
    }
    return emit(o, t);
}

int run_sweep(const cli_options& o) {
    if (o.L_list.empty())
        throw std::invalid_argument("L_list is required");
    const std::vector<double> ls = parse_distance_list(o.L_list, o.l_att_km);
    const double fit_lo =
        o.fit_L_min.empty() ? 0.0
                            : parse_distance_km(o.fit_L_min, o.l_att_km);
    const double fit_hi =
        o.fit_L_max.empty() ? 0.0
                            : parse_distance_km(o.fit_L_max, o.l_att_km);
    const channel_params ch = make_channel(o);
    const scenario sc = make_scenario(o, ls.front(), ls.front());
    const search_space sp = make_space(o);
    const distance_sweep sw = sweep_distance(ls, ch, sc, sp, fit_lo, fit_hi);

    table t;
    t.columns = input_columns();
    append(t.columns, {"L_km"});
    append(t.columns, space_columns());
    append(t.columns, {"feasible", "m", "b0", "b1", "n_links", "l0_km",
                       "objective_hz"});
    append(t.columns, report_columns());
    append(t.columns, {"scaling_exponent", "exponent_defined",
                       "r_c4l_hz", "r_two_qm_unit_hz"});
    for (int i = 0; i <= 6; ++i)
        t.columns.push_back("direct_skr_1e" + std::to_string(i) + "_hz");

    for (size_t i = 0; i < ls.size(); ++i) {
        const optimization_result& r = sw.results[i];
        auto row = input_cells(o);
        append(row, {format_double(ls[i])});
        append(row, space_cells(o));
        append(row, {bool_str(r.feasible), std::to_string(r.best.m),
                     std::to_string(r.best.b0), std::to_string(r.best.b1),
                     std::to_string(r.best.n_links),
                     format_double(r.best.l0_km),
                     format_double(r.best.objective)});
        append(row, report_cells(r.best.report));
        append(row, {format_double(sw.scaling_exponent),
                     bool_str(sw.exponent_defined),
                     format_double(memory_rate_upper_bound(ch, ls[i])),
                     format_double(two_qm_bound(1.0, ch, ls[i]))});
        for (int e = 0; e <= 6; ++e)
            row.push_back(format_double(direct_transmission_skr(
                ch, ls[i], std::pow(10.0, e) / o.t_cz_s)));
        t.add_row(std::move(row));
    }
    return emit(o, t);
}

int run_crossover(const cli_options& o) {
    const double l_km = required_distance(o.L, "L", o.l_att_km);
    const channel_params ch = make_channel(o);
    const scenario sc = make_scenario(o, l_km, l_km);
    const search_space sp = make_space(o);

    crossover_request req;
    if (o.parameter == "t_cz")
        req.parameter = scan_parameter::t_cz;
    else if (o.parameter == "eta_prod")
        req.parameter = scan_parameter::eta_prod;
    else if (o.parameter == "epsilon")
        req.parameter = scan_parameter::epsilon;
    else
        throw std::invalid_argument(
            "parameter must be t_cz, eta_prod or epsilon");
    if (o.baseline == "memory_bound")
        req.baseline = baseline_kind::memory_bound;
    else if (o.baseline == "direct_transmission")
        req.baseline = baseline_kind::direct_transmission;
    else
        throw std::invalid_argument(
            "baseline must be memory_bound or direct_transmission");
    if (o.quantity == "total")
        req.quantity = rate_quantity::total;
    else if (o.quantity == "per_matter")
        req.quantity = rate_quantity::per_matter;
    else if (o.quantity != "default")
        throw std::invalid_argument(
            "quantity must be default, total or per_matter");
    req.scan_lo = o.scan_lo;
    req.scan_hi = o.scan_hi;
    req.rel_tol = o.rel_tol;
    req.prescan_points = o.prescan_points;
    req.direct_rep_exponent = o.direct_rep_exponent;

    const crossover_result res = find_crossover(req, l_km, ch, sc, sp);

    table t;
    t.columns = input_columns();
    append(t.columns, {"L_km"});
    append(t.columns, space_columns());
    append(t.columns,
           {"parameter", "baseline", "quantity", "scan_lo", "scan_hi",
            "rel_tol", "prescan_points", "direct_rep_exponent", "found",
            "value", "rgs_rate_hz", "baseline_rate_hz"});
    auto row = input_cells(o);
    append(row, {format_double(l_km)});
    append(row, space_cells(o));
    append(row,
           {o.parameter, o.baseline,
            res.quantity == rate_quantity::total ? "total" : "per_matter",
            format_double(o.scan_lo), format_double(o.scan_hi),
            format_double(o.rel_tol), std::to_string(o.prescan_points),
            std::to_string(o.direct_rep_exponent), bool_str(res.found),
            format_double(res.value), format_double(res.rgs_rate_hz),
            format_double(res.baseline_rate_hz)});
    t.add_row(std::move(row));
    return emit(o, t);
}

int run_bounds(const cli_options& o) {
    const double l_km = required_distance(o.L, "L", o.l_att_km);
    const double l0_km = o.L0.empty()
                             ? o.l_att_km
                             : parse_distance_km(o.L0, o.l_att_km);
    const channel_params ch = make_channel(o);

    table t;
    t.columns = input_columns();
    append(t.columns,
           {"L_km", "L0_km", "scheme", "excitation_prob", "p_ent",
            "t_trial_s", "t_ent_avg_s", "t_store_avg_s", "r_c4l_hz",
            "r_two_qm_hz"});

    const auto add_scheme = [&](const std::string& name,
                                heralded_scheme scheme) {
        heralded_params hp;
        hp.scheme = scheme;
        hp.excitation_prob = o.excitation_prob;
        const memory_bound_report mb = memory_bound(hp, ch, l_km, l0_km);
        auto row = input_cells(o);
        append(row, {format_double(l_km), format_double(l0_km), name,
                     format_double(o.excitation_prob),
                     format_double(mb.p_ent), format_double(mb.t_trial_s),
                     format_double(mb.t_ent_avg_s),
                     format_double(mb.t_store_avg_s),
                     format_double(mb.r_generic_hz),
                     format_double(mb.r_two_qm_hz)});
        t.add_row(std::move(row));
    };
    add_scheme("midpoint_herald", heralded_scheme::midpoint_herald);
    add_scheme("direct_to_node", heralded_scheme::direct_to_node);
    add_scheme("weak_excitation", heralded_scheme::weak_excitation);
    {
        // heralding ceiling: every trial succeeds
        auto row = input_cells(o);
        append(row, {format_double(l_km), format_double(l0_km),
                     "unit_heralding", format_double(o.excitation_prob),
                     format_double(1.0), format_double(0.0),
                     format_double(0.0), format_double(0.0),
                     format_double(memory_rate_upper_bound(ch, l_km)),
                     format_double(two_qm_bound(1.0, ch, l_km))});
        t.add_row(std::move(row));
    }
    return emit(o, t);
}

int run_mc_check(const cli_options& o) {
    const tree_vector tree(parse_tree_list(o.tree));
    if (!(o.pph >= 0.0 && o.pph <= 1.0))
        throw std::domain_error("pph must be in [0, 1]");
    mc_config cfg;
    cfg.n_samples = o.samples;
    cfg.seed = o.seed;
    cfg.threads = o.threads;

    const tree_analysis ta = analyze_tree(tree, o.pph);
    const logical_probs lp = logical_meas_probs(tree, ta);
    double ebx = 0.0;
    double ebz = 0.0;
    if (o.epsilon > 0.0) {
        const error_analysis ea = indirect_error_levels(tree, ta, o.epsilon);
        const logical_errors le = logical_error_rates(tree, ta, ea);
        ebx = le.ebar_x;
        ebz = le.ebar_z;
    }
    const mc_logical_result mc = mc_logical_error(tree, o.pph, o.epsilon, cfg);

    table t;
    t.columns = input_columns();
    append(t.columns, {"tree", "pph", "samples", "seed", "threads",
                       "estimator", "analytic", "mc_mean", "mc_std_err",
                       "mc_n", "abs_dev", "pass"});
    bool all_pass = true;
    const auto add_row = [&](const std::string& name, double analytic,
                             const mc_estimate& e) {
        const double dev = std::abs(analytic - e.mean);
        const bool pass = dev <= 4.0 * e.std_err + 1e-12;
        all_pass = all_pass && pass;
        auto row = input_cells(o);
        append(row, {o.tree, format_double(o.pph), std::to_string(o.samples),
                     std::to_string(o.seed), std::to_string(o.threads), name,
                     format_double(analytic), format_double(e.mean),
                     format_double(e.std_err), std::to_string(e.n),
                     format_double(dev), bool_str(pass)});
        t.add_row(std::move(row));
    };
    add_row("pr_mx", lp.pr_mx, mc.pr_mx);
    add_row("pr_mz", lp.pr_mz, mc.pr_mz);
    add_row("ebar_x", ebx, mc.ebar_x);
    add_row("ebar_z", ebz, mc.ebar_z);
    emit(o, t);
    if (!all_pass) {
        std::cerr << "mc-check: estimates deviate beyond 4 standard errors\n";
        return 1;
    }
    return 0;
}

int dispatch(const cli_options& o) {
    if (o.command == "eval")
        return run_eval(o);
    if (o.command == "optimize")
        return run_optimize(o);
    if (o.command == "sweep")
        return run_sweep(o);
    if (o.command == "crossover")
        return run_crossover(o);
    if (o.command == "bounds")
        return run_bounds(o);
    if (o.command == "mc-check")
        return run_mc_check(o);
    throw std::invalid_argument("no command given; expected one of eval, "
                                "optimize, sweep, crossover, bounds, "
                                "mc-check");
}

std::string find_config_path(int argc, char** argv) {
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        if (a == "--config" && i + 1 < argc)
            return argv[i + 1];
        if (a.rfind("--config=", 0) == 0)
            return a.substr(9);
    }
    return {};
}

} // namespace

int main(int argc, char** argv) {
    cli_options opts;
    std::string config_path;
    bool dump = false;

    try {
        config_path = find_config_path(argc, argv);
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in)
                throw std::invalid_argument("cannot read config file: " +
                                            config_path);
            std::stringstream buf;
            buf << in.rdbuf();
            apply_config(opts, parse_config_text(buf.str()));
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    CLI::App app{"secret-key rate tools for tree-encoded photonic repeater "
                 "chains"};
    app.require_subcommand(0, 1);
    app.add_option("--config", config_path,
                   "flat key = value config file; flags override");
    app.add_flag("--dump-config", dump,
                 "print the effective config and exit");
    app.add_option("--format", opts.format, "csv or json")
        ->capture_default_str();
    app.add_option("--output", opts.output, "output path, - for stdout")
        ->capture_default_str();
    app.add_option("--l_att_km", opts.l_att_km)->capture_default_str();
    app.add_option("--c_km_per_s", opts.c_km_per_s)->capture_default_str();
    app.add_option("--eta_c", opts.eta_c)->capture_default_str();
    app.add_option("--eta_d", opts.eta_d)->capture_default_str();
    app.add_option("--epsilon", opts.epsilon)->capture_default_str();
    app.add_option("--t_cz_s", opts.t_cz_s)->capture_default_str();
    app.add_option("--t_eph_s", opts.t_eph_s)->capture_default_str();
    app.add_option("--t_meas_s", opts.t_meas_s)->capture_default_str();
    app.add_option("--t_h_s", opts.t_h_s)->capture_default_str();

    CLI::App* c_eval = app.add_subcommand("eval", "rate of one fixed shape");
    c_eval->add_option("--L", opts.L, "total distance (km or Latt suffix)");
    c_eval->add_option("--L0", opts.L0, "node separation");
    c_eval->add_option("--m", opts.m)->capture_default_str();
    c_eval->add_option("--tree", opts.tree, "branching vector, e.g. 10,5")
        ->capture_default_str();
    c_eval->add_flag("--fractional_links", opts.fractional_links);

    CLI::App* c_opt = app.add_subcommand("optimize", "grid-search the shape");
    CLI::App* c_sweep = app.add_subcommand("sweep", "optimize per distance");
    CLI::App* c_cross =
        app.add_subcommand("crossover", "threshold of a scanned parameter");
    for (CLI::App* sub : {c_opt, c_sweep, c_cross}) {
        sub->add_option("--m_min", opts.m_min)->capture_default_str();
        sub->add_option("--m_max", opts.m_max)->capture_default_str();
        sub->add_option("--b0_min", opts.b0_min)->capture_default_str();
        sub->add_option("--b0_max", opts.b0_max)->capture_default_str();
        sub->add_option("--b1_min", opts.b1_min)->capture_default_str();
        sub->add_option("--b1_max", opts.b1_max)->capture_default_str();
        sub->add_option("--l0_min_att", opts.l0_min_att)
            ->capture_default_str();
        sub->add_option("--l0_max_att", opts.l0_max_att)
            ->capture_default_str();
        sub->add_option("--objective", opts.objective,
                        "skr_per_matter or rate_per_matter")
            ->capture_default_str();
    }
    c_opt->add_option("--L", opts.L, "total distance");
    c_opt->add_flag("--trace", opts.trace,
                    "emit every (m, b0, b1) candidate");
    c_sweep->add_option("--L_list", opts.L_list,
                        "comma-separated distances");
    c_sweep->add_option("--fit_L_min", opts.fit_L_min,
                        "power-law fit window lower edge");
    c_sweep->add_option("--fit_L_max", opts.fit_L_max,
                        "power-law fit window upper edge");
    c_cross->add_option("--L", opts.L, "total distance");
    c_cross->add_option("--parameter", opts.parameter,
                        "t_cz, eta_prod or epsilon")
        ->capture_default_str();
    c_cross->add_option("--baseline", opts.baseline,
                        "memory_bound or direct_transmission")
        ->capture_default_str();
    c_cross->add_option("--quantity", opts.quantity,
                        "default, total or per_matter")
        ->capture_default_str();
    c_cross->add_option("--scan_lo", opts.scan_lo)->capture_default_str();
    c_cross->add_option("--scan_hi", opts.scan_hi)->capture_default_str();
    c_cross->add_option("--rel_tol", opts.rel_tol)->capture_default_str();
    c_cross->add_option("--prescan_points", opts.prescan_points)
        ->capture_default_str();
    c_cross->add_option("--direct_rep_exponent", opts.direct_rep_exponent)
        ->capture_default_str();

    CLI::App* c_bounds =
        app.add_subcommand("bounds", "memory-repeater rate ceilings");
    c_bounds->add_option("--L", opts.L, "total distance");
    c_bounds->add_option("--L0", opts.L0,
                         "node separation (default one attenuation length)");
    c_bounds->add_option("--excitation_prob", opts.excitation_prob)
        ->capture_default_str();

    CLI::App* c_mc = app.add_subcommand(
        "mc-check", "Monte-Carlo check of the tree recursions");
    c_mc->add_option("--tree", opts.tree)->capture_default_str();
    c_mc->add_option("--pph", opts.pph)->capture_default_str();
    c_mc->add_option("--samples", opts.samples)->capture_default_str();
    c_mc->add_option("--seed", opts.seed)->capture_default_str();
    c_mc->add_option("--threads", opts.threads)->capture_default_str();

    for (CLI::App* sub :
         {c_eval, c_opt, c_sweep, c_cross, c_bounds, c_mc})
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0)
            return app.exit(e);
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    for (const CLI::App* sub : app.get_subcommands())
        opts.command = sub->get_name();

    if (dump) {
        try {
            std::cout << serialize_config(effective_config(opts));
        } catch (const std::invalid_argument& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 2;
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 1;
        }
        return 0;
    }

    try {
        return dispatch(opts);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
