#pragma once

// Campaign runner: one function per command, each returning a results block,
// a plot-ready table and its verdicts. run() wraps them in the report envelope.

#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "rilab/lab/config.hpp"
#include "rilab/moments.hpp"

#ifndef RILAB_VERSION
#define RILAB_VERSION "0.1.0"
#endif

namespace rilab::lab {

inline constexpr const char* artifact_version = RILAB_VERSION;

using Cell = std::variant<double, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

struct Outcome {
    json results = json::object();
    Table table;
    json verdicts = json::array();
};

struct Report {
    json envelope;
    Table table;
    int exit_code = 0; // 0 ok, 2 config, 3 computation
};

inline std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

inline std::string to_csv(const Table& t) {
    std::string out;
    for (std::size_t i = 0; i < t.columns.size(); ++i) out += (i ? "," : "") + csv_escape(t.columns[i]);
    out += '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            if (const auto* d = std::get_if<double>(&row[i])) out += format_double(*d);
            else out += csv_escape(std::get<std::string>(row[i]));
        }
        out += '\n';
    }
    return out;
}

namespace detail {

inline json finite_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

inline json verdict(const std::string& name, json value, const std::string& rule, bool heuristic = true,
                    const std::string& disclaimer = {}) {
    json v{{"name", name}, {"value", std::move(value)}, {"rule", rule}, {"heuristic", heuristic}};
    if (!disclaimer.empty()) v["disclaimer"] = disclaimer;
    return v;
}

inline NFParams nf_params(const ExperimentConfig& c) { return {c.K1, c.K2, c.sigma_rule}; }

template <class F>
auto at_point(const std::string& where, const F& f) {
    try {
        return f();
    } catch (const Error& e) {
        throw Error(e.kind(), "at " + where + ": " + e.what());
    }
}

inline std::vector<KernelSpec> kernels(const ExperimentConfig& c) {
    std::vector<KernelSpec> out;
    for (const auto& k : c.kernels) out.push_back(parse_kernel(k));
    return out;
}

inline json to_json(const NFEvaluation& e, double tol) {
    return {{"n", e.n},         {"sigma", e.sigma},   {"witness", e.witness.label()}, {"space_x", e.space_x.name},
            {"space_y", e.space_y.name}, {"K1", e.K1}, {"K2", e.K2},           {"value", e.value},
            {"norm_x", e.norm_x}, {"norm_y", e.norm_y}, {"phi_x", e.phi_x},    {"phi_y", e.phi_y},
            {"tolerance", tol}};
}

inline json to_json(const RateFit& f, double tol) {
    return {{"n_grid", f.n_grid},
            {"sigma", f.sigma},
            {"ratios", f.ratios},
            {"c0", f.c0},
            {"e1", f.e1},
            {"e2", f.e2},
            {"residual_rms", f.residual_rms},
            {"predicted_e1", f.predicted_e1},
            {"predicted_e2", f.predicted_e2},
            {"odd_half_e1", finite_or_null(f.odd_e1)},
            {"odd_half_e2", finite_or_null(f.odd_e2)},
            {"model", "log ratio = c0 + e1 log sigma + e2 log log sigma"},
            {"tolerance", tol}};
}

inline json to_json(const ConditionResult& r, double tol) {
    json pts = json::array();
    for (const auto& p : r.points) pts.push_back({{"argument", p.argument}, {"integral", p.integral}, {"constant", p.constant}});
    return {{"holds", r.holds},           {"measured_c", r.measured_c}, {"refined_c", r.refined_c},
            {"converse_c", r.converse_c}, {"points", pts},             {"tolerance", tol}};
}

inline json to_json(const FloorReport& r, double tol) {
    json rows = json::array();
    for (const auto& x : r.rows)
        rows.push_back({{"n", x.n}, {"norm_x", x.norm_x}, {"phi_x", x.phi_x}, {"norm_y", x.norm_y},
                        {"phi_y", x.phi_y}, {"quotient", x.quotient}, {"tolerance", tol}});
    return {{"rows", rows},
            {"min_quotient", r.min_quotient},
            {"max_quotient", r.max_quotient},
            {"last_octave_min", r.last_octave_min},
            {"positive", r.positive},
            {"stable", r.stable},
            {"disclaimer", r.disclaimer}};
}

inline json to_json(const ExtrapolationReport& r, double tol) {
    json rows = json::array();
    for (const auto& x : r.rows)
        rows.push_back({{"witness", x.witness}, {"exponent", x.exponent}, {"bracket", x.bracket},
                        {"zygmund_norm", x.zygmund_norm}, {"lp_norm", x.lp_norm}, {"ratio", x.ratio},
                        {"tolerance", tol}});
    return {{"rows", rows},
            {"max_ratio", r.max_ratio},
            {"refined_max_ratio", r.refined_max_ratio},
            {"stable", r.stable},
            {"monotone_near_end", r.monotone_near_end}};
}

inline void rate_outcome(Outcome& out, const RateFit& fit, double tol) {
    out.results["fit"] = to_json(fit, tol);
    out.table.columns = {"n", "sigma", "ratio", "tolerance"};
    for (std::size_t i = 0; i < fit.n_grid.size(); ++i)
        out.table.rows.push_back({fit.n_grid[i], fit.sigma[i], fit.ratios[i], tol});
    out.verdicts.push_back(verdict("e1 matches prediction", std::abs(fit.e1 - fit.predicted_e1) <= 0.02,
                                   "|e1 - predicted_e1| <= 0.02"));
    out.verdicts.push_back(verdict("e2 matches prediction", std::abs(fit.e2 - fit.predicted_e2) <= 0.2,
                                   "|e2 - predicted_e2| <= 0.2"));
}

// ---------------------------------------------------------------------------
// commands

inline Outcome run_moments(const ExperimentConfig& c) {
    const auto k = parse_kernel(c.kernels.front());
    const auto w = Witness::kernel(k);
    const double tol = c.tolerance;
    const auto values = parallel_map(c.p_grid, [&](double p) {
        return at_point("p = " + SpaceSpec::fmt_number(p), [&] { return lp_norm(w, p, tol); });
    });
    Outcome out;
    out.results["kernel"] = k.label();
    json items = json::array();
    out.table.columns = {"p", "value", "tolerance"};
    for (std::size_t i = 0; i < values.size(); ++i) {
        json item{{"p", c.p_grid[i]}, {"value", values[i]}, {"tolerance", tol}};
        if (k.family == KernelFamily::FejerContinuous)
            item["closed_form"] = fejer_moment_closed_form(k.degree, c.p_grid[i], tol);
        items.push_back(item);
        out.table.rows.push_back({c.p_grid[i], values[i], tol});
    }
    out.results["items"] = items;
    return out;
}

inline Outcome run_norms(const ExperimentConfig& c) {
    const auto ks = kernels(c);
    std::vector<SpaceSpec> spaces;
    for (const auto& s : c.spaces) spaces.push_back(parse_space(s));
    std::vector<std::pair<std::size_t, std::size_t>> cells;
    for (std::size_t i = 0; i < ks.size(); ++i)
        for (std::size_t j = 0; j < spaces.size(); ++j) cells.emplace_back(i, j);
    const auto values = parallel_map(cells, [&](const std::pair<std::size_t, std::size_t>& ij) {
        const auto& [i, j] = ij;
        return at_point(ks[i].label() + " in " + spaces[j].name,
                        [&] { return space_norm(spaces[j], Witness::kernel(ks[i]), c.tolerance); });
    });
    Outcome out;
    json items = json::array();
    out.table.columns = {"kernel", "n", "space", "value", "tolerance"};
    for (std::size_t t = 0; t < cells.size(); ++t) {
        const auto& k = ks[cells[t].first];
        const auto& s = spaces[cells[t].second];
        items.push_back({{"kernel", k.label()}, {"n", k.degree}, {"space", s.name}, {"value", values[t]}, {"tolerance", c.tolerance}});
        out.table.rows.push_back({k.label(), k.degree, s.name, values[t], c.tolerance});
    }
    out.results["items"] = items;
    return out;
}

inline Outcome run_fundamental(const ExperimentConfig& c) {
    Outcome out;
    json items = json::array();
    out.table.columns = {"space", "delta", "value", "tolerance"};
    for (const auto& name : c.spaces) {
        const auto s = parse_space(name);
        for (double d : c.delta_grid) {
            const double v = at_point(s.name + ", delta = " + SpaceSpec::fmt_number(d),
                                      [&] { return fundamental_function(s, d); });
            items.push_back({{"space", s.name}, {"delta", d}, {"value", v}, {"tolerance", c.tolerance}});
            out.table.rows.push_back({s.name, d, v, c.tolerance});
        }
    }
    out.results["items"] = items;
    return out;
}

inline Outcome run_nf(const ExperimentConfig& c) {
    const auto X = parse_space(c.space_x);
    const auto Y = parse_space(c.space_y);
    const auto r = strong_pair_scan(X, Y, c.n_grid, nf_params(c), c.family, c.tolerance);
    Outcome out;
    json rows = json::array();
    out.table.columns = {"n", "value", "best_witness", "running_max", "tolerance"};
    for (const auto& x : r.rows) {
        rows.push_back({{"n", x.n}, {"value", x.value}, {"best_witness", x.best_witness},
                        {"running_max", x.running_max}, {"tolerance", c.tolerance}});
        out.table.rows.push_back({x.n, x.value, x.best_witness, x.running_max, c.tolerance});
    }
    out.results = {{"space_x", X.name},
                   {"space_y", Y.name},
                   {"rows", rows},
                   {"applicable", r.applicable},
                   {"last_octave_increase", r.last_octave_increase},
                   {"disclaimer", r.disclaimer}};
    out.verdicts.push_back(verdict("strong pair", r.verdict, r.rule, true, r.disclaimer));
    return out;
}

inline Outcome run_optimize(const ExperimentConfig& c) {
    const auto X = parse_space(c.space_x);
    const auto Y = parse_space(c.space_y);
    const auto r = optimize_kernel_params(X, Y, c.n, nf_params(c), c.optimizer);
    Outcome out;
    const double ft = c.optimizer.final_tol;
    out.results = {{"n", c.n},
                   {"best_value", r.best.value},
                   {"alpha", r.alpha},
                   {"beta", r.beta},
                   {"search_value", r.search_value},
                   {"baseline_value", r.baseline.value},
                   {"best", to_json(r.best, ft)},
                   {"baseline", to_json(r.baseline, ft)},
                   {"evaluations", r.trace.size()},
                   {"skipped", r.skipped},
                   {"tolerance", ft},
                   {"disclaimer", lower_bound_disclaimer}};
    out.table.columns = {"phase", "alpha", "beta", "value", "error", "tolerance"};
    for (const auto& e : r.trace)
        out.table.rows.push_back({e.phase, e.alpha, e.beta, e.value ? *e.value : std::nan(""), e.error,
                                  c.optimizer.search_tol});
    out.verdicts.push_back(verdict("best witness beats Fejer", r.best.value >= r.baseline.value,
                                   "best_value >= baseline_value", false, lower_bound_disclaimer));
    return out;
}

inline Outcome run_zygmund(const ExperimentConfig& c) {
    const auto fit = zygmund_rate_check(c.p, c.q, c.gamma, c.beta, c.n_grid, nf_params(c), c.tolerance);
    Outcome out;
    rate_outcome(out, fit, c.tolerance);
    json z = json::array();
    for (double sigma : c.sigma_values) {
        const auto sugg = zygmund_z_suggested(c.p, c.q, c.gamma, c.beta, sigma);
        const auto best = zygmund_z_minimum(c.p, c.q, c.gamma, c.beta, sigma);
        z.push_back({{"sigma", sigma},
                     {"suggested", {{"r", sugg.r}, {"s", sugg.s}, {"z", sugg.z}}},
                     {"minimum", {{"r", best.r}, {"s", best.s}, {"z", best.z}}},
                     {"ratio", sugg.z / best.z}});
        out.verdicts.push_back(verdict("suggested Z within 5% at sigma = " + SpaceSpec::fmt_number(sigma),
                                       sugg.z <= 1.05 * best.z, "Z(r0, s0) <= 1.05 min Z", false));
    }
    out.results["z"] = z;
    return out;
}

inline Outcome run_extrapolation(const ExperimentConfig& c) {
    const auto ks = kernels(c);
    Outcome out;
    out.table.columns = {"direction", "witness", "exponent", "bracket", "zygmund_norm", "lp_norm", "ratio", "tolerance"};
    auto add = [&](const char* direction, const ExtrapolationReport& r) {
        out.results[direction] = to_json(r, c.tolerance);
        for (const auto& x : r.rows)
            out.table.rows.push_back({direction, x.witness, x.exponent, x.bracket, x.zygmund_norm, x.lp_norm, x.ratio,
                                      c.tolerance});
        out.verdicts.push_back(verdict(std::string(direction) + " ratio bounded", r.stable, r.rule));
    };
    if (!c.r_grid.empty()) add("direct", extrapolation_check(ks, c.q, c.gamma, c.r_grid, c.tolerance));
    if (!c.s_grid.empty()) add("inverse", inverse_extrapolation_check(ks, c.p, c.beta, c.s_grid, c.tolerance));
    return out;
}

inline void condition_outcome(Outcome& out, const ConditionResult& r, const char* variable, double tol) {
    out.results["condition"] = to_json(r, tol);
    out.table.columns = {variable, "integral", "constant", "tolerance"};
    for (const auto& p : r.points) out.table.rows.push_back({p.argument, p.integral, p.constant, tol});
    out.verdicts.push_back(verdict("condition holds", r.holds, r.rule));
}

inline Outcome run_lorentz_q(const ExperimentConfig& c) {
    const auto phi = parse_lorentz(c.space);
    Outcome out;
    out.results["space"] = parse_space(c.space).name;
    condition_outcome(out, q_condition_check(phi, c.eps_grid, c.tolerance), "eps", c.tolerance);
    return out;
}

inline Outcome run_orlicz_cond11(const ExperimentConfig& c) {
    const auto phi = parse_orlicz(c.space);
    Outcome out;
    out.results["space"] = parse_space(c.space).name;
    out.results["m"] = c.m;
    condition_outcome(out, orlicz_condition11_check(phi, c.m, c.v_grid, c.tolerance), "v", c.tolerance);
    // pure powers have C_m = (2mp - 1)^(-1/p)
    const auto call = parse_call(c.space);
    const bool power = call.name == "orlicz-pow" || (call.name == "orlicz-zygmund" && call.args.at(1) == 0.0);
    if (power) {
        const double p = call.args.at(0);
        out.results["closed_form_c"] = std::pow(2.0 * c.m * p - 1.0, -1.0 / p);
    }
    return out;
}

inline Outcome run_lorentz_nf(const ExperimentConfig& c) {
    const auto r = lorentz_lower_bound_check(parse_lorentz(c.space_x), parse_lorentz(c.space_y), c.n_grid,
                                             nf_params(c), c.tolerance);
    Outcome out;
    out.results = to_json(r, c.tolerance);
    out.results["space_x"] = parse_space(c.space_x).name;
    out.results["space_y"] = parse_space(c.space_y).name;
    out.table.columns = {"n", "norm_x", "phi_x", "norm_y", "phi_y", "quotient", "tolerance"};
    for (const auto& x : r.rows)
        out.table.rows.push_back({x.n, x.norm_x, x.phi_x, x.norm_y, x.phi_y, x.quotient, c.tolerance});
    out.verdicts.push_back(verdict("positive floor", r.positive && r.stable, r.rule, true, r.disclaimer));
    return out;
}

inline Outcome run_regular(const ExperimentConfig& c) {
    Outcome out;
    json items = json::array();
    out.table.columns = {"space", "n", "norm", "scaled", "tolerance"};
    for (const auto& name : c.spaces) {
        const auto X = parse_space(name);
        const auto r = at_point(X.name, [&] { return regular_space_check(X, c.n_grid, c.c_grid, c.tolerance); });
        json per_c = json::array();
        for (double v : r.ratios_per_c) per_c.push_back(finite_or_null(v));
        items.push_back({{"space", X.name},
                         {"regular", r.regular},
                         {"best_c", r.best_c},
                         {"bracket_lo", finite_or_null(r.bracket_lo)},
                         {"bracket_hi", finite_or_null(r.bracket_hi)},
                         {"bracket_ratio", finite_or_null(r.bracket_ratio)},
                         {"norms", r.norms},
                         {"c_grid", r.c_grid},
                         {"ratios_per_c", per_c},
                         {"tolerance", c.tolerance}});
        for (std::size_t i = 0; i < r.n_grid.size(); ++i) {
            const double scaled = r.best_c > 0.0 ? r.norms[i] / fundamental_function(X, r.best_c / r.n_grid[i])
                                                 : std::nan("");
            out.table.rows.push_back({X.name, r.n_grid[i], r.norms[i], scaled, c.tolerance});
        }
        out.verdicts.push_back(verdict("regular " + X.name, r.regular, r.rule));
    }
    out.results["items"] = items;
    return out;
}

inline Outcome run_g_rates(const ExperimentConfig& c) {
    const auto X = std::get<GrandLebesgueSpec>(parse_space(c.space_x).kind);
    const auto Y = std::get<GrandLebesgueSpec>(parse_space(c.space_y).kind);
    const auto fit = g_pair_rate_check(X.a, X.b, X.alpha, X.beta, Y.a, Y.b, Y.alpha, Y.beta, c.n_grid, nf_params(c),
                                       c.tolerance);
    Outcome out;
    rate_outcome(out, fit, c.tolerance);
    return out;
}

inline const std::map<std::string, std::function<Outcome(const ExperimentConfig&)>>& commands() {
    static const std::map<std::string, std::function<Outcome(const ExperimentConfig&)>> table{
        {"moments", run_moments},
        {"norms", run_norms},
        {"fundamental", run_fundamental},
        {"nf", run_nf},
        {"optimize", run_optimize},
        {"zygmund", run_zygmund},
        {"extrapolation", run_extrapolation},
        {"lorentz-q", run_lorentz_q},
        {"lorentz-nf", run_lorentz_nf},
        {"orlicz-cond11", run_orlicz_cond11},
        {"regular", run_regular},
        {"g-rates", run_g_rates},
    };
    return table;
}

inline json provenance(const ExperimentConfig& c) {
    json tolerances{{"tolerance", c.tolerance}};
    if (c.command == "optimize") {
        tolerances["search_tol"] = c.optimizer.search_tol;
        tolerances["final_tol"] = c.optimizer.final_tol;
    }
    return {{"artifact_version", artifact_version},
            {"tolerances", tolerances},
            {"quadrature_budget",
             {{"rule", "adaptive Gauss-Kronrod 10/21"}, {"max_subdivisions", quad::Options{}.max_subdivisions}}},
            {"seed", c.seed}};
}

inline json diagnostics_json(const std::vector<Diagnostic>& d) {
    json out = json::array();
    for (const auto& x : d)
        out.push_back({{"severity", x.is_error() ? "error" : "warning"}, {"field", x.field}, {"message", x.message}});
    return out;
}

} // namespace detail

/// Validates, runs and wraps. Never throws for config or computation errors; they land in the envelope.
inline Report run(const ExperimentConfig& c, const std::string& timestamp = {}) {
    Report rep;
    auto& env = rep.envelope;
    env = {{"schema_version", schema_version},
           {"command", c.command},
           {"config", to_json(c)},
           {"provenance", detail::provenance(c)},
           {"results", nullptr},
           {"verdicts", json::array()},
           {"status", "ok"},
           {"error", nullptr},
           {"generated_at", timestamp}};
    const auto diags = validate(c);
    env["diagnostics"] = detail::diagnostics_json(diags);
    if (has_errors(diags)) {
        std::string msg;
        for (const auto& d : diags)
            if (d.is_error()) msg += (msg.empty() ? "" : "; ") + d.str();
        env["status"] = "error";
        env["error"] = {{"kind", "ConfigError"}, {"message", msg}};
        rep.exit_code = 2;
        return rep;
    }
    try {
        auto out = detail::commands().at(c.command)(c);
        env["results"] = std::move(out.results);
        env["verdicts"] = std::move(out.verdicts);
        rep.table = std::move(out.table);
    } catch (const Error& e) {
        env["status"] = "error";
        env["error"] = {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}};
        rep.exit_code = e.kind() == ErrorKind::ConfigError ? 2 : 3;
    } catch (const std::exception& e) {
        env["status"] = "error";
        env["error"] = {{"kind", "Internal"}, {"message", e.what()}};
        rep.exit_code = 3;
    }
    return rep;
}

inline void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    require(static_cast<bool>(f), ErrorKind::ConfigError, "cannot open " + path + " for writing");
    f << text;
    require(static_cast<bool>(f), ErrorKind::ConfigError, "write to " + path + " failed");
}

} // namespace rilab::lab
