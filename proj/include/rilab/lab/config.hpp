#pragma once

// Experiment configuration: JSON document <-> ExperimentConfig, and the
// dry-run validator that turns every problem into a diagnostic.

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "rilab/lab/names.hpp"
#include "rilab/nikolskii.hpp"

namespace rilab::lab {

using json = nlohmann::json;

inline constexpr int schema_version = 1;

inline const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names{"moments",      "norms",      "fundamental", "nf",
                                                "optimize",     "zygmund",    "extrapolation", "lorentz-q",
                                                "lorentz-nf",   "orlicz-cond11", "regular",  "g-rates"};
    return names;
}

struct ExperimentConfig {
    int schema_version = lab::schema_version;
    std::string command;

    std::vector<std::string> kernels; // kernel names, "fejer(10)"
    std::vector<std::string> spaces;
    std::string space;   // single-space commands
    std::string space_x;
    std::string space_y;

    std::vector<double> n_grid;
    std::vector<double> p_grid;
    std::vector<double> delta_grid;
    std::vector<double> eps_grid = log_grid(1e-6, 1e2, 33);
    std::vector<double> v_grid = log_grid(1.0, 1e6, 25);
    std::vector<double> r_grid;
    std::vector<double> s_grid;
    std::vector<double> c_grid = default_c_search();
    std::vector<double> sigma_values; // zygmund: where Z is compared

    double n = 256.0; // optimize
    double p = 2.0;   // zygmund, inverse extrapolation
    double q = 4.0;
    double gamma = 0.0;
    double beta = 0.0;
    int m = 1; // orlicz-cond11

    double tolerance = 1e-8;
    double K1 = 1.0;
    double K2 = 1.0;
    SigmaRule sigma_rule;
    WitnessFamily family;
    OptimizeOptions optimizer;

    std::string out_json;
    std::string out_csv;
    std::uint64_t seed = 0;
};

inline json to_json(const ExperimentConfig& c) {
    json family_pairs = json::array();
    for (const auto& [a, b] : c.family.generalized) family_pairs.push_back({a, b});
    const auto& o = c.optimizer;
    return json{
        {"schema_version", c.schema_version},
        {"command", c.command},
        {"kernels", c.kernels},
        {"spaces", c.spaces},
        {"space", c.space},
        {"space_x", c.space_x},
        {"space_y", c.space_y},
        {"n_grid", c.n_grid},
        {"p_grid", c.p_grid},
        {"delta_grid", c.delta_grid},
        {"eps_grid", c.eps_grid},
        {"v_grid", c.v_grid},
        {"r_grid", c.r_grid},
        {"s_grid", c.s_grid},
        {"c_grid", c.c_grid},
        {"sigma_values", c.sigma_values},
        {"n", c.n},
        {"p", c.p},
        {"q", c.q},
        {"gamma", c.gamma},
        {"beta", c.beta},
        {"m", c.m},
        {"tolerance", c.tolerance},
        {"K1", c.K1},
        {"K2", c.K2},
        {"sigma_rule", {{"coefficient", c.sigma_rule.coefficient}, {"exponent", c.sigma_rule.exponent}}},
        {"family", {{"fejer", c.family.fejer}, {"generalized", family_pairs}}},
        {"optimizer",
         {{"alpha_min", o.alpha_min},
          {"alpha_max", o.alpha_max},
          {"beta_min", o.beta_min},
          {"beta_max", o.beta_max},
          {"grid_points", o.grid_points},
          {"grid_lo", o.grid_lo},
          {"grid_hi", o.grid_hi},
          {"restarts", o.restarts},
          {"iterations", o.iterations},
          {"search_tol", o.search_tol},
          {"final_tol", o.final_tol},
          {"profile_points", o.profile_points}}},
        {"output", {{"json", c.out_json}, {"csv", c.out_csv}}},
        {"seed", c.seed},
    };
}

namespace detail {

template <class T>
void read(const json& j, const char* key, T& into) {
    if (!j.contains(key)) return;
    try {
        j.at(key).get_to(into);
    } catch (const json::exception& e) {
        throw Error(ErrorKind::ConfigError, std::string("field \"") + key + "\": " + e.what());
    }
}

inline const std::vector<std::string>& top_level_keys() {
    static const std::vector<std::string> keys{
        "schema_version", "command", "kernel", "kernels", "spaces", "space", "space_x", "space_y", "n_grid",
        "p_grid", "delta_grid", "eps_grid", "v_grid", "r_grid", "s_grid", "c_grid", "sigma_values", "n", "p", "q",
        "gamma", "beta", "m", "tolerance", "K1", "K2", "sigma_rule", "family", "optimizer", "output", "seed"};
    return keys;
}

} // namespace detail

/// Structural parse; semantic checks live in validate().
inline ExperimentConfig config_from_json(const json& j) {
    require(j.is_object(), ErrorKind::ConfigError, "config must be a JSON object");
    require(j.contains("schema_version"), ErrorKind::ConfigError, "missing schema_version");
    ExperimentConfig c;
    using detail::read;
    read(j, "schema_version", c.schema_version);
    read(j, "command", c.command);
    if (j.contains("kernel")) {
        std::string k;
        read(j, "kernel", k);
        c.kernels.insert(c.kernels.begin(), k);
    }
    std::vector<std::string> more;
    read(j, "kernels", more);
    c.kernels.insert(c.kernels.end(), more.begin(), more.end());
    read(j, "spaces", c.spaces);
    read(j, "space", c.space);
    read(j, "space_x", c.space_x);
    read(j, "space_y", c.space_y);
    read(j, "n_grid", c.n_grid);
    read(j, "p_grid", c.p_grid);
    read(j, "delta_grid", c.delta_grid);
    read(j, "eps_grid", c.eps_grid);
    read(j, "v_grid", c.v_grid);
    read(j, "r_grid", c.r_grid);
    read(j, "s_grid", c.s_grid);
    read(j, "c_grid", c.c_grid);
    read(j, "sigma_values", c.sigma_values);
    read(j, "n", c.n);
    read(j, "p", c.p);
    read(j, "q", c.q);
    read(j, "gamma", c.gamma);
    read(j, "beta", c.beta);
    read(j, "m", c.m);
    read(j, "tolerance", c.tolerance);
    read(j, "K1", c.K1);
    read(j, "K2", c.K2);
    if (j.contains("sigma_rule")) {
        const auto& s = j.at("sigma_rule");
        read(s, "coefficient", c.sigma_rule.coefficient);
        read(s, "exponent", c.sigma_rule.exponent);
    }
    if (j.contains("family")) {
        const auto& f = j.at("family");
        read(f, "fejer", c.family.fejer);
        std::vector<std::vector<double>> pairs;
        read(f, "generalized", pairs);
        for (const auto& pr : pairs) {
            require(pr.size() == 2, ErrorKind::ConfigError, "family.generalized entries are [alpha, beta] pairs");
            c.family.generalized.emplace_back(pr[0], pr[1]);
        }
    }
    if (j.contains("optimizer")) {
        const auto& o = j.at("optimizer");
        auto& t = c.optimizer;
        read(o, "alpha_min", t.alpha_min);
        read(o, "alpha_max", t.alpha_max);
        read(o, "beta_min", t.beta_min);
        read(o, "beta_max", t.beta_max);
        read(o, "grid_points", t.grid_points);
        read(o, "grid_lo", t.grid_lo);
        read(o, "grid_hi", t.grid_hi);
        read(o, "restarts", t.restarts);
        read(o, "iterations", t.iterations);
        read(o, "search_tol", t.search_tol);
        read(o, "final_tol", t.final_tol);
        read(o, "profile_points", t.profile_points);
    }
    if (j.contains("output")) {
        read(j.at("output"), "json", c.out_json);
        read(j.at("output"), "csv", c.out_csv);
    }
    read(j, "seed", c.seed);
    return c;
}

// ---------------------------------------------------------------------------
// validation

struct Diagnostic {
    enum class Severity { Error, Warning };
    Severity severity = Severity::Error;
    std::string field;
    std::string message;

    [[nodiscard]] bool is_error() const { return severity == Severity::Error; }
    [[nodiscard]] std::string str() const {
        return std::string(is_error() ? "error" : "warning") + " [" + field + "] " + message;
    }
};

inline bool has_errors(const std::vector<Diagnostic>& d) {
    return std::any_of(d.begin(), d.end(), [](const Diagnostic& x) { return x.is_error(); });
}

namespace detail {

struct Checker {
    std::vector<Diagnostic> out;

    void error(std::string field, std::string msg) {
        out.push_back({Diagnostic::Severity::Error, std::move(field), std::move(msg)});
    }
    void warning(std::string field, std::string msg) {
        out.push_back({Diagnostic::Severity::Warning, std::move(field), std::move(msg)});
    }

    template <class F>
    void guard(const std::string& field, const F& f) {
        try {
            f();
        } catch (const Error& e) {
            error(field, e.what());
        }
    }

    void space(const std::string& field, const std::string& name) {
        if (name.empty()) {
            error(field, "required");
            return;
        }
        guard(field, [&] { parse_space(name); });
    }
    template <class Parser>
    void typed(const std::string& field, const std::string& name, const Parser& parse) {
        if (name.empty()) {
            error(field, "required");
            return;
        }
        guard(field, [&] { parse(name); });
    }
    void kernel(const std::string& field, const std::string& name) {
        guard(field, [&] { parse_kernel(name); });
    }
    void grid(const std::string& field, const std::vector<double>& g, bool increasing = true) {
        if (g.empty()) {
            error(field, "grid is empty");
            return;
        }
        for (std::size_t i = 0; i < g.size(); ++i) {
            if (!std::isfinite(g[i])) error(field, "non-finite entry");
            if (increasing && i > 0 && !(g[i] > g[i - 1])) {
                error(field, "grid must be strictly increasing");
                return;
            }
        }
    }
    void tolerance(const std::string& field, double t) {
        if (!(t > 0.0 && t <= 1e-2)) error(field, "tolerance " + SpaceSpec::fmt_number(t) + " outside (0, 1e-2]");
    }
    void n_grid(const ExperimentConfig& c, std::size_t min_points = 1, double min_n = 1.0) {
        grid("n_grid", c.n_grid);
        if (c.n_grid.empty()) return;
        if (c.n_grid.size() < min_points)
            error("n_grid", "needs at least " + std::to_string(min_points) + " points");
        if (c.n_grid.front() < min_n) error("n_grid", "entries must be >= " + SpaceSpec::fmt_number(min_n));
    }
};

} // namespace detail

inline std::vector<Diagnostic> validate(const ExperimentConfig& c) {
    detail::Checker ck;
    if (c.schema_version != schema_version)
        ck.error("schema_version", "unsupported schema_version " + std::to_string(c.schema_version) + " (expected " +
                                       std::to_string(schema_version) + ")");
    const auto& cmds = command_names();
    if (std::find(cmds.begin(), cmds.end(), c.command) == cmds.end()) {
        ck.error("command", c.command.empty() ? std::string("required")
                                              : "unknown command \"" + c.command + "\"; did you mean \"" +
                                                    nearest(c.command, cmds) + "\"?");
        return ck.out;
    }
    ck.tolerance("tolerance", c.tolerance);
    ck.guard("sigma_rule", [&] { NFParams{c.K1, c.K2, c.sigma_rule}.validate(); });

    const auto& cmd = c.command;
    if (cmd == "moments") {
        if (c.kernels.size() != 1) ck.error("kernel", "moments takes exactly one kernel");
        for (const auto& k : c.kernels) ck.kernel("kernel", k);
        ck.grid("p_grid", c.p_grid, false);
        for (double p : c.p_grid)
            if (!(p > 0.0)) ck.error("p_grid", "p must be positive");
    } else if (cmd == "norms") {
        if (c.kernels.empty()) ck.error("kernels", "at least one kernel required");
        if (c.spaces.empty()) ck.error("spaces", "at least one space required");
        for (const auto& k : c.kernels) ck.kernel("kernels", k);
        for (const auto& s : c.spaces) ck.space("spaces", s);
    } else if (cmd == "fundamental") {
        if (c.spaces.empty()) ck.error("spaces", "at least one space required");
        for (const auto& s : c.spaces) ck.space("spaces", s);
        ck.grid("delta_grid", c.delta_grid, false);
        for (double d : c.delta_grid)
            if (!(d > 0.0 && d <= 1.0)) ck.error("delta_grid", "delta must lie in (0, 1]");
    } else if (cmd == "nf" || cmd == "lorentz-nf") {
        ck.n_grid(c);
        if (cmd == "lorentz-nf") {
            ck.typed("space_x", c.space_x, parse_lorentz);
            ck.typed("space_y", c.space_y, parse_lorentz);
        } else {
            ck.space("space_x", c.space_x);
            ck.space("space_y", c.space_y);
            if (!c.family.fejer && c.family.generalized.empty()) ck.error("family", "witness family is empty");
            for (const auto& [a, b] : c.family.generalized)
                if (!(a > 0.0 && b > 0.0)) ck.error("family", "generalized (alpha, beta) must be positive");
        }
    } else if (cmd == "optimize") {
        ck.space("space_x", c.space_x);
        ck.space("space_y", c.space_y);
        if (!(c.n >= 1.0)) ck.error("n", "n must be >= 1");
        ck.tolerance("optimizer.search_tol", c.optimizer.search_tol);
        ck.tolerance("optimizer.final_tol", c.optimizer.final_tol);
        ck.guard("optimizer", [&] { c.optimizer.validate(); });
        if (c.n > 1e4 && c.optimizer.final_tol < 1e-10)
            ck.warning("optimizer.final_tol", "n > 1e4 with tol < 1e-10 is slow");
    } else if (cmd == "zygmund") {
        if (c.p < 1.0) ck.error("p", "Zygmund space needs p >= 1");
        else if (!(c.p > 1.0 && c.p < c.q)) ck.error("q", "zygmund needs 1 < p < q");
        if (c.gamma < 0.0 || c.beta < 0.0) ck.error("gamma", "gamma and beta must be >= 0");
        ck.n_grid(c, 6, 16.0);
        if (!c.sigma_values.empty() && !(c.gamma > 0.0 && c.beta > 0.0))
            ck.error("sigma_values", "comparing Z needs gamma > 0 and beta > 0");
        for (double s : c.sigma_values)
            if (!(s > std::exp(1.0))) ck.error("sigma_values", "sigma must exceed e");
    } else if (cmd == "extrapolation") {
        if (c.kernels.empty()) ck.error("kernels", "at least one kernel required");
        for (const auto& k : c.kernels) ck.kernel("kernels", k);
        if (c.q < 1.0) ck.error("q", "Zygmund space needs q >= 1");
        if (c.r_grid.empty() && c.s_grid.empty()) ck.error("r_grid", "r_grid or s_grid required");
        if (!c.r_grid.empty()) {
            ck.grid("r_grid", c.r_grid);
            for (double r : c.r_grid)
                if (!(r > c.q)) ck.error("r_grid", "r must exceed q");
        }
        if (!c.s_grid.empty()) {
            if (c.p < 1.0) ck.error("p", "Zygmund space needs p >= 1");
            ck.grid("s_grid", c.s_grid);
            for (double s : c.s_grid)
                if (!(s > 1.0 && s < c.p)) ck.error("s_grid", "s must lie in (1, p)");
        }
    } else if (cmd == "lorentz-q") {
        ck.typed("space", c.space, parse_lorentz);
        ck.grid("eps_grid", c.eps_grid);
    } else if (cmd == "orlicz-cond11") {
        ck.typed("space", c.space, parse_orlicz);
        if (c.m < 1) ck.error("m", "m must be a positive integer");
        ck.grid("v_grid", c.v_grid);
    } else if (cmd == "regular") {
        if (c.spaces.empty()) ck.error("spaces", "at least one space required");
        for (const auto& s : c.spaces) ck.space("spaces", s);
        ck.n_grid(c);
        ck.grid("c_grid", c.c_grid);
    } else if (cmd == "g-rates") {
        auto grand_only = [&](const std::string& field, const std::string& name) {
            ck.typed(field, name, [&](const std::string&) {
                if (!std::holds_alternative<GrandLebesgueSpec>(parse_space(name).kind))
                    throw Error(ErrorKind::ConfigError, "g-rates needs Grand Lebesgue spaces");
            });
        };
        grand_only("space_x", c.space_x);
        grand_only("space_y", c.space_y);
        ck.n_grid(c, 6, 16.0);
    }

    const bool large_n = c.n_grid.size() && c.n_grid.back() > 1e4;
    if (large_n && c.tolerance < 1e-10) ck.warning("tolerance", "n > 1e4 with tol < 1e-10 is slow");
    return ck.out;
}

/// Dry run over a raw document: structural errors and unknown keys become diagnostics too.
inline std::vector<Diagnostic> validate_document(const json& j) {
    std::vector<Diagnostic> out;
    if (j.is_object()) {
        const auto& keys = detail::top_level_keys();
        for (const auto& [k, v] : j.items())
            if (std::find(keys.begin(), keys.end(), k) == keys.end())
                out.push_back({Diagnostic::Severity::Warning, k,
                               "unknown key ignored; did you mean \"" + nearest(k, keys) + "\"?"});
    }
    try {
        const auto c = config_from_json(j);
        const auto more = validate(c);
        out.insert(out.end(), more.begin(), more.end());
    } catch (const Error& e) {
        out.push_back({Diagnostic::Severity::Error, "config", e.what()});
    }
    return out;
}

} // namespace rilab::lab
