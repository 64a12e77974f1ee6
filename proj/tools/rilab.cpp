// rilab <command> --config <path> [--out-json <path>] [--out-csv <path>] [--seed <u64>]
// Exit codes: 0 ok, 2 config error, 3 computation error.

#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "rilab/lab.hpp"

namespace {

using rilab::lab::json;

std::string utc_now() {
    const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

json load(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw rilab::Error(rilab::ErrorKind::ConfigError, "cannot read " + path);
    try {
        return json::parse(f);
    } catch (const json::parse_error& e) {
        throw rilab::Error(rilab::ErrorKind::ConfigError, path + ": " + e.what());
    }
}

void emit(const rilab::lab::Report& rep, const std::string& json_path, const std::string& csv_path) {
    const std::string text = rep.envelope.dump(2) + "\n";
    if (json_path.empty()) std::cout << text;
    else rilab::lab::write_text(json_path, text);
    if (!csv_path.empty() && !rep.table.columns.empty()) rilab::lab::write_text(csv_path, rilab::lab::to_csv(rep.table));
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"rilab: experiments on Nikol'skii-type inequalities in rearrangement invariant spaces"};
    std::string command;
    std::string config_path;
    std::string out_json;
    std::string out_csv;
    std::uint64_t seed = 0;

    std::vector<std::string> choices = rilab::lab::command_names();
    choices.push_back("validate");
    app.add_option("command", command, "campaign to run, or 'validate'")->required()->check(CLI::IsMember(choices));
    app.add_option("--config", config_path, "JSON experiment config")->required();
    app.add_option("--out-json", out_json, "report envelope (default: stdout)");
    app.add_option("--out-csv", out_csv, "tabular series");
    auto* seed_opt = app.add_option("--seed", seed, "random seed");
    CLI11_PARSE(app, argc, argv);

    json doc;
    rilab::lab::ExperimentConfig config;
    try {
        doc = load(config_path);
        if (command == "validate") {
            const auto diags = rilab::lab::validate_document(doc);
            for (const auto& d : diags) std::cout << d.str() << "\n";
            if (diags.empty()) std::cout << "ok\n";
            return rilab::lab::has_errors(diags) ? 2 : 0;
        }
        config = rilab::lab::config_from_json(doc);
        if (config.command.empty()) config.command = command;
        if (config.command != command)
            throw rilab::Error(rilab::ErrorKind::ConfigError,
                               "config is for command \"" + config.command + "\", not \"" + command + "\"");
        if (*seed_opt) config.seed = seed;
        if (!out_json.empty()) config.out_json = out_json;
        if (!out_csv.empty()) config.out_csv = out_csv;
    } catch (const rilab::Error& e) {
        std::cerr << e.what() << "\n";
        if (!out_json.empty()) {
            json env{{"status", "error"},
                     {"command", command},
                     {"error", {{"kind", "ConfigError"}, {"message", e.what()}}},
                     {"generated_at", utc_now()}};
            try {
                rilab::lab::write_text(out_json, env.dump(2) + "\n");
            } catch (const rilab::Error&) {
            }
        }
        return 2;
    }

    const auto report = rilab::lab::run(config, utc_now());
    try {
        emit(report, config.out_json, config.out_csv);
    } catch (const rilab::Error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }
    if (report.exit_code != 0) std::cerr << report.envelope["error"]["message"].get<std::string>() << "\n";
    for (const auto& v : report.envelope["verdicts"])
        std::cerr << v["name"].get<std::string>() << ": " << v["value"].dump() << "  (" << v["rule"].get<std::string>()
                  << ")\n";
    return report.exit_code;
}
