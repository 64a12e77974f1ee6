#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "rilab/lab.hpp"

using namespace rilab;
using namespace rilab::lab;
namespace fs = std::filesystem;

namespace {

ExperimentConfig load_config(const std::string& name) {
    std::ifstream f(std::string(RILAB_CONFIG_DIR) + "/" + name);
    return config_from_json(json::parse(f));
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

int cli(const std::string& args) {
    const std::string cmd = std::string(RILAB_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / "rilab_test_lab_cli";
    fs::create_directories(dir);
    return dir / name;
}

} // namespace

TEST(Names, TypoGetsSuggestion) {
    try {
        parse_space("lorenz-pow(2)");
        FAIL() << "expected ConfigError";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::ConfigError);
        EXPECT_NE(std::string(e.what()).find("lorentz-pow"), std::string::npos) << e.what();
    }
    EXPECT_EQ(nearest("fejr", kernel_families()), "fejer");
    EXPECT_EQ(edit_distance("kitten", "sitting"), 3u);
}

TEST(Names, ArgumentErrorsAreConfigErrors) {
    for (const char* bad : {"lp(0.5)", "grand(1,2,1)", "fejer(0.5)", "fejer-power(4,2.5)", "orlicz-zygmund(0.5,1)",
                            "lp(2"}) {
        try {
            if (std::string(bad).starts_with("fejer")) parse_kernel(bad);
            else parse_space(bad);
            ADD_FAILURE() << bad;
        } catch (const Error& e) {
            EXPECT_EQ(e.kind(), ErrorKind::ConfigError) << bad;
        }
    }
}

TEST(Names, KernelLabelsRoundTrip) {
    for (const char* s : {"fejer(10)", "generalized(256,1.5,0.25)", "fejer-power(8,3)", "fejer-discrete(8)"})
        EXPECT_EQ(parse_kernel(s).label(), s);
}

TEST(Names, SpaceFamilies) {
    EXPECT_TRUE(std::holds_alternative<GrandLebesgueSpec>(parse_space("grand(1,2,1,1)").kind));
    EXPECT_NO_THROW(parse_lorentz("lorentz-powlog(2,1)"));
    EXPECT_THROW(parse_lorentz("lp(2)"), Error);
    EXPECT_NO_THROW(parse_orlicz("orlicz-zygmund(2,1)"));
    EXPECT_NO_THROW(parse_orlicz("orlicz-exp"));
}

TEST(Validate, ZygmundNeedsPAtLeastOne) {
    ExperimentConfig c;
    c.command = "zygmund";
    c.p = 0.5;
    c.q = 4;
    c.n_grid = {16, 32, 64, 128, 256, 512};
    const auto d = validate(c);
    ASSERT_TRUE(has_errors(d));
    bool found = false;
    for (const auto& x : d) found |= x.field == "p" && x.message.find("p >= 1") != std::string::npos;
    EXPECT_TRUE(found);
}

TEST(Validate, EmptyGridIsError) {
    ExperimentConfig c;
    c.command = "nf";
    c.space_x = c.space_y = "lp(2)";
    const auto d = validate(c);
    ASSERT_TRUE(has_errors(d));
    EXPECT_EQ(d.front().field, "n_grid");
}

TEST(Validate, DocumentUnknownKeyAndCommand) {
    auto d = validate_document(json{{"schema_version", 1}, {"command", "moments"}, {"kernel", "fejer(4)"},
                                    {"p_grid", {1, 2}}, {"tolerence", 1e-6}});
    EXPECT_FALSE(has_errors(d));
    ASSERT_EQ(d.size(), 1u);
    EXPECT_NE(d[0].message.find("tolerance"), std::string::npos);

    d = validate_document(json{{"schema_version", 1}, {"command", "moment"}});
    ASSERT_TRUE(has_errors(d));
    EXPECT_NE(d[0].message.find("moments"), std::string::npos);
}

TEST(Validate, ShippedConfigsAreValid) {
    for (const auto& e : fs::directory_iterator(RILAB_CONFIG_DIR)) {
        if (e.path().filename() == "bad_family.json") continue;
        std::ifstream f(e.path());
        EXPECT_FALSE(has_errors(validate_document(json::parse(f)))) << e.path();
    }
}

TEST(Output, SeventeenDigits) {
    EXPECT_EQ(format_double(0.1), "0.10000000000000001");
    for (double x : {0.1, 1.0 / 3, 6.02214076e23, -2.5e-300}) EXPECT_EQ(std::stod(format_double(x)), x);
    Table t{{"name", "v"}, {{std::string("a,b"), 1.5}}};
    EXPECT_EQ(to_csv(t), "name,v\n\"a,b\",1.5\n");
}

TEST(Run, MomentsCsvRows) {
    const auto rep = run(load_config("moments_fejer.json"));
    ASSERT_EQ(rep.exit_code, 0) << rep.envelope.dump();
    const auto csv = to_csv(rep.table);
    EXPECT_NE(csv.find("1,0.15707963267948968,"), std::string::npos) << csv;
    EXPECT_NE(csv.find("2,0.1618021593796416"), std::string::npos) << csv;
    for (const auto& item : rep.envelope["results"]["items"]) {
        EXPECT_TRUE(item.contains("tolerance"));
        EXPECT_NEAR(item["value"].get<double>(), item["closed_form"].get<double>(), 1e-12);
    }
}

TEST(Run, IdentityPairGivesOne) {
    const auto rep = run(load_config("nf_identity.json"));
    ASSERT_EQ(rep.exit_code, 0) << rep.envelope.dump();
    for (const auto& row : rep.envelope["results"]["rows"]) EXPECT_NEAR(row["value"].get<double>(), 1.0, 1e-9);
    ASSERT_FALSE(rep.envelope["verdicts"].empty());
    for (const auto& v : rep.envelope["verdicts"]) {
        EXPECT_TRUE(v.contains("rule"));
        EXPECT_TRUE(v.contains("heuristic"));
    }
}

TEST(Run, EnvelopeDeterministicAndEchoesConfig) {
    const auto c = load_config("moments_fejer.json");
    auto a = run(c, "t1").envelope;
    auto b = run(c, "t2").envelope;
    EXPECT_NE(a["generated_at"], b["generated_at"]);
    a.erase("generated_at");
    b.erase("generated_at");
    EXPECT_EQ(a.dump(), b.dump());
    for (const char* k : {"schema_version", "command", "config", "provenance", "results", "verdicts", "status", "error",
                          "diagnostics"})
        EXPECT_TRUE(a.contains(k)) << k;
    EXPECT_EQ(to_json(config_from_json(a["config"])), a["config"]);
    EXPECT_EQ(a["provenance"]["tolerances"]["tolerance"], 1e-9);
}

TEST(Run, ConfigErrorExitTwo) {
    ExperimentConfig c;
    c.command = "moments";
    c.kernels = {"fejer(10)"};
    c.p_grid = {1, 2};
    c.tolerance = 0.5;
    const auto rep = run(c);
    EXPECT_EQ(rep.exit_code, 2);
    EXPECT_EQ(rep.envelope["status"], "error");
    EXPECT_EQ(rep.envelope["error"]["kind"], "ConfigError");
}

TEST(Run, UnsupportedIsComputationError) {
    ExperimentConfig c;
    c.command = "norms";
    c.kernels = {"fejer(16)", "generalized(16,2,1)"};
    c.spaces = {"lorentz-pow(2)"};
    const auto rep = run(c);
    EXPECT_EQ(rep.exit_code, 3);
    EXPECT_EQ(rep.envelope["error"]["kind"], "Unsupported");
    const auto msg = rep.envelope["error"]["message"].get<std::string>();
    EXPECT_NE(msg.find("generalized(16,2,1)"), std::string::npos) << msg;
}

TEST(Run, SmallOptimizeBeatsBaseline) {
    ExperimentConfig c;
    c.command = "optimize";
    c.space_x = "grand(3,5,1,1)";
    c.space_y = "grand(1,2,1,1)";
    c.n = 64;
    c.optimizer.grid_points = 4;
    c.optimizer.restarts = 1;
    c.optimizer.iterations = 15;
    const auto rep = run(c);
    ASSERT_EQ(rep.exit_code, 0) << rep.envelope.dump();
    const auto& r = rep.envelope["results"];
    EXPECT_GE(r["best_value"].get<double>(), r["baseline_value"].get<double>());
    EXPECT_EQ(rep.table.columns.front(), "phase");
}

TEST(Cli, RunsAndWritesFiles) {
    const auto out_json = scratch("m.json"), out_csv = scratch("m.csv");
    fs::remove(out_json);
    fs::remove(out_csv);
    EXPECT_EQ(cli("moments --config " + std::string(RILAB_CONFIG_DIR) + "/moments_fejer.json --out-json " +
                  out_json.string() + " --out-csv " + out_csv.string()),
              0);
    const auto env = json::parse(slurp(out_json));
    EXPECT_EQ(env["status"], "ok");
    EXPECT_FALSE(env["generated_at"].get<std::string>().empty());
    EXPECT_NE(slurp(out_csv).find("1,0.15707963267948968"), std::string::npos);
}

TEST(Cli, ExitCodes) {
    const std::string dir = RILAB_CONFIG_DIR;
    EXPECT_EQ(cli("validate --config " + dir + "/moments_fejer.json"), 0);
    EXPECT_EQ(cli("validate --config " + dir + "/bad_family.json"), 2);
    EXPECT_EQ(cli("lorentz-q --config " + dir + "/bad_family.json"), 2);
    EXPECT_EQ(cli("moments --config " + dir + "/does_not_exist.json"), 2);
    EXPECT_EQ(cli("norms --config " + dir + "/moments_fejer.json"), 2);

    const auto bad = scratch("unsupported.json");
    std::ofstream(bad) << R"j({"schema_version": 1, "command": "norms", "kernels": ["generalized(8,2,1)"],
                              "spaces": ["lorentz-pow(2)"]})j";
    const auto env_path = scratch("unsupported_out.json");
    EXPECT_EQ(cli("norms --config " + bad.string() + " --out-json " + env_path.string()), 3);
    EXPECT_EQ(json::parse(slurp(env_path))["error"]["kind"], "Unsupported");
}
