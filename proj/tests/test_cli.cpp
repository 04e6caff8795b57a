#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include "json.hpp"

using nlohmann::json;

namespace {

struct RunResult {
    int code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(MODBGG_CLI_PATH) + " " + args + " 2>/dev/null";
    RunResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

json run_json(const std::string& args, int expected_code = 0) {
    auto r = run_cli(args);
    EXPECT_EQ(r.code, expected_code) << args;
    return json::parse(r.out);
}

}  // namespace

TEST(Cli, OrbitFamily) {
    const auto j = run_json("orbit --group gsp4 --p 13 --lambda0 4,2");
    EXPECT_EQ(j["meta"]["command"], "orbit");
    EXPECT_EQ(j["result"]["family"]["lambda2"], json({14, 6}));
    EXPECT_EQ(j["result"]["family"]["mu2"], json({14, -8}));
    EXPECT_EQ(j["result"]["alcoves"]["lambda1"], "C1");
}

TEST(Cli, WeylCharacterDimension) {
    const auto j = run_json("char weyl --group gsp4 --lambda 1,0");
    long long dim = 0;
    for (const auto& t : j["result"]["character"]["terms"]) dim += t[1].get<long long>();
    EXPECT_EQ(dim, 4);
}

TEST(Cli, MultiplicityCheckReportsTopMultiplicity) {
    const auto j = run_json("verify lemma39 --group gsp4 --p 13 --lambda0 4,2", 1);
    ASSERT_EQ(j["result"]["cells"].size(), 1u);
    EXPECT_EQ(j["result"]["cells"][0]["n"], 1);
    EXPECT_TRUE(j["result"]["cells"][0]["floors"]["pass"].get<bool>());
}

TEST(Cli, UsageErrorsExitTwo) {
    EXPECT_EQ(run_cli("orbit --group sl5 --p 13 --lambda0 4,2").code, 2);
    EXPECT_EQ(run_cli("orbit --group gsp4 --p 4 --lambda0 4,2").code, 2);
    EXPECT_EQ(run_cli("orbit --group gsp4 --p 13 --lambda0 4").code, 2);
    EXPECT_EQ(run_cli("orbit --group gsp4 --p 13 --lambda0 8,6").code, 2);
    EXPECT_EQ(run_cli("no-such-command").code, 2);
    EXPECT_EQ(run_cli("--format yaml orbit --group gsp4 --p 13 --lambda0 4,2").code, 2);
}

TEST(Cli, OutputIsDeterministic) {
    const std::string args = "bgg build --group gsp4 --p 13 --lambda0 4,2 --alcove 2";
    const auto a = run_cli(args), b = run_cli(args);
    EXPECT_EQ(a.code, 0);
    EXPECT_FALSE(a.out.empty());
    EXPECT_EQ(a.out, b.out);
}

TEST(Cli, ConfigFileSuppliesOptionsAndCommandLineWins) {
    const auto path = std::filesystem::temp_directory_path() / "modbgg_cli_test_config.json";
    {
        std::ofstream(path) << R"({"group": "gsp4", "p": 17, "lambda0": "4,2"})";
    }
    const auto j = run_json("orbit --config " + path.string());
    EXPECT_EQ(j["result"]["family"]["lambda0"], json({4, 2}));
    const auto k = run_json("orbit --config " + path.string() + " --p 13");
    EXPECT_EQ(k["result"]["family"]["lambda2"], json({14, 6}));
    {
        std::ofstream(path) << R"({"unknown_key": 1})";
    }
    EXPECT_EQ(run_cli("orbit --config " + path.string()).code, 2);
    std::filesystem::remove(path);
}

TEST(Cli, DiagramIsSvg) {
    const auto r = run_cli("--format text diagram --group gsp4 --p 13 --lambda0 4,2");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out.rfind("<svg", 0), 0u) << r.out.substr(0, 80);
}

TEST(Cli, AmplitudeScenarios) {
    const auto j = run_json("amplitude run gl3_concentration");
    EXPECT_EQ(j["result"]["outcome"], "PASS");
    const auto c1 = run_json("amplitude run gsp4_c1");
    EXPECT_EQ(c1["result"]["outcome"], "CONDITIONAL PASS");
    const auto l = run_json("amplitude list");
    EXPECT_FALSE(l["result"].empty());
}

TEST(Cli, TextFormatAndVersion) {
    const auto r = run_cli("--format text orbit --group gsp4 --p 13 --lambda0 4,2");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("lambda2"), std::string::npos);
    const auto v = run_cli("--version");
    EXPECT_EQ(v.code, 0);
    EXPECT_NE(v.out.find("1.0.0"), std::string::npos);
}
