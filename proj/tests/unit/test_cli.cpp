#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "commands.hpp"
#include "run_config.hpp"

using namespace thermo;
using namespace thermo::cli;

namespace {

std::string error_of(const std::string& text)
{
    try {
        parse_run_config(text);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return {};
}

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::filesystem::path scratch(const std::string& name)
{
    auto p = std::filesystem::temp_directory_path() / ("thermo_cli_test_" + name);
    std::filesystem::remove_all(p);
    return p;
}

} // namespace

TEST(Config, SyntaxErrorsCarryLineAndColumn)
{
    auto msg = error_of("{\"system\": \"full-2-shift\",\n  \"eps\": [0.3,}");
    EXPECT_NE(msg.find("line 2, column 15"), std::string::npos) << msg;
}

TEST(Config, FieldErrorsNameThePath)
{
    EXPECT_NE(error_of(R"({"system": "golden-mean", "colour": 1})").find("'colour': unknown key"), std::string::npos);
    EXPECT_NE(error_of(R"({"system": {"symbolic": {"k": 2, "transitions": [[1,1],[1,"x"]]}}})")
                  .find("'system.symbolic.transitions[1][1]'"),
              std::string::npos);
    EXPECT_NE(error_of(R"({"system": "no-such-system"})").find("unknown zoo entry"), std::string::npos);
    EXPECT_NE(error_of(R"({"system": "golden-mean", "mode": "fast"})").find("'mode'"), std::string::npos);
    EXPECT_NE(error_of(R"({"potential": 1})").find("needs 'system'"), std::string::npos);
}

TEST(Config, ChunkSizeOneIsRejected)
{
    EXPECT_NE(error_of(R"({"system": "golden-mean", "q": [1]})").find("1 < q < n"), std::string::npos);
    EXPECT_NE(error_of(R"({"properties": {"q": [1, 2]}})").find("1 < q < n"), std::string::npos);
    EXPECT_NE(error_of(R"({"system": "golden-mean", "q": [12]})").find("1 < q < n"), std::string::npos);
}

TEST(Config, DefaultsComeFromTheEntry)
{
    auto c = parse_run_config(R"({"system": "translation-Z", "zoo": {"translation_m": 16}})");
    EXPECT_EQ(effective_n_max(c), 16);
    EXPECT_EQ(effective_eps(c).size(), 3U);
    EXPECT_EQ(effective_pipeline_n(c).back(), 10);
    EXPECT_EQ(c.mode, SolverMode::exact);
}

TEST(Config, IndicatorCombination)
{
    auto c = parse_run_config(
        R"({"system": "full-2-shift", "potential": {"indicators": [{"word": [0], "weight": 1}, {"word": [1, 1], "weight": -0.5}], "constant": 0.25}})");
    ASSERT_TRUE(c.potential);
    const auto& form = c.potential->cylinder_form();
    ASSERT_TRUE(form);
    EXPECT_EQ(form->depth, 2);
    EXPECT_EQ(form->values, (std::vector<double>{1.0, 1.0, 0.0, -0.5}));
    EXPECT_EQ(c.potential->at_infinity(), 0.25);
}

TEST(Estimate, SummaryAndDeterminism)
{
    auto a = scratch("estimate_a");
    auto b = scratch("estimate_b");
    auto c = parse_run_config(R"({"system": "golden-mean", "eps": [0.3], "n_max": 8})");
    std::ostringstream log;
    c.out = a;
    ASSERT_EQ(cmd_estimate(c, log), exit_ok);
    c.out = b;
    ASSERT_EQ(cmd_estimate(c, log), exit_ok);
    for (const char* f : {"pressure.csv", "summary.json"})
        EXPECT_EQ(slurp(a / f), slurp(b / f)) << f;
    auto summary = slurp(a / "summary.json");
    EXPECT_NE(summary.find("\"consolidated_pressure\": 0.48"), std::string::npos) << summary;
    EXPECT_NE(summary.find("\"oracle\": 0.4812118250596"), std::string::npos);
}

TEST(VerifyVp, ShiftByAConstantKeepsTheGap)
{
    auto run = [](double c) {
        auto out = scratch("vp_" + std::to_string(static_cast<int>(c * 10)));
        auto cfg = parse_run_config(
            "{\"system\": \"golden-mean\", \"eps\": [0.3], \"n_max\": 8, \"potential\": {\"constant\": " +
            std::to_string(c) + "}}");
        cfg.out = out;
        std::ostringstream log;
        EXPECT_EQ(cmd_verify_vp(cfg, log), exit_ok);
        return slurp(out / "verify_vp.json");
    };
    auto gap_of = [](const std::string& text) {
        auto at = text.find("\"gap\": ");
        return std::stod(text.substr(at + 7));
    };
    double g0 = gap_of(run(0.0));
    double g1 = gap_of(run(1.5));
    EXPECT_NEAR(g0, g1, 1e-9);
    EXPECT_LE(g0, 0.05);
}

TEST(VerifyVp, SampledFixtureWithExtension)
{
    auto cfg = load_run_config(THERMO_FIXTURE_DIR "/fiber_example.json");
    cfg.out = scratch("fiber");
    std::ostringstream log;
    ASSERT_EQ(cmd_verify_vp(cfg, log), exit_ok) << log.str();
    auto text = slurp(cfg.out / "verify_vp.json");
    EXPECT_NE(text.find("\"zero-measure\""), std::string::npos);
    EXPECT_TRUE(std::filesystem::exists(cfg.out / "mu_star.csv"));
}

TEST(Properties, GreedyRunsAreLabelled)
{
    auto cfg = parse_run_config(R"({"system": "golden-mean", "mode": "greedy"})");
    cfg.out = scratch("props_greedy");
    std::ostringstream log;
    int status = cmd_properties(cfg, log);
    EXPECT_TRUE(status == exit_ok || status == exit_failed);
    auto csv = slurp(cfg.out / "properties.csv");
    EXPECT_EQ(csv.rfind("lemma,system,mode,passed,slack\n", 0), 0U);
    EXPECT_EQ(csv.find(",exact,"), std::string::npos);
    EXPECT_NE(csv.find(",greedy,"), std::string::npos);
}

TEST(Properties, ExitStatusReflectsTheSuite)
{
    auto cfg = parse_run_config(R"({"system": "golden-mean"})");
    cfg.out = scratch("props");
    std::ostringstream log;
    EXPECT_EQ(cmd_properties(cfg, log), exit_ok);
    EXPECT_NE(slurp(cfg.out / "properties.json").find("\"all_passed\": true"), std::string::npos);
}
