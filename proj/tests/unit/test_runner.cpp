#include "befp/runner.hpp"

#include "befp/config.hpp"

#include <json.hpp>

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

using namespace befp;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name)
{
    const auto p = fs::temp_directory_path() / ("befp_unit_" + name);
    fs::remove_all(p);
    return p;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_with(const KeyValues& kv, const fs::path& out, std::string* report = nullptr)
{
    auto all = kv;
    all.emplace_back("out", out.string());
    std::ostringstream os;
    const int code = run(resolve_config({}, all), os);
    if (report)
        *report = os.str();
    return code;
}

}  // namespace

TEST_SUITE("runner")
{
    TEST_CASE("uniform source")
    {
        UniformSource a(42), b(42), c(43);
        for (int k = 0; k < 100; ++k) {
            const double x = a.next();
            CHECK(x == b.next());
            CHECK(x >= 0.0);
            CHECK(x < 1.0);
        }
        CHECK(a.next() != c.next());
    }

    TEST_CASE("manifest")
    {
        const auto cfg = resolve_config({}, {{"mode", "equilibrium"}, {"beta", "2"}});
        const auto j = nlohmann::json::parse(manifest_json(cfg));
        CHECK(j["tool"] == tool_name);
        CHECK(j["version"] == tool_version);
        CHECK(j["config"]["mode"] == "equilibrium");
        CHECK(j["config"]["beta"].get<double>() == 2.0);
        CHECK(manifest_json(cfg) == manifest_json(cfg));
    }

    TEST_CASE("equilibrium mode")
    {
        const auto out = scratch("eq");
        std::string report;
        CHECK(run_with({{"mode", "equilibrium"}, {"beta", "2"}, {"radial-n", "2000"}}, out, &report) == exit_ok);
        CHECK(fs::exists(out / "equilibrium.csv"));
        CHECK(fs::exists(out / "manifest.json"));
        CHECK(fs::exists(out / "summary.txt"));
        const auto j = nlohmann::json::parse(slurp(out / "diagnostics.json"));
        CHECK(j["H"].get<double>() == doctest::Approx(-6.67710043897047).epsilon(1e-8));
        fs::remove_all(out);
    }

    TEST_CASE("radial runs are reproducible byte for byte")
    {
        const KeyValues kv{{"mode", "radial-exact"}, {"ic", "random"}, {"seed", "9"}, {"radial-n", "400"}, {"times", "0.5,1"}};
        const auto a = scratch("rep_a"), b = scratch("rep_b");
        REQUIRE(run_with(kv, a) == exit_ok);
        REQUIRE(run_with(kv, b) == exit_ok);
        for (const char* name : {"trajectory.csv", "diagnostics.csv", "initial.csv", "fp_trajectory.csv"})
            CHECK(slurp(a / name) == slurp(b / name));
        CHECK(slurp(a / "trajectory.csv").size() > 1000);
        fs::remove_all(a);
        fs::remove_all(b);
    }

    TEST_CASE("numeric-2d writes snapshots")
    {
        const auto out = scratch("n2d");
        CHECK(run_with({{"mode", "numeric-2d"}, {"ic", "two-bump"}, {"grid-n", "24"}, {"times", "0,0.1"}}, out) == exit_ok);
        CHECK(fs::exists(out / "snapshot_000.csv"));
        CHECK(fs::exists(out / "snapshot_001.bin"));
        CHECK(fs::exists(out / "diagnostics.csv"));
        fs::remove_all(out);
    }

    TEST_CASE("oversized dt is a configuration error")
    {
        const auto out = scratch("dt");
        CHECK(run_with({{"mode", "numeric-2d"}, {"ic", "gaussian"}, {"grid-n", "16"}, {"times", "0.1"}, {"dt", "0.05"}},
                       out) == exit_config_error);
        fs::remove_all(out);
    }

    TEST_CASE("convergence study")
    {
        ExperimentConfig cfg = resolve_config({}, {{"mode", "convergence-study"}, {"ic", "gaussian"}, {"grid-n", "16"},
                                                   {"times", "0.2"}, {"radial-n", "1000"}});
        const auto rows = convergence_study(cfg);
        REQUIRE(rows.size() == 3);
        CHECK(rows[0].n == 16);
        CHECK(rows[2].n == 64);
        CHECK_FALSE(rows[0].order.has_value());
        CHECK(rows[2].l1_error < rows[0].l1_error);
        CHECK(*rows[2].order > 1.5);
    }

    TEST_CASE("validation suite passes")
    {
        const auto cfg = resolve_config({}, {{"mode", "validate"}});
        const auto checks = run_validation_suite(cfg);
        CHECK(checks.size() >= 8);
        for (const auto& c : checks) {
            INFO(c.name << " = " << c.value << " (threshold " << c.threshold << ")");
            CHECK(c.passed);
        }
    }
}
