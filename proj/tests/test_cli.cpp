#include "bpcalc/cli.hpp"
#include "bpcalc/golden.hpp"

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace bpcalc;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run_cli(const RunConfig& cfg)
{
    std::ostringstream out, err;
    const int code = run(cfg, out, err);
    return {code, out.str(), err.str()};
}

RunConfig config(std::string command, int p, int k)
{
    RunConfig cfg;
    cfg.command = std::move(command);
    cfg.prime = p;
    cfg.truncation = k;
    cfg.threads = 1;
    return cfg;
}

} // namespace

TEST_CASE("ideal parsing")
{
    CHECK(parse_ideal("v2,v3") == std::vector<int>{2, 3});
    CHECK(parse_ideal("2, 3") == std::vector<int>{2, 3});
    CHECK(parse_ideal("").empty());
    CHECK_THROWS(parse_ideal("w2"));
}

TEST_CASE("default truncations")
{
    CHECK(default_truncation(2) == 13);
    CHECK(default_truncation(3) == 25);
    CHECK(default_truncation(5) == 79);
    CHECK(default_truncation(7) == 167);
    CHECK(default_truncation(11) == 379);
    CHECK(default_truncation(13) == 515);
}

TEST_CASE("text output")
{
    auto cfg = config("reduced-pseries", 2, 4);
    cfg.ideal = {2};
    auto r = run_cli(cfg);
    CHECK(r.code == kOk);
    CHECK(r.out == "<2>(xi) = 2 - v1 xi + 2 v1^2 xi^2 - 8 v1^3 xi^3 + 26 v1^4 xi^4 + O(xi^5)\n");

    auto mc = config("mc", 2, 7);
    mc.n = 2;
    mc.ideal = {2, 3};
    r = run_cli(mc);
    CHECK(r.code == kOk);
    CHECK(r.out.find("MC_2(xi) = v1^6 xi^6 + O(xi^7)") != std::string::npos);
    CHECK(r.out.find("obstruction index: yes") != std::string::npos);
}

TEST_CASE("json output parses")
{
    auto cfg = config("mc", 3, 13);
    cfg.n = 4;
    cfg.format = Format::Json;
    auto r = run_cli(cfg);
    REQUIRE(r.code == kOk);
    auto j = Json::parse(r.out);
    CHECK(j["n"] == 4);
    CHECK(j["prime"] == 3);
    CHECK(j.contains("reduced"));
}

TEST_CASE("invalid requests exit 1")
{
    CHECK(run_cli(config("log", 4, 5)).code == kValidationFailure);
    CHECK(run_cli(config("log", 2, 0)).code == kValidationFailure);
    CHECK(run_cli(config("frobnicate", 2, 5)).code == kValidationFailure);
    auto mc = config("mc", 5, 6);
    mc.n = 8;
    auto r = run_cli(mc);
    CHECK(r.code == kValidationFailure);
    CHECK(r.err.find("error:") == 0);
}

TEST_CASE("verify exits 2 on a mismatching table")
{
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "bpcalc_golden_test";
    fs::create_directories(dir);
    {
        auto suite = Json::parse(std::ifstream(golden_dir() / "example.json"));
        // corrupt the logarithm: l1 coefficient 1 -> 2
        auto& poly = suite["entries"][0]["series"]["terms"][1]["poly"][0];
        poly["coef"] = "2";
        std::ofstream(dir / "example.json") << suite.dump();
    }
    ::setenv("BPCALC_GOLDEN_DIR", dir.c_str(), 1);
    auto cfg = config("verify", 2, 7);
    cfg.suites = {"example"};
    auto r = run_cli(cfg);
    ::unsetenv("BPCALC_GOLDEN_DIR");
    CHECK(r.code == kGoldenMismatch);
    CHECK(r.out.find("FAIL") != std::string::npos);

    r = run_cli(cfg);
    CHECK(r.code == kOk);
    fs::remove_all(dir);
}

TEST_CASE("thread count does not change output")
{
    auto a = config("mc", 3, 25);
    a.n = 4;
    auto b = a;
    b.threads = 4;
    CHECK(run_cli(a).out == run_cli(b).out);
}
