// SPDX-License-Identifier: MIT
#include <doctest.h>

#include <sstream>

#include "gclt/cli.hpp"
#include "gclt/config.hpp"
#include "gclt/error.hpp"
#include "oracles.hpp"

using namespace gclt;
namespace fs = std::filesystem;

namespace {

struct Run {
    int status;
    std::string out, err;
};

Run invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "gclt");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int status = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
    return {status, out.str(), err.str()};
}

std::size_t lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_CASE("family and phi json round trip") {
    const auto f = builtin_family("rademacher_pair");
    const auto g = family_from_json(family_to_json(f));
    CHECK(g.sigma_under() == f.sigma_under());
    CHECK(g.lattice_step() == f.lattice_step());
    for (const auto& phi : {PhiFunction::abs(), PhiFunction::abs_pow(0.5), PhiFunction::constant(2.0),
                            PhiFunction::piecewise_linear({{-1.0, 0.0}, {1.0, 0.5}})}) {
        CHECK(phi_to_json(phi_from_json(phi_to_json(phi))) == phi_to_json(phi));
    }
    CHECK_THROWS_AS(family_from_json(nlohmann::json::parse(R"({"members": [{"support": [1]}]})")), Error);
    CHECK_THROWS_AS(family_from_json(nlohmann::json::parse(R"({"members": [], "extra": 1})")), Error);
    CHECK_THROWS_AS(builtin_family("nope"), Error);
    CHECK(builtin_family("conjecture:16").sigma_bar() == doctest::Approx(std::sqrt(0.5)));
}

TEST_CASE("run config round trip") {
    RunConfig c;
    c.command = "rates";
    c.family_json = family_to_json(builtin_family("skewed"));
    c.ns = {4, 16};
    c.sigma_bar = 0.8;
    c.eps = {0.3};
    c.emit_svg = true;
    const auto j = to_json(c);
    CHECK(to_json(run_config_from_json(j)) == j);
    auto bad = j;
    bad["mode"] = "sideways";
    CHECK_THROWS_AS(run_config_from_json(bad), Error);
    bad = j;
    bad["unknown"] = 1;
    CHECK_THROWS_AS(run_config_from_json(bad), Error);
}

TEST_CASE("rates command") {
    const auto dir = oracle::scratch_dir("rates");
    const auto r = invoke({"rates", "--family", "rademacher", "--phi", "abs", "--ns", "4,16,64,256", "--out",
                           dir.string(), "--svg"});
    CHECK(r.status == kExitOk);
    CHECK(r.out.find("slope") != std::string::npos);
    CHECK(lines(oracle::slurp(dir / "rates.csv")) == 5);
    CHECK(fs::exists(dir / "rates.svg"));
    CHECK(fs::exists(dir / "config.json"));
    const auto manifest = nlohmann::json::parse(oracle::slurp(dir / "manifest.json"));
    CHECK(manifest["schema_version"] == kConfigSchemaVersion);
    CHECK_FALSE(fs::exists(dir / ".gclt.lock"));

    // rerunning from the saved config reproduces the CSVs byte for byte
    const auto again = oracle::scratch_dir("rates-again");
    CHECK(invoke({"run", "--config", (dir / "config.json").string(), "--out", again.string()}).status == kExitOk);
    CHECK(oracle::slurp(dir / "rates.csv") == oracle::slurp(again / "rates.csv"));
    CHECK(oracle::slurp(dir / "rates_summary.csv") == oracle::slurp(again / "rates_summary.csv"));
    fs::remove_all(dir);
    fs::remove_all(again);
}

TEST_CASE("value command") {
    const auto dir = oracle::scratch_dir("value");
    const auto r = invoke({"value", "--sigma-under", "1", "--sigma-bar", "1", "--phi", "abs", "--h", "0.02",
                           "--field-csv", "--out", dir.string()});
    CHECK(r.status == kExitOk);
    CHECK(r.out.find("0.797") != std::string::npos);
    CHECK(r.out.find("+/-") != std::string::npos);
    CHECK(fs::exists(dir / "field.csv"));
    fs::remove_all(dir);
}

TEST_CASE("recurse, conjecture, regularity and mollify-check commands") {
    const auto dir = oracle::scratch_dir("misc");
    auto r = invoke({"recurse", "--n", "4", "--out", (dir / "a").string()});
    CHECK(r.status == kExitOk);
    CHECK(r.out.find("0.75") != std::string::npos);
    r = invoke({"conjecture", "--ns", "4,16", "--out", (dir / "b").string()});
    CHECK(r.status == kExitOk);
    CHECK(lines(oracle::slurp(dir / "b" / "conjecture.csv")) == 3);
    r = invoke({"regularity", "--ns", "8,16", "--out", (dir / "c").string()});
    CHECK(r.status == kExitOk);
    r = invoke({"mollify-check", "--beta", "0.5", "--eps", "0.2,0.1", "--out", (dir / "d").string()});
    CHECK(r.status == kExitOk);
    CHECK(fs::exists(dir / "d" / "mollify_scaling.csv"));
    r = invoke({"mollify-check", "--surface", "vn", "--n", "16", "--eps", "0.2,0.1", "--L", "1",
                "--out", (dir / "e").string()});
    CHECK(r.status == kExitOk);
    fs::remove_all(dir);
}

TEST_CASE("errors are single machine-readable lines") {
    const auto dir = oracle::scratch_dir("err");
    auto r = invoke({"rates", "--family-json", "{not json", "--out", dir.string()});
    CHECK(r.status == kExitError);
    CHECK(r.err.rfind("error: ConfigInvalid:", 0) == 0);
    CHECK(lines(r.err) == 1);

    r = invoke({"recurse", "--family", "conjecture:3", "--n", "4", "--out", dir.string()});
    CHECK(r.status == kExitError);
    CHECK(r.err.rfind("error: BadN:", 0) == 0);

    r = invoke({"rates", "--bogus"});
    CHECK(r.status == kExitError);

    // a held lock makes a second run refuse the directory
    { std::ofstream(dir / ".gclt.lock") << ""; }
    r = invoke({"recurse", "--n", "2", "--out", dir.string()});
    CHECK(r.status == kExitError);
    CHECK(r.err.rfind("error: OutputBusy:", 0) == 0);
    fs::remove_all(dir);
}
