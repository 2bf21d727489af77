// SPDX-License-Identifier: MIT
// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fail.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "gclt/cli.hpp"
#include "gclt/config.hpp"
#include "gclt/dp.hpp"
#include "gclt/error.hpp"
#include "gclt/gaussian.hpp"
#include "gclt/mollify.hpp"
#include "gclt/pde.hpp"
#include "gclt/rates.hpp"
#include "oracles.hpp"

using namespace gclt;
namespace fs = std::filesystem;

namespace {

constexpr double kSqrt2OverPi = 0.7978845608028654;

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

Outcome brute_force_equivalence() {
    double worst = 0.0;
    const auto phi = PhiFunction::abs();
    for (const auto& d : {rademacher(), conjecture_theta(16).members()[0]}) {
        const auto f = build_family({d}, 1.0);
        for (int n = 1; n <= 10; ++n) {
            worst = std::max(worst, std::abs(vn_origin(f, phi, n, DpMode::Lattice) - oracle::brute_force_vn(d, phi, n)));
        }
    }
    return {worst <= 1e-10, fmt("max |dp - enumeration| = %.3g over n <= 10", worst)};
}

Outcome classical_value() {
    GHeatProblem p{1.0, 1.0, PhiFunction::abs()};
    const auto r = richardson_value(p, SchemeSpec::make(p, 1.0 / 400.0, 8.0));
    const double gap = std::abs(r.value - kSqrt2OverPi);
    return {gap <= 2e-3 && gap <= 3.0 * r.error_estimate,
            fmt("v(0,0) = %.10f, |gap| = %.3g, error estimate = %.3g", r.value, gap, r.error_estimate)};
}

std::string fit_text(const RateReport& rep) {
    if (!rep.fit) return "no fit";
    return fmt("slope %.4f (need <= %.4f), residual %.4f, reference %s", rep.fit->slope,
               -rep.theoretical_exponent + kSlopeTolerance, rep.fit->residual, rep.reference_kind.c_str());
}

Outcome improved_rate() {
    RateOptions o;
    o.theorem = RateTheorem::Improved;
    o.family_id = "rademacher";
    const auto rep =
        error_curve(builtin_family("rademacher"), PhiFunction::abs(), {4, 16, 64, 256, 1024, 4096}, o);
    const bool ok = rep.fit && rep.reference_kind == "analytic" && rep.theoretical_exponent == 0.25 &&
                    rep.fit->slope <= -0.25 + kSlopeTolerance && rep.fit->residual <= kResidualCap;
    return {ok, fit_text(rep)};
}

Outcome general_rate() {
    RateOptions o;
    o.theorem = RateTheorem::General;
    o.family_id = "rademacher_pair";
    const auto rep =
        error_curve(builtin_family("rademacher_pair"), PhiFunction::abs(), {4, 16, 64, 256, 1024, 4096}, o);
    const double bar = rep.points.back().vref_err;
    const double e_max = rep.points.back().err;
    const bool ok = rep.fit && rep.reference_kind == "richardson" && bar <= e_max / 10.0 &&
                    std::abs(rep.theoretical_exponent - 1.0 / 6.0) < 1e-15 &&
                    rep.fit->slope <= -1.0 / 6.0 + kSlopeTolerance;
    return {ok, fit_text(rep) + fmt(", bar %.3g vs e(4096)/10 = %.3g", bar, e_max / 10.0)};
}

Outcome conjecture_table() {
    const auto rep = conjecture_experiment({16, 64, 256, 1024, 4096, 16384});
    double cont_gap = 0.0;
    for (const auto& r : rep.rows) cont_gap = std::max(cont_gap, std::abs(r.scaled_continuous - 1.1283791671));
    double disc_gap = 0.0;
    for (long n = 4; n <= 10; ++n) {
        const auto theta = conjecture_theta(n);
        const double scale = std::pow(static_cast<double>(n), 0.25);
        const double dp = scale * vn_origin(theta, PhiFunction::abs(), n, DpMode::Lattice);
        disc_gap = std::max(disc_gap, std::abs(dp - scale * oracle::brute_force_vn(theta.members()[0],
                                                                                 PhiFunction::abs(), static_cast<int>(n))));
    }
    std::string table;
    for (const auto& r : rep.rows) table += fmt(" [%ld: %.10f, %.10f]", r.n, r.scaled_continuous, r.scaled_discrete);
    const bool ok = rep.rows.size() == 6 && cont_gap <= 1e-10 && disc_gap <= 1e-12;
    return {ok, fmt("continuous gap %.2g, discrete vs enumeration %.2g; table", cont_gap, disc_gap) + table};
}

Outcome regularity_suites() {
    bool ok = true;
    std::string detail;
    const auto f = builtin_family("rademacher");
    for (long n : {8L, 32L, 128L}) {
        DpOptions o;
        o.mode = DpMode::Lattice;
        o.window = 2.0;
        const auto r = regularity_audit(solve_vn(f, PhiFunction::abs(), n, o), 1.0, f.sigma_bar(), 0.0);
        ok = ok && r.pass;
        detail += fmt("n=%ld %s; ", n, r.pass ? "ok" : "FAIL");
    }
    for (double su : {1.0, 0.5}) {
        GHeatProblem p{su, 1.0, PhiFunction::abs()};
        const auto spec = default_scheme(p);
        const auto rv = richardson_value(p, spec);
        const auto r = regularity_audit(solve_gheat(p, spec, {8, 2.0}), 1.0, 1.0, 2.0 * rv.error_estimate);
        ok = ok && r.pass;
        detail += fmt("pde su=%.1f %s (slack %.2g); ", su, r.pass ? "ok" : "FAIL", 2.0 * rv.error_estimate);
    }
    return {ok, detail};
}

Outcome mollifier_suite() {
    bool ok = true;
    std::string detail;
    for (double beta : {0.5, 1.0}) {
        const double e = 0.05;
        const auto u = SampledSurface::sample(
            [beta](double, double x) { return std::pow(std::abs(x), beta); }, 2.0, e * e / 16.0, e / 16.0, beta, 0.0);
        const auto rep = verify_mollifier_bounds(u, {0.2, 0.1, 0.05});
        ok = ok && rep.sup_bound_pass && rep.scaling_pass;
        double slack = 1e9;
        for (const auto& r : rep.rows) slack = std::min(slack, r.bound - r.observed);
        detail += fmt("beta=%.1f sup %s (min margin %.3g), ratios %.2f/%.2f/%.2f; ", beta,
                      rep.sup_bound_pass ? "ok" : "FAIL", slack, rep.deriv_ratio, rep.time_modulus_ratio,
                      rep.space_modulus_ratio);
    }
    return {ok, detail};
}

Outcome monotonicity() {
    std::mt19937_64 rng(20261015);
    const PhiFunction phis[] = {PhiFunction::abs(), PhiFunction::neg_abs(), PhiFunction::cosine_scaled(),
                                PhiFunction::abs_pow(0.5)};
    int dp_bad = 0;
    for (int i = 0; i < 100; ++i) {
        std::vector<DiscreteDist> small;
        const int k = 1 + static_cast<int>(rng() % 2);
        for (int j = 0; j < k; ++j) small.push_back(oracle::random_law(rng));
        auto big = small;
        big.push_back(oracle::random_law(rng));
        const long n = 1 + static_cast<long>(rng() % 12);
        const auto& phi = phis[rng() % 4];
        if (vn_origin(build_family(big, 1.0), phi, n) < vn_origin(build_family(small, 1.0), phi, n) - 1e-14) ++dp_bad;
    }
    int pde_bad = 0;
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        const auto [lo, hi] = oracle::random_ordered_pair(rng);
        const double sb = 0.2 + 0.8 * u(rng);
        const double su = sb * u(rng);
        GHeatProblem a{su, sb, lo}, b{su, sb, hi};
        const auto spec = SchemeSpec::make(a, 1.0 / 50.0, 4.0);
        const auto fa = solve_gheat(a, spec, {4, -1.0});
        const auto fb = solve_gheat(b, spec, {4, -1.0});
        for (std::size_t j = 0; j < fa.values.size(); ++j) {
            if (fa.values[j] > fb.values[j] + 1e-12) {
                ++pde_bad;
                break;
            }
        }
    }
    return {dp_bad == 0 && pde_bad == 0,
            fmt("family enlargement violations %d/100, comparison violations %d/100", dp_bad, pde_bad)};
}

int quiet_run(const std::vector<std::string>& args, const fs::path& out) {
    std::vector<std::string> full{"gclt"};
    full.insert(full.end(), args.begin(), args.end());
    full.push_back("--out");
    full.push_back(out.string());
    std::vector<const char*> argv;
    for (const auto& a : full) argv.push_back(a.c_str());
    std::ostringstream sink;
    return cli_main(static_cast<int>(argv.size()), argv.data(), sink, sink);
}

Outcome determinism() {
    struct Case {
        std::vector<std::string> args;
        std::vector<std::string> files;
    };
    const std::vector<Case> cases{
        {{"rates", "--family", "rademacher", "--theorem", "improved", "--ns", "4,16,64,256,1024,4096"},
         {"rates.csv", "rates_summary.csv"}},
        {{"rates", "--family", "rademacher_pair", "--theorem", "general", "--ns", "4,16,64,256,1024,4096"},
         {"rates.csv", "rates_summary.csv"}},
        {{"conjecture", "--ns", "16,64,256,1024,4096,16384"}, {"conjecture.csv"}},
    };
    const auto root = oracle::scratch_dir("determinism");
    int compared = 0, differing = 0, failed_runs = 0;
    for (std::size_t i = 0; i < cases.size(); ++i) {
        const auto a = root / fmt("case%zu-a", i), b = root / fmt("case%zu-b", i);
        if (quiet_run(cases[i].args, a) != kExitOk || quiet_run(cases[i].args, b) != kExitOk) {
            ++failed_runs;
            continue;
        }
        for (const auto& f : cases[i].files) {
            ++compared;
            const auto x = oracle::slurp(a / f), y = oracle::slurp(b / f);
            if (x.empty() || x != y) ++differing;
        }
    }
    fs::remove_all(root);
    return {failed_runs == 0 && differing == 0 && compared == 5,
            fmt("%d CSV pairs compared, %d differ, %d runs failed", compared, differing, failed_runs)};
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        double budget_s;
        std::function<Outcome()> check;
    };
    const Criterion criteria[] = {
        {"brute-force equivalence", 60, brute_force_equivalence},
        {"classical degenerate value", 60, classical_value},
        {"improved rate n^-1/4", 300, improved_rate},
        {"general rate n^-1/6", 600, general_rate},
        {"conjecture table", 600, conjecture_table},
        {"hoelder suites", 600, regularity_suites},
        {"mollifier suite", 120, mollifier_suite},
        {"monotonicity properties", 600, monotonicity},
        {"determinism", 1200, determinism},
    };
    int failures = 0;
    int index = 0;
    for (const auto& c : criteria) {
        ++index;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.check();
        } catch (const Error& e) {
            o = {false, std::string("error ") + std::string(to_string(e.code())) + ": " + e.what()};
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool pass = o.pass && secs <= c.budget_s;
        if (!pass) ++failures;
        std::printf("criterion %d: %s  %s -- %s [%.1fs / %.0fs]\n", index, pass ? "PASS" : "FAIL", c.name,
                    o.detail.c_str(), secs, c.budget_s);
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
