// SPDX-License-Identifier: MIT
#include "gclt/cli.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <CLI11.hpp>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gclt/dp.hpp"
#include "gclt/error.hpp"
#include "gclt/mollify.hpp"
#include "gclt/pde.hpp"
#include "gclt/rates.hpp"
#include "gclt/report_io.hpp"

namespace gclt {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

/// Exclusive marker file; one run per output directory at a time.
class OutputLock {
public:
    explicit OutputLock(fs::path dir) : path_(std::move(dir) / ".gclt.lock") {
        fd_ = ::open(path_.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
        if (fd_ < 0) {
            throw Error(ErrorCode::OutputBusy, "output directory is locked by " + path_.string());
        }
    }
    ~OutputLock() {
        ::close(fd_);
        std::error_code ec;
        fs::remove(path_, ec);
    }
    OutputLock(const OutputLock&) = delete;
    OutputLock& operator=(const OutputLock&) = delete;

private:
    fs::path path_;
    int fd_ = -1;
};

std::string num(double v) { return format_number(v); }
std::string num(long v) { return std::to_string(v); }

DpMode parse_mode(const std::string& m) {
    if (m == "lattice") return DpMode::Lattice;
    if (m == "grid") return DpMode::Grid;
    return DpMode::Auto;
}

RateTheorem parse_theorem(const std::string& t) {
    if (t == "general") return RateTheorem::General;
    if (t == "improved") return RateTheorem::Improved;
    return RateTheorem::Auto;
}

struct Outputs {
    fs::path dir;
    std::vector<std::string> files;

    void csv(const std::string& name, const CsvWriter& w) {
        w.save(dir / name);
        files.push_back(name);
    }
    void text(const std::string& name, const std::string& body) {
        write_text(dir / name, body);
        files.push_back(name);
    }
};

std::vector<long> default_ns(const std::string& command) {
    if (command == "conjecture") return {16, 64, 256, 1024, 4096, 16384};
    return {4, 16, 64, 256, 1024, 4096};
}

int cmd_value(const RunConfig& c, Outputs& o, std::ostream& out) {
    const PhiFunction phi = phi_from_json(c.phi);
    GHeatProblem prob;
    if (c.sigma_bar) {
        prob.sigma_bar = *c.sigma_bar;
        prob.sigma_under = c.sigma_under.value_or(*c.sigma_bar);
    } else {
        const ThetaFamily f = c.resolve_family();
        prob.sigma_bar = f.sigma_bar();
        prob.sigma_under = c.sigma_under.value_or(f.sigma_under());
    }
    prob.phi = phi;
    const double halfwidth = c.halfwidth > 0.0 ? c.halfwidth : std::max(1.0, 8.0 * prob.sigma_bar);
    const SchemeSpec spec = SchemeSpec::make(prob, c.h, halfwidth, c.lambda);
    const RichardsonValue r = richardson_value(prob, spec);

    CsvWriter w({"sigma_under", "sigma_bar", "phi", "h", "halfwidth", "value", "error_estimate"});
    w.row({num(prob.sigma_under), num(prob.sigma_bar), phi.name(), num(spec.h), num(spec.halfwidth), num(r.value),
           num(r.error_estimate)});
    o.csv("value.csv", w);

    if (c.field_csv) {
        GHeatOptions fo;
        fo.snapshots = c.snapshots;
        fo.window = c.window > 0.0 ? c.window : -1.0;
        const ValueField field = solve_gheat(prob, spec, fo);
        CsvWriter fw({"t", "x", "v"});
        for (std::size_t k = 0; k < field.rows(); ++k) {
            for (std::size_t i = 0; i < field.cols(); ++i) {
                fw.row({num(field.times[k]), num(field.x[i]), num(field.at(k, i))});
            }
        }
        o.csv("field.csv", fw);
    }
    out << "v(0,0) = " << num(r.value) << " +/- " << num(r.error_estimate) << "\n";
    return kExitOk;
}

int cmd_recurse(const RunConfig& c, Outputs& o, std::ostream& out) {
    const ThetaFamily f = c.resolve_family();
    const PhiFunction phi = phi_from_json(c.phi);
    DpOptions opts;
    opts.mode = parse_mode(c.mode);
    opts.window = c.window;
    const ValueField field = solve_vn(f, phi, c.n, opts);

    CsvWriter w({"k", "x", "value"});
    for (std::size_t k = 0; k < field.rows(); ++k) {
        for (std::size_t i = 0; i < field.cols(); ++i) {
            w.row({std::to_string(k), num(field.x[i]), num(field.at(k, i))});
        }
    }
    o.csv("levels.csv", w);
    CsvWriter s({"n", "mode", "vn_origin"});
    s.row({num(c.n), field.mode == FieldMode::Lattice ? "lattice" : "grid", num(field.value_at_origin())});
    o.csv("summary.csv", s);
    out << "v_n(0,0) = " << num(field.value_at_origin()) << " (n = " << c.n << ")\n";
    return kExitOk;
}

int cmd_rates(const RunConfig& c, Outputs& o, std::ostream& out) {
    const ThetaFamily f = c.resolve_family();
    const PhiFunction phi = phi_from_json(c.phi);
    RateOptions opts;
    opts.theorem = parse_theorem(c.theorem);
    opts.mode = parse_mode(c.mode);
    opts.family_id = c.family_id();
    GHeatProblem prob{f.sigma_under(), f.sigma_bar(), phi};
    const double halfwidth = c.halfwidth > 0.0 ? c.halfwidth : std::max(1.0, 8.0 * prob.sigma_bar);
    opts.scheme = SchemeSpec::make(prob, c.h, halfwidth, c.lambda);
    const RateReport rep = error_curve(f, phi, c.ns.empty() ? default_ns(c.command) : c.ns, opts);

    CsvWriter w({"n", "vn", "vref", "vref_err", "err"});
    for (const auto& p : rep.points) w.row({num(p.n), num(p.vn), num(p.vref), num(p.vref_err), num(p.err)});
    o.csv("rates.csv", w);

    CsvWriter s({"family", "phi", "theorem", "exponent", "slope", "intercept", "residual", "reference",
                 "reference_limited", "verdict"});
    const std::string na = "nan";
    s.row({rep.family_id, rep.phi_id, std::string(to_string(rep.theorem)), num(rep.theoretical_exponent),
           rep.fit ? num(rep.fit->slope) : na, rep.fit ? num(rep.fit->intercept) : na,
           rep.fit ? num(rep.fit->residual) : na, rep.reference_kind, rep.reference_limited ? "true" : "false",
           std::string(to_string(rep.verdict))});
    o.csv("rates_summary.csv", s);

    if (c.emit_svg) {
        SvgSeries errs{"|v - v_n|", "#1f77b4", {}, {}, false};
        for (const auto& p : rep.points) {
            errs.x.push_back(static_cast<double>(p.n));
            errs.y.push_back(p.err);
        }
        std::vector<SvgSeries> series{errs};
        if (rep.fit) {
            SvgSeries fit{"fitted slope " + num(rep.fit->slope), "#d62728", {}, {}, true};
            SvgSeries theory{"n^-" + num(rep.theoretical_exponent), "#2ca02c", {}, {}, true};
            const double n0 = static_cast<double>(rep.points.front().n);
            const double c0 = std::exp(rep.fit->intercept) * std::pow(n0, rep.fit->slope);
            for (const auto& p : rep.points) {
                const double n = static_cast<double>(p.n);
                fit.x.push_back(n);
                fit.y.push_back(std::exp(rep.fit->intercept) * std::pow(n, rep.fit->slope));
                theory.x.push_back(n);
                theory.y.push_back(c0 * std::pow(n / n0, -rep.theoretical_exponent));
            }
            series.push_back(fit);
            series.push_back(theory);
        }
        o.text("rates.svg", render_svg_chart("error vs n (" + rep.family_id + ", " + rep.phi_id + ")", series,
                                             true, true));
    }

    if (rep.fit) {
        out << "slope = " << num(rep.fit->slope) << ", residual = " << num(rep.fit->residual)
            << ", exponent = " << num(rep.theoretical_exponent) << ", verdict = " << to_string(rep.verdict) << "\n";
    } else {
        out << "verdict = " << to_string(rep.verdict) << "\n";
    }
    return rep.verdict == Verdict::Fail ? kExitVerdictFailed : kExitOk;
}

int cmd_conjecture(const RunConfig& c, Outputs& o, std::ostream& out) {
    const ConjectureReport rep = conjecture_experiment(c.ns.empty() ? default_ns(c.command) : c.ns);
    CsvWriter w({"n", "scaled_vn_continuous", "scaled_vn_discrete"});
    for (const auto& r : rep.rows) w.row({num(r.n), num(r.scaled_continuous), num(r.scaled_discrete)});
    o.csv("conjecture.csv", w);
    if (c.emit_svg) {
        SvgSeries cont{"n^(1/4) v^n(0,0)", "#2ca02c", {}, {}, true};
        SvgSeries disc{"n^(1/4) v_n^n(0,0)", "#1f77b4", {}, {}, false};
        for (const auto& r : rep.rows) {
            cont.x.push_back(static_cast<double>(r.n));
            cont.y.push_back(r.scaled_continuous);
            disc.x.push_back(static_cast<double>(r.n));
            disc.y.push_back(r.scaled_discrete);
        }
        o.text("conjecture.svg", render_svg_chart("scaled values vs n", {cont, disc}, true, false));
    }
    out << "E|w| for w ~ N(0,2) = " << num(rep.target) << "\n";
    for (const auto& r : rep.rows) {
        out << "n = " << r.n << ": continuous " << num(r.scaled_continuous) << ", discrete "
            << num(r.scaled_discrete) << "\n";
    }
    if (rep.rows.size() >= 2) {
        const double first = rep.rows.front().scaled_discrete, last = rep.rows.back().scaled_discrete;
        out << "observed: discrete column " << (last < first ? "decreases" : "does not decrease") << " from "
            << num(first) << " to " << num(last) << "\n";
    }
    out << "conjectured limit of the discrete column: 0 (reported, not asserted)\n";
    return kExitOk;
}

int cmd_regularity(const RunConfig& c, Outputs& o, std::ostream& out) {
    const ThetaFamily f = c.resolve_family();
    const PhiFunction phi = phi_from_json(c.phi);
    const double window = c.window > 0.0 ? c.window : 2.0;
    bool all_pass = true;
    CsvWriter w({"source", "n", "slack", "spatial_excess", "temporal_excess", "spatial_pairs", "temporal_pairs",
                 "exhaustive", "pass"});
    auto record = [&](const std::string& source, long n, double slack, const RegularityReport& r) {
        w.row({source, num(n), num(slack), num(r.spatial_excess), num(r.temporal_excess), num(r.spatial_pairs),
               num(r.temporal_pairs), r.exhaustive ? "true" : "false", r.pass ? "pass" : "fail"});
        all_pass = all_pass && r.pass;
        out << source << " n=" << n << ": " << (r.pass ? "pass" : "fail") << "\n";
    };

    const std::vector<long> ns = c.ns.empty() ? std::vector<long>{c.n} : c.ns;
    for (long n : ns) {
        DpOptions opts;
        opts.mode = parse_mode(c.mode);
        opts.window = window;
        const ValueField field = solve_vn(f, phi, n, opts);
        const double slack = field.mode == FieldMode::Lattice ? 0.0 : 2.0 * field.h;
        record(field.mode == FieldMode::Lattice ? "dp-lattice" : "dp-grid", n, slack,
               regularity_audit(field, phi.beta(), f.sigma_bar(), slack));
    }
    if (c.include_pde) {
        GHeatProblem prob{f.sigma_under(), f.sigma_bar(), phi};
        const double halfwidth = c.halfwidth > 0.0 ? c.halfwidth : std::max(1.0, 8.0 * prob.sigma_bar);
        const SchemeSpec spec = SchemeSpec::make(prob, c.h, halfwidth, c.lambda);
        const RichardsonValue rv = richardson_value(prob, spec);
        GHeatOptions go;
        go.snapshots = c.snapshots;
        go.window = window;
        const ValueField field = solve_gheat(prob, spec, go);
        const double slack = 2.0 * rv.error_estimate;
        record("pde", 0, slack, regularity_audit(field, phi.beta(), f.sigma_bar(), slack));
    }
    o.csv("regularity.csv", w);
    return all_pass ? kExitOk : kExitVerdictFailed;
}

int cmd_mollify(const RunConfig& c, Outputs& o, std::ostream& out) {
    if (c.eps.empty()) throw Error(ErrorCode::ConfigInvalid, "eps list is empty");
    const double eps_min = *std::min_element(c.eps.begin(), c.eps.end());
    const double halfwidth = c.halfwidth > 0.0 ? c.halfwidth : 2.0;
    SampledSurface surface;
    if (c.surface == "abs_pow") {
        const PhiFunction phi = PhiFunction::abs_pow(c.surface_beta);
        surface = SampledSurface::sample([&](double, double x) { return phi(x); }, halfwidth, eps_min * eps_min / 16.0,
                                         eps_min / 16.0, c.surface_beta, 0.0);
    } else {
        const ThetaFamily f = c.resolve_family();
        const PhiFunction phi = phi_from_json(c.phi);
        DpOptions opts;
        opts.mode = parse_mode(c.mode);
        opts.window = halfwidth;
        const ValueField field = solve_vn(f, phi, c.n, opts);
        const double a = std::pow(static_cast<double>(c.n), -phi.beta() / 2.0);
        surface = SampledSurface::sample([&](double t, double x) { return vn_at(field, t, x); }, halfwidth,
                                         eps_min * eps_min / 16.0, eps_min / 16.0, phi.beta(), a);
    }
    const MollifierReport rep = verify_mollifier_bounds(surface, c.eps);

    CsvWriter w({"eps", "bound", "observed", "pass"});
    CsvWriter s({"eps", "deriv_scaled", "time_modulus_scaled", "space_modulus_scaled"});
    for (const auto& r : rep.rows) {
        w.row({num(r.epsilon), num(r.bound), num(r.observed), r.pass ? "pass" : "fail"});
        s.row({num(r.epsilon), num(r.deriv_scaled), num(r.time_modulus_scaled), num(r.space_modulus_scaled)});
    }
    o.csv("mollify.csv", w);
    o.csv("mollify_scaling.csv", s);
    out << "sup bound: " << (rep.sup_bound_pass ? "pass" : "fail") << ", scaling ratios "
        << num(rep.deriv_ratio) << " / " << num(rep.time_modulus_ratio) << " / " << num(rep.space_modulus_ratio)
        << ": " << (rep.scaling_pass ? "pass" : "fail") << "\n";
    return rep.pass ? kExitOk : kExitVerdictFailed;
}

std::string one_line(std::string s) {
    for (char& ch : s) {
        if (ch == '\n' || ch == '\r') ch = ' ';
    }
    return s;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        RunConfig c = config;
        if (c.output_dir.empty()) {
            const char* root = std::getenv(kOutputRootEnv);
            c.output_dir = (fs::path(root && *root ? root : "runs") / c.command).string();
        }
        using Handler = int (*)(const RunConfig&, Outputs&, std::ostream&);
        Handler handler = nullptr;
        if (c.command == "value") handler = &cmd_value;
        else if (c.command == "recurse") handler = &cmd_recurse;
        else if (c.command == "rates") handler = &cmd_rates;
        else if (c.command == "conjecture") handler = &cmd_conjecture;
        else if (c.command == "regularity") handler = &cmd_regularity;
        else if (c.command == "mollify-check") handler = &cmd_mollify;
        else throw Error(ErrorCode::ConfigInvalid, "unknown command '" + c.command + "'");

        // Validate the phi and family selections before touching the filesystem.
        (void)phi_from_json(c.phi);
        if (c.family_json) (void)family_from_json(*c.family_json);

        std::error_code ec;
        fs::create_directories(c.output_dir, ec);
        if (ec) throw Error(ErrorCode::IoError, "cannot create " + c.output_dir + ": " + ec.message());
        OutputLock lock(c.output_dir);

        Outputs o{c.output_dir, {}};
        o.text("config.json", to_json(c).dump(2) + "\n");
        const int status = handler(c, o, out);
        json manifest = {{"schema_version", kConfigSchemaVersion},
                         {"command", c.command},
                         {"exit_status", status},
                         {"files", o.files}};
        write_text(o.dir / "manifest.json", manifest.dump(2) + "\n");
        return status;
    } catch (const Error& e) {
        err << "error: " << to_string(e.code()) << ": " << one_line(e.what()) << "\n";
        return kExitError;
    } catch (const std::exception& e) {
        err << "error: " << to_string(ErrorCode::InvalidArgument) << ": " << one_line(e.what()) << "\n";
        return kExitError;
    }
}

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Sublinear CLT laboratory: v_n by recursion, v by the G-heat equation, rates between them"};
    app.set_help_flag("--help", "Print help and exit");
    app.require_subcommand(1);

    RunConfig c;
    std::string family_json_text;
    std::string family_file;
    std::string config_file;
    std::string phi_name = "abs";
    std::optional<double> phi_beta;
    std::optional<double> phi_value;
    std::string phi_knots;
    std::string phi_json_text;
    double sigma_under = -1.0;
    double sigma_bar = -1.0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--out", c.output_dir, "Output directory (default $GCLT_OUTPUT_ROOT/<command>)");
        sub->add_option("--family", c.family, "Built-in family: rademacher, rademacher_pair, trinomial, skewed, conjecture:<n>");
        sub->add_option("--family-json", family_json_text, "Inline family JSON");
        sub->add_option("--family-file", family_file, "Family JSON file");
        sub->add_option("--phi", phi_name, "abs, abs_pow, neg_abs, cosine_scaled, piecewise_linear, constant");
        sub->add_option("--phi-beta", phi_beta, "Exponent for abs_pow");
        sub->add_option("--phi-value", phi_value, "Value for constant");
        sub->add_option("--phi-knots", phi_knots, "Knots for piecewise_linear as x:y,x:y,...");
        sub->add_option("--phi-json", phi_json_text, "Inline phi JSON");
        sub->add_option("--mode", c.mode, "Recursion mode: auto, lattice, grid");
        sub->add_option("--h", c.h, "PDE space step");
        sub->add_option("--L", c.halfwidth, "PDE / surface half-width (0 = default)");
        sub->add_option("--lambda", c.lambda, "CFL target");
        sub->add_option("--window", c.window, "Half-width of stored x window");
        sub->add_flag("--svg", c.emit_svg, "Also write an SVG chart");
    };

    auto* value = app.add_subcommand("value", "v(0,0) of the G-heat equation with a Richardson error bar");
    add_common(value);
    value->add_option("--sigma-under", sigma_under, "Lower volatility");
    value->add_option("--sigma-bar", sigma_bar, "Upper volatility");
    value->add_flag("--field-csv", c.field_csv, "Write field.csv (t, x, v)");
    value->add_option("--snapshots", c.snapshots, "Interior time rows in field.csv");

    auto* recurse = app.add_subcommand("recurse", "v_n by backward recursion, per-level CSV");
    add_common(recurse);
    recurse->add_option("--n", c.n, "Number of steps")->required();

    auto* rates = app.add_subcommand("rates", "Error curve and log-log slope");
    add_common(rates);
    rates->add_option("--ns", c.ns, "Comma separated n values")->delimiter(',');
    rates->add_option("--theorem", c.theorem, "auto, general or improved");

    auto* conjecture = app.add_subcommand("conjecture", "Scaled values for the n-dependent trinomial law");
    add_common(conjecture);
    conjecture->add_option("--ns", c.ns, "Comma separated n values (>= 4)")->delimiter(',');

    auto* regularity = app.add_subcommand("regularity", "Hoelder audits of computed fields");
    add_common(regularity);
    regularity->add_option("--n", c.n, "Number of steps");
    regularity->add_option("--ns", c.ns, "Comma separated n values")->delimiter(',');
    regularity->add_flag("--pde", c.include_pde, "Also audit the PDE field");
    regularity->add_option("--snapshots", c.snapshots, "Interior PDE time rows");

    auto* mollify = app.add_subcommand("mollify-check", "Mollifier estimates on a sampled surface");
    add_common(mollify);
    mollify->add_option("--surface", c.surface, "abs_pow or vn");
    mollify->add_option("--beta", c.surface_beta, "Exponent of the abs_pow surface");
    mollify->add_option("--eps", c.eps, "Comma separated epsilons")->delimiter(',');
    mollify->add_option("--n", c.n, "Steps for the vn surface");

    auto* from_file = app.add_subcommand("run", "Run a saved config.json");
    from_file->add_option("--config", config_file, "Config file")->required();
    from_file->add_option("--out", c.output_dir, "Override the saved output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << to_string(ErrorCode::ConfigInvalid) << ": " << one_line(e.what()) << "\n";
        return kExitError;
    }

    try {
        if (from_file->parsed()) {
            std::ifstream in(config_file);
            if (!in) throw Error(ErrorCode::ConfigInvalid, "cannot read " + config_file);
            json j;
            try {
                j = json::parse(in);
            } catch (const json::exception& e) {
                throw Error(ErrorCode::ConfigInvalid, std::string("config file: ") + e.what());
            }
            RunConfig loaded = run_config_from_json(j);
            if (!c.output_dir.empty()) loaded.output_dir = c.output_dir;
            return run(loaded, out, err);
        }
        c.command = app.get_subcommands().front()->get_name();

        auto parse_json = [](const std::string& text, const char* what) {
            try {
                return json::parse(text);
            } catch (const json::exception& e) {
                throw Error(ErrorCode::ConfigInvalid, std::string(what) + ": " + e.what());
            }
        };
        if (!family_json_text.empty()) c.family_json = parse_json(family_json_text, "family JSON");
        if (!family_file.empty()) {
            std::ifstream in(family_file);
            if (!in) throw Error(ErrorCode::ConfigInvalid, "cannot read " + family_file);
            std::stringstream ss;
            ss << in.rdbuf();
            c.family_json = parse_json(ss.str(), "family file");
        }
        if (!phi_json_text.empty()) {
            c.phi = parse_json(phi_json_text, "phi JSON");
        } else {
            c.phi = json{{"phi", phi_name}};
            if (phi_beta) c.phi["beta"] = *phi_beta;
            if (phi_value) c.phi["value"] = *phi_value;
            if (!phi_knots.empty()) {
                json knots = json::array();
                std::stringstream ss(phi_knots);
                std::string item;
                while (std::getline(ss, item, ',')) {
                    const auto colon = item.find(':');
                    if (colon == std::string::npos) throw Error(ErrorCode::ConfigInvalid, "knot must be x:y");
                    try {
                        knots.push_back({std::stod(item.substr(0, colon)), std::stod(item.substr(colon + 1))});
                    } catch (const std::logic_error&) {
                        throw Error(ErrorCode::ConfigInvalid, "bad knot '" + item + "'");
                    }
                }
                c.phi["knots"] = knots;
            }
        }
        if (sigma_bar >= 0.0) c.sigma_bar = sigma_bar;
        if (sigma_under >= 0.0) c.sigma_under = sigma_under;
        // Round-trip through the schema so CLI and file runs validate identically.
        return run(run_config_from_json(to_json(c)), out, err);
    } catch (const Error& e) {
        err << "error: " << to_string(e.code()) << ": " << one_line(e.what()) << "\n";
        return kExitError;
    }
}

}  // namespace gclt
