// SPDX-License-Identifier: MIT
#include "gclt/config.hpp"

#include <algorithm>
#include <set>

#include "gclt/error.hpp"

namespace gclt {

using nlohmann::json;

namespace {

[[noreturn]] void invalid(const std::string& msg) { throw Error(ErrorCode::ConfigInvalid, msg); }

const json& require(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) invalid(std::string("missing key '") + key + "'");
    return j.at(key);
}

std::vector<double> numbers(const json& j, const char* what) {
    if (!j.is_array()) invalid(std::string(what) + " must be an array of numbers");
    std::vector<double> out;
    for (const auto& v : j) {
        if (!v.is_number()) invalid(std::string(what) + " must contain numbers only");
        out.push_back(v.get<double>());
    }
    return out;
}

void check_keys(const json& j, const std::set<std::string>& allowed, const char* what) {
    for (const auto& [k, v] : j.items()) {
        if (!allowed.count(k)) invalid(std::string("unknown key '") + k + "' in " + what);
    }
}

}  // namespace

ThetaFamily family_from_json(const json& j) try {
    if (!j.is_object()) invalid("family must be a JSON object");
    check_keys(j, {"beta", "members"}, "family");
    const double beta = j.contains("beta") ? j.at("beta").get<double>() : 1.0;
    const json& members = require(j, "members");
    if (!members.is_array()) invalid("members must be an array");
    std::vector<DiscreteDist> dists;
    for (const auto& m : members) {
        if (!m.is_object()) invalid("each member must be an object");
        check_keys(m, {"support", "probs"}, "member");
        const auto s = numbers(require(m, "support"), "support");
        const auto p = numbers(require(m, "probs"), "probs");
        dists.push_back(make_discrete(s, p));
    }
    return build_family(std::move(dists), beta);
} catch (const json::exception& e) {
    invalid(std::string("family: ") + e.what());
}

json family_to_json(const ThetaFamily& f) {
    json members = json::array();
    for (const auto& d : f.members()) members.push_back({{"support", d.support()}, {"probs", d.probs()}});
    return {{"beta", f.beta()}, {"members", members}};
}

ThetaFamily builtin_family(const std::string& name) {
    if (name == "rademacher") return build_family({rademacher(1.0)}, 1.0);
    if (name == "rademacher_pair") return build_family({rademacher(1.0), rademacher(0.5)}, 1.0);
    if (name == "trinomial") {
        const double s[] = {-1.0, 0.0, 1.0};
        const double p[] = {0.25, 0.5, 0.25};
        return build_family({make_discrete(s, p)}, 2.0);
    }
    if (name == "skewed") {
        const double s[] = {-2.0, 1.0};
        const double p[] = {1.0 / 3.0, 2.0 / 3.0};
        return build_family({make_discrete(s, p)}, 1.0);
    }
    if (name.rfind("conjecture:", 0) == 0) {
        long n = 0;
        try {
            std::size_t used = 0;
            n = std::stol(name.substr(11), &used);
            if (used != name.size() - 11) invalid("bad n in '" + name + "'");
        } catch (const std::logic_error&) {
            invalid("bad n in '" + name + "'");
        }
        return conjecture_theta(n);
    }
    invalid("unknown family '" + name + "'");
}

PhiFunction phi_from_json(const json& j) {
    if (!j.is_object()) invalid("phi must be a JSON object");
    check_keys(j, {"phi", "beta", "knots", "value"}, "phi");
    const json& kind = require(j, "phi");
    if (!kind.is_string()) invalid("phi name must be a string");
    const std::string name = kind.get<std::string>();
    try {
        if (name == "abs") return PhiFunction::abs();
        if (name == "neg_abs") return PhiFunction::neg_abs();
        if (name == "cosine_scaled") return PhiFunction::cosine_scaled();
        if (name == "abs_pow") return PhiFunction::abs_pow(require(j, "beta").get<double>());
        if (name == "constant") return PhiFunction::constant(require(j, "value").get<double>());
        if (name == "piecewise_linear") {
            std::vector<std::pair<double, double>> knots;
            for (const auto& k : require(j, "knots")) {
                const auto xy = numbers(k, "knot");
                if (xy.size() != 2) invalid("each knot is [x, y]");
                knots.emplace_back(xy[0], xy[1]);
            }
            return PhiFunction::piecewise_linear(std::move(knots));
        }
    } catch (const json::exception& e) {
        invalid(std::string("phi: ") + e.what());
    }
    invalid("unknown phi '" + name + "'");
}

json phi_to_json(const PhiFunction& f) {
    switch (f.kind()) {
        case PhiKind::Abs: return {{"phi", "abs"}};
        case PhiKind::NegAbs: return {{"phi", "neg_abs"}};
        case PhiKind::CosineScaled: return {{"phi", "cosine_scaled"}};
        case PhiKind::AbsPow: return {{"phi", "abs_pow"}, {"beta", f.beta()}};
        case PhiKind::Constant: return {{"phi", "constant"}, {"value", f.constant_value()}};
        case PhiKind::PiecewiseLinear: {
            json knots = json::array();
            for (const auto& [x, y] : f.knots()) knots.push_back({x, y});
            return {{"phi", "piecewise_linear"}, {"knots", knots}};
        }
    }
    return {};
}

ThetaFamily RunConfig::resolve_family() const {
    return family_json ? family_from_json(*family_json) : builtin_family(family);
}

std::string RunConfig::family_id() const { return family_json ? std::string("inline") : family; }

json to_json(const RunConfig& c) {
    json j;
    j["schema_version"] = kConfigSchemaVersion;
    j["command"] = c.command;
    j["family"] = c.family;
    j["family_json"] = c.family_json ? *c.family_json : json(nullptr);
    j["phi"] = c.phi;
    j["ns"] = c.ns;
    j["n"] = c.n;
    j["sigma_under"] = c.sigma_under ? json(*c.sigma_under) : json(nullptr);
    j["sigma_bar"] = c.sigma_bar ? json(*c.sigma_bar) : json(nullptr);
    j["h"] = c.h;
    j["halfwidth"] = c.halfwidth;
    j["lambda"] = c.lambda;
    j["window"] = c.window;
    j["mode"] = c.mode;
    j["theorem"] = c.theorem;
    j["eps"] = c.eps;
    j["surface"] = c.surface;
    j["surface_beta"] = c.surface_beta;
    j["snapshots"] = c.snapshots;
    j["field_csv"] = c.field_csv;
    j["include_pde"] = c.include_pde;
    j["emit_svg"] = c.emit_svg;
    j["seed"] = c.seed;
    j["output_dir"] = c.output_dir;
    return j;
}

RunConfig run_config_from_json(const json& j) {
    if (!j.is_object()) invalid("config must be a JSON object");
    check_keys(j,
               {"schema_version", "command", "family", "family_json", "phi", "ns", "n", "sigma_under",
                "sigma_bar", "h", "halfwidth", "lambda", "window", "mode", "theorem", "eps", "surface",
                "surface_beta", "snapshots", "field_csv", "include_pde", "emit_svg", "seed", "output_dir"},
               "config");
    RunConfig c;
    try {
        if (j.contains("schema_version") && j.at("schema_version").get<int>() != kConfigSchemaVersion) {
            invalid("unsupported schema_version");
        }
        auto get = [&](const char* key, auto& dst) {
            if (j.contains(key) && !j.at(key).is_null()) j.at(key).get_to(dst);
        };
        get("command", c.command);
        get("family", c.family);
        if (j.contains("family_json") && !j.at("family_json").is_null()) c.family_json = j.at("family_json");
        get("phi", c.phi);
        get("ns", c.ns);
        get("n", c.n);
        if (j.contains("sigma_under") && !j.at("sigma_under").is_null()) c.sigma_under = j.at("sigma_under").get<double>();
        if (j.contains("sigma_bar") && !j.at("sigma_bar").is_null()) c.sigma_bar = j.at("sigma_bar").get<double>();
        get("h", c.h);
        get("halfwidth", c.halfwidth);
        get("lambda", c.lambda);
        get("window", c.window);
        get("mode", c.mode);
        get("theorem", c.theorem);
        get("eps", c.eps);
        get("surface", c.surface);
        get("surface_beta", c.surface_beta);
        get("snapshots", c.snapshots);
        get("field_csv", c.field_csv);
        get("include_pde", c.include_pde);
        get("emit_svg", c.emit_svg);
        get("seed", c.seed);
        get("output_dir", c.output_dir);
    } catch (const json::exception& e) {
        invalid(std::string("config: ") + e.what());
    }
    const std::set<std::string> modes{"auto", "lattice", "grid"};
    const std::set<std::string> theorems{"auto", "general", "improved"};
    const std::set<std::string> surfaces{"abs_pow", "vn"};
    if (!modes.count(c.mode)) invalid("mode must be auto, lattice or grid");
    if (!theorems.count(c.theorem)) invalid("theorem must be auto, general or improved");
    if (!surfaces.count(c.surface)) invalid("surface must be abs_pow or vn");
    return c;
}

}  // namespace gclt
