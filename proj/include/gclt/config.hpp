// SPDX-License-Identifier: MIT
/**
 * @file config.hpp
 * @brief JSON configuration: families, terminal functions and run settings
 *
 * Family:   {"beta": 1.0, "members": [{"support": [-1, 1], "probs": [0.5, 0.5]}]}
 * Phi:      {"phi": "abs_pow", "beta": 0.5}
 *           {"phi": "piecewise_linear", "knots": [[-1, 1], [0, 0], [1, 1]]}
 *           {"phi": "constant", "value": 2.0}
 */
#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gclt/phi.hpp"
#include "gclt/theta.hpp"

namespace gclt {

inline constexpr int kConfigSchemaVersion = 1;

/// Throws ConfigInvalid on schema errors; theta errors pass through.
ThetaFamily family_from_json(const nlohmann::json& j);
nlohmann::json family_to_json(const ThetaFamily& f);

/// rademacher | rademacher_pair | trinomial | skewed | conjecture:<n>
ThetaFamily builtin_family(const std::string& name);

PhiFunction phi_from_json(const nlohmann::json& j);
nlohmann::json phi_to_json(const PhiFunction& f);

/// Everything a CLI run depends on. Serialised next to the outputs so a run can
/// be repeated from its own directory.
struct RunConfig {
    std::string command;
    std::string family = "rademacher";           ///< built-in name, ignored when family_json is set
    std::optional<nlohmann::json> family_json;   ///< inline family
    nlohmann::json phi = {{"phi", "abs"}};
    std::vector<long> ns;
    long n = 8;
    std::optional<double> sigma_under;
    std::optional<double> sigma_bar;
    double h = 1.0 / 400.0;
    double halfwidth = 0.0;  ///< 0 selects the default (8σ̄, at least 1)
    double lambda = 1.0;
    double window = 0.0;
    std::string mode = "auto";     ///< auto | lattice | grid
    std::string theorem = "auto";  ///< auto | general | improved
    std::vector<double> eps = {0.2, 0.1, 0.05};
    std::string surface = "abs_pow";  ///< abs_pow | vn
    double surface_beta = 1.0;
    int snapshots = 8;
    bool field_csv = false;
    bool include_pde = false;
    bool emit_svg = false;
    std::uint64_t seed = 1;
    std::string output_dir;

    /// Family selected by `family_json` or `family`.
    ThetaFamily resolve_family() const;
    /// Identifier written into reports.
    std::string family_id() const;
};

nlohmann::json to_json(const RunConfig& c);
/// Throws ConfigInvalid for unknown keys, wrong types or bad enumerations.
RunConfig run_config_from_json(const nlohmann::json& j);

}  // namespace gclt
