// SPDX-License-Identifier: MIT
/**
 * @file mollify.hpp
 * @brief Space–time mollification and Hölder audits of computed fields
 *
 * The kernel is ζ(t,x) = κ_t(t)·κ_x(x) with κ_x the normalised bump
 * exp(−1/(1−x²)) on (−1,1) and κ_t the same bump mapped onto (−1,0). With
 * ζ_ε(t,x) = ε⁻³ ζ(t/ε², x/ε), the smoothed field u^{(ε)} = u ∗ ζ_ε at time t
 * only looks at u on [t, t+ε²].
 *
 * None of this sits on the rate-experiment path; it exists to check the
 * regularity estimates on concrete surfaces.
 */
#pragma once

#include <functional>
#include <vector>

#include "gclt/field.hpp"

namespace gclt {

struct MollifierSpec {
    double epsilon = 0.1;

    /// ζ(t,x); zero outside (−1,0) × (−1,1).
    static double kernel(double t, double x) noexcept;
    /// ∫∫ζ by adaptive quadrature (≈ 1).
    static double kernel_mass();
    /// ∫∫ x ζ(t,x) dt dx, the constant shift picked up by linear functions of x.
    static double kernel_x_moment();
};

/// u on a uniform (t, x) grid with its declared regularity:
/// |u(t,x) − u(t,y)| ≤ |x − y|^β and |u(t,x) − u(s,x)| ≤ |t − s|^{β/2} + a.
struct SampledSurface {
    double t0 = 0.0;
    double dt = 0.0;
    double x0 = 0.0;
    double dx = 0.0;
    std::size_t nt = 0;
    std::size_t nx = 0;
    std::vector<double> values;  ///< row-major nt × nx
    double beta = 1.0;
    double slack_a = 0.0;

    double t(std::size_t i) const noexcept { return t0 + static_cast<double>(i) * dt; }
    double x(std::size_t j) const noexcept { return x0 + static_cast<double>(j) * dx; }
    double at(std::size_t i, std::size_t j) const noexcept { return values[i * nx + j]; }
    double& at(std::size_t i, std::size_t j) noexcept { return values[i * nx + j]; }

    /// Samples u on t ∈ [0, 1] (step ≤ dt_max) × [−L, L] (step ≤ dx_max).
    static SampledSurface sample(const std::function<double(double, double)>& u, double halfwidth,
                                 double dt_max, double dx_max, double beta, double slack_a);
};

/// Discrete convolution with ζ_ε; output on [0, 1−ε²] × [−L+ε, L−ε].
/// Throws ResolutionTooCoarse (dx > ε/16 or dt > ε²/16) and DomainTooSmall.
SampledSurface mollify(const SampledSurface& u, const MollifierSpec& spec);

struct HolderAudit {
    double spatial_excess = 0.0;   ///< worst |Δu| − bound over sampled x pairs
    double temporal_excess = 0.0;  ///< worst |Δu| − bound over sampled t pairs
    long pairs = 0;
    bool pass = true;
};

/// Audits the surface's declared hypotheses on sampled pairs.
HolderAudit audit_surface(const SampledSurface& u);

struct MollifierRow {
    double epsilon = 0.0;
    double bound = 0.0;     ///< 2ε^β + a
    double observed = 0.0;  ///< sup |u^{(ε)} − u|
    bool pass = false;
    double deriv_scaled = 0.0;       ///< ε⁴ sup(|∂²_t| + |D⁴| + |∂_t D²|) / (ε^β + a)
    double time_modulus_scaled = 0.0;   ///< ε² sup(|Δ_t ∂_t| + |Δ_t D²|) / (|t−s|^{β/2} + a)
    double space_modulus_scaled = 0.0;  ///< ε² sup(|Δ_x ∂_t| + |Δ_x D²|) / |x−y|^β
};

struct MollifierReport {
    std::vector<MollifierRow> rows;
    bool sup_bound_pass = false;
    bool scaling_pass = false;
    /// max/min across ε of each scaled quantity (1 when all vanish).
    double deriv_ratio = 1.0;
    double time_modulus_ratio = 1.0;
    double space_modulus_ratio = 1.0;
    bool pass = false;
};

/// Checks the explicit bound sup|u^{(ε)} − u| ≤ 2ε^β + a for each ε, and that
/// the ε-scaled derivative and modulus quantities stay within a factor 10 of
/// each other across `eps_list`. Throws HypothesisViolated when `u` fails its
/// declared regularity.
MollifierReport verify_mollifier_bounds(const SampledSurface& u, const std::vector<double>& eps_list);

struct RegularityReport {
    double spatial_excess = 0.0;
    double temporal_excess = 0.0;
    long spatial_pairs = 0;
    long temporal_pairs = 0;
    bool exhaustive = true;
    bool pass = true;
};

/// Rounding allowance added to `slack` when judging a regularity audit.
inline constexpr double kAuditRounding = 1e-12;

/**
 * Checks |v(t,x) − v(t,y)| ≤ |x − y|^β and |v(t,x) − v(s,x)| ≤ σ̄^β |t − s|^{β/2}
 * over the field's node pairs. All pairs are visited while the count stays
 * within `pair_budget`; beyond that, every lag up to 64 plus geometrically
 * spaced larger lags. Passes when the worst excess is ≤ slack + kAuditRounding.
 */
RegularityReport regularity_audit(const ValueField& field, double beta, double sigma_bar, double slack,
                                  long pair_budget = 20'000'000);

}  // namespace gclt
