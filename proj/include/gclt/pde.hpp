// SPDX-License-Identifier: MIT
/**
 * @file pde.hpp
 * @brief Control value v(t,x) via a monotone explicit scheme for the G-heat equation
 *
 *   ∂_t v + ½ max_{σ ∈ [σ̲, σ̄]} σ² D²v = 0,   v(1, ·) = φ
 *
 * The maximum of σ ↦ σ²p over an interval sits at an endpoint: σ̄ when p ≥ 0,
 * σ̲ when p < 0. The scheme marches backward from t = 1 with the centred second
 * difference and is monotone whenever λ = τσ̄²/h² ≤ 1. Boundary nodes stay at φ.
 */
#pragma once

#include <cstdint>
#include <vector>

#include "gclt/field.hpp"
#include "gclt/phi.hpp"

namespace gclt {

struct GHeatProblem {
    double sigma_under = 0.0;
    double sigma_bar = 0.0;
    PhiFunction phi = PhiFunction::abs();

    /// Throws InvalidArgument unless 0 ≤ σ̲ ≤ σ̄ < ∞.
    void validate() const;
};

struct SchemeSpec {
    double h = 1.0 / 400.0;
    double tau = 0.0;
    double halfwidth = 8.0;
    long steps = 0;        ///< number of time steps, steps·τ = 1
    double lambda = 1.0;   ///< CFL target used to pick τ

    double cfl(double sigma_bar) const noexcept { return tau * sigma_bar * sigma_bar / (h * h); }

    /// τ = 1/ceil(σ̄²/(λh²)) so that the CFL ratio is at most λ.
    static SchemeSpec make(const GHeatProblem& prob, double h, double halfwidth, double lambda = 1.0);
};

/// h = 1/400, L = 8σ̄ (at least 1), λ = 1.
SchemeSpec default_scheme(const GHeatProblem& prob);

/// ½ max over σ ∈ {σ̲, σ̄} of σ²·p.
double barenblatt_rhs(double second_diff, double sigma_under, double sigma_bar) noexcept;

struct GHeatOptions {
    /// Time rows kept besides t = 0 and t = 1 (evenly spaced in steps).
    int snapshots = 0;
    /// Half-width of the stored x window; negative keeps the whole grid.
    double window = -1.0;
};

/// Throws CFLViolated, DegenerateGrid, InvalidArgument.
ValueField solve_gheat(const GHeatProblem& prob, const SchemeSpec& spec, const GHeatOptions& opts = {});

/// For convex φ the supremum is attained by the constant control σ̄, so
/// v(0,x) = E φ(x + σ̄W₁). Closed forms for abs, constants and convex
/// piecewise-linear φ; 128-node Gauss–Hermite otherwise. Throws NotConvex.
double convex_oracle(const GHeatProblem& prob, double x);

/// Piecewise-constant volatility control on [0,1].
struct ControlPath {
    enum class Rule { Deterministic, FeedbackSign };

    Rule rule = Rule::Deterministic;
    std::vector<double> breakpoints;  ///< 0 = t₀ < t₁ < … < t_K = 1
    std::vector<double> sigma;        ///< per interval (Deterministic)
    double sigma_nonneg = 0.0;        ///< used while the state is ≥ 0 (FeedbackSign)
    double sigma_neg = 0.0;           ///< used while the state is < 0 (FeedbackSign)

    static ControlPath constant(double sigma, int intervals = 64);
    static ControlPath feedback_sign(double sigma_nonneg, double sigma_neg, int intervals = 64);

    /// Throws InvalidArgument unless every σ lies in [σ̲, σ̄] and the partition is valid.
    void validate(double sigma_under, double sigma_bar) const;
};

struct McEstimate {
    double estimate = 0.0;
    double std_error = 0.0;
};

/// Sample mean of φ(x₁) under `ctrl` started from (0, 0). Any admissible control
/// gives a lower bound on v(0,0) up to sampling error.
McEstimate mc_lower_bound(const GHeatProblem& prob, const ControlPath& ctrl, long paths, std::uint64_t seed);

struct RichardsonValue {
    double value = 0.0;           ///< fine-grid v(0,0)
    double error_estimate = 0.0;  ///< |fine − coarse|
    double coarse_value = 0.0;
};

/// Solves at (h, τ) and (h/2, ≈τ/4) with the same CFL target.
RichardsonValue richardson_value(const GHeatProblem& prob, const SchemeSpec& base);

}  // namespace gclt
