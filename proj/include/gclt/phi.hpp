// SPDX-License-Identifier: MIT
/**
 * @file phi.hpp
 * @brief Catalogue of terminal functions with certified Hölder regularity
 *
 * Every PhiFunction satisfies |φ(x) − φ(y)| ≤ |x − y|^β with constant exactly 1
 * for its declared β. Arbitrary user callables are deliberately not accepted.
 */
#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace gclt {

enum class PhiKind { Abs, AbsPow, NegAbs, CosineScaled, PiecewiseLinear, Constant };

class PhiFunction {
public:
    static PhiFunction abs();
    /// |x|^β, β ∈ (0,1].
    static PhiFunction abs_pow(double beta);
    static PhiFunction neg_abs();
    /// cos x; Lipschitz with constant 1.
    static PhiFunction cosine_scaled();
    /// Linear interpolation through strictly increasing knots, extended linearly
    /// with the end slopes. All slopes must satisfy |s| ≤ 1.
    static PhiFunction piecewise_linear(std::vector<std::pair<double, double>> knots);
    static PhiFunction constant(double value);

    double operator()(double x) const noexcept;

    PhiKind kind() const noexcept { return kind_; }
    double beta() const noexcept { return beta_; }
    bool convex() const noexcept { return convex_; }
    bool lipschitz() const noexcept { return beta_ == 1.0; }
    const std::vector<std::pair<double, double>>& knots() const noexcept { return knots_; }
    /// Slopes between consecutive knots (piecewise_linear only).
    const std::vector<double>& slopes() const noexcept { return slopes_; }
    double constant_value() const noexcept { return value_; }

    /// Points where φ fails to be smooth (empty for cos and constants).
    std::vector<double> kinks() const;

    /// Stable identifier, e.g. "abs", "abs_pow(0.5)".
    std::string name() const;

private:
    PhiFunction(PhiKind kind, double beta, bool convex) : kind_(kind), beta_(beta), convex_(convex) {}

    PhiKind kind_;
    double beta_;
    bool convex_;
    double value_ = 0.0;
    std::vector<std::pair<double, double>> knots_;
    std::vector<double> slopes_;
};

double eval_phi(const PhiFunction& f, double x) noexcept;

struct HolderAuditReport {
    double max_ratio = 0.0;
    double worst_x = 0.0;
    double worst_y = 0.0;
    bool pass = true;
};

/// Samples `num_pairs` pairs uniformly in [lo, hi] from `seed` and reports the
/// worst |φ(x) − φ(y)| / |x − y|^β. Passes when the worst ratio is ≤ 1 + 1e-9.
HolderAuditReport holder_audit(const PhiFunction& f, double beta, long num_pairs,
                               std::pair<double, double> range, std::uint64_t seed);

/// Midpoint-convexity audit on sampled pairs; returns the worst violation
/// φ((x+y)/2) − (φ(x)+φ(y))/2 (≤ 0 for convex φ).
double convexity_audit(const PhiFunction& f, long num_pairs, std::pair<double, double> range,
                       std::uint64_t seed);

/// Portable uniform variate in [0,1) from a 64-bit engine draw.
double unit_uniform(std::uint64_t bits) noexcept;

}  // namespace gclt
