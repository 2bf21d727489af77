// SPDX-License-Identifier: MIT
/**
 * @file dp.hpp
 * @brief Backward sup-expectation recursion for v_n
 *
 *   v_n(1, x)   = φ(x)
 *   v_n(k/n, x) = max over ξ ∈ Θ of E v_n((k+1)/n, x + ξ/√n),   k = n−1 … 0
 *
 * Two execution modes:
 *  - Lattice: when every support point lies on cℤ, the reachable points are
 *    exactly (c/√n)ℤ and each expectation is an exact finite sum of table
 *    lookups. Level k is computed on the cone |j| ≤ W + Rk, where R is the
 *    largest support offset in lattice units and W the requested window.
 *  - Grid: a uniform grid with linear interpolation between nodes; off-grid
 *    arguments fall back to φ itself.
 */
#pragma once

#include <optional>
#include <vector>

#include "gclt/field.hpp"
#include "gclt/phi.hpp"
#include "gclt/theta.hpp"

namespace gclt {

enum class DpMode { Auto, Lattice, Grid };

/// Values on the uniform points x0 + i·h, i = 0..size−1.
struct Slice {
    double x0 = 0.0;
    double h = 1.0;
    std::vector<double> values;

    double x(std::size_t i) const noexcept { return x0 + static_cast<double>(i) * h; }
};

/**
 * One-law expectation E slice(x + ξ/√n) at every output point.
 *
 * Lattice mode requires each ξ/√n to be an integer multiple of `slice.h`
 * (ModeMismatch otherwise); the result drops R = max|offset| points on each side.
 * Grid mode returns a slice of the same shape; arguments that leave the slice
 * are evaluated with `outside` (required in grid mode).
 */
Slice step_expectation(const Slice& slice, const DiscreteDist& d, long n, DpMode mode,
                       const PhiFunction* outside = nullptr);

struct DpOptions {
    DpMode mode = DpMode::Auto;
    /// Half-width of the x window kept in the returned field (0 keeps x = 0 only).
    double window = 0.0;
    /// Grid mode spacing; defaults to 1/n.
    std::optional<double> grid_step;
    /// Grid mode half-width; defaults to window + 8σ̄ and may not be smaller.
    std::optional<double> grid_halfwidth;
};

/// Full field of v_n on times k/n and the requested x window.
/// Throws ModeMismatch (lattice requested without a lattice step),
/// GridTooSmall, InvalidArgument.
ValueField solve_vn(const ThetaFamily& f, const PhiFunction& phi, long n, const DpOptions& opts = {});

/// v_n(0, 0) only; same as solve_vn(...).value_at_origin() with a zero window.
double vn_origin(const ThetaFamily& f, const PhiFunction& phi, long n, DpMode mode = DpMode::Auto);

/// Level used for time t: floor(t·n), with t = k/n mapping to level k and t = 1 to level n.
long time_level(double t, long n);

/// Piecewise-constant-in-time extension of a dp field; linear interpolation in x.
/// Throws OutOfHull when x leaves the stored window or t ∉ [0,1].
double vn_at(const ValueField& field, double t, double x);

}  // namespace gclt
