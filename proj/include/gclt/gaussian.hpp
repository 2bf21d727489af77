// SPDX-License-Identifier: MIT
/**
 * @file gaussian.hpp
 * @brief Gaussian expectations used as analytic and quadrature oracles
 */
#pragma once

#include <functional>

#include "gclt/phi.hpp"

namespace gclt {

double normal_cdf(double z) noexcept;
double normal_pdf(double z) noexcept;

/// E|x + σW| = σ√(2/π)·exp(−x²/(2σ²)) + x·(1 − 2N(−x/σ)).
double gaussian_abs_expectation(double x, double sigma) noexcept;

/// E(x + σW − k)⁺.
double gaussian_hinge_expectation(double x, double sigma, double k) noexcept;

/// E f(mean + sd·W) by `nodes`-point Gauss–Hermite quadrature.
double gauss_hermite_expectation(const std::function<double(double)>& f, double mean, double sd,
                                 int nodes = 128);

/// E φ(mean + sd·W) by adaptive quadrature on [−12, 12] standard deviations
/// with breakpoints at φ's kinks. Accurate to ~1e-12 for every catalogue φ.
double gaussian_expectation(const PhiFunction& phi, double mean, double sd);

}  // namespace gclt
