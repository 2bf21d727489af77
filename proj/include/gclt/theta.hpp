// SPDX-License-Identifier: MIT
/**
 * @file theta.hpp
 * @brief Finitely supported zero-mean laws and families of them
 *
 * A family Θ is the set of step laws over which the sup-expectation recursion
 * maximizes. Only finite supports are admitted, which makes every expectation
 * an exact finite sum.
 */
#pragma once

#include <optional>
#include <span>
#include <vector>

namespace gclt {

/// Absolute tolerance used for mass, mean and lattice checks.
inline constexpr double kMomentTol = 1e-12;

/// A validated zero-mean law with finite support, stored in ascending support order.
class DiscreteDist {
public:
    /// Validates and sorts. Throws NonUnitMass, NonZeroMean, DuplicateSupport or
    /// InvalidArgument (length mismatch, negative or non-finite entries).
    static DiscreteDist make(std::span<const double> support, std::span<const double> probs);

    const std::vector<double>& support() const noexcept { return support_; }
    const std::vector<double>& probs() const noexcept { return probs_; }
    std::size_t size() const noexcept { return support_.size(); }

    double max_abs_support() const noexcept;

private:
    DiscreteDist() = default;
    std::vector<double> support_;
    std::vector<double> probs_;
};

DiscreteDist make_discrete(std::span<const double> support, std::span<const double> probs);

/// Σ pᵢ xᵢᵏ, or Σ pᵢ |xᵢ|ᵏ when `absolute` is set. Summed in ascending support order.
double moment(const DiscreteDist& d, unsigned k, bool absolute);

/// Σ pᵢ |xᵢ|^p for a real order p ≥ 0.
double abs_moment(const DiscreteDist& d, double p);

/// Rademacher law scaled to ±scale.
DiscreteDist rademacher(double scale = 1.0);

class ThetaFamily {
public:
    const std::vector<DiscreteDist>& members() const noexcept { return members_; }
    double beta() const noexcept { return beta_; }
    double sigma_bar() const noexcept { return sigma_bar_; }
    double sigma_under() const noexcept { return sigma_under_; }
    /// max over members of E|ξ|^{2+β}
    double m_beta() const noexcept { return m_beta_; }
    /// Common step c with every support point in cℤ, when one was found.
    std::optional<double> lattice_step() const noexcept { return lattice_step_; }
    double max_abs_support() const noexcept;

    friend ThetaFamily build_family(std::vector<DiscreteDist> members, double beta);

private:
    std::vector<DiscreteDist> members_;
    double beta_ = 1.0;
    double sigma_bar_ = 0.0;
    double sigma_under_ = 0.0;
    double m_beta_ = 0.0;
    std::optional<double> lattice_step_;
};

/// beta must lie in (0,1] or equal 2. Throws EmptyFamily / InvalidArgument.
ThetaFamily build_family(std::vector<DiscreteDist> members, double beta);

/// Largest c ≤ 1 among candidates d/q (d a support magnitude or pairwise gap,
/// q = 1..64) such that every point lies on cℤ; nullopt when none does.
std::optional<double> detect_lattice_step(std::span<const DiscreteDist> members);

/// Singleton family {ξ} with P(ξ=±1) = n^{-1/2}, P(ξ=0) = 1 − 2n^{-1/2}; beta = 2.
/// Throws BadN when 2n^{-1/2} > 1.
ThetaFamily conjecture_theta(long n);

/// True iff every member has vanishing third moment (fourth moments are always
/// finite for finite support).
bool check_cubic_condition(const ThetaFamily& f);

}  // namespace gclt
