// SPDX-License-Identifier: MIT
#include "gclt/theta.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "gclt/error.hpp"

namespace gclt {

namespace {

bool on_lattice(double x, double c) {
    return std::abs(x - c * std::round(x / c)) <= kMomentTol;
}

}  // namespace

DiscreteDist DiscreteDist::make(std::span<const double> support, std::span<const double> probs) {
    if (support.empty() || support.size() != probs.size()) {
        throw Error(ErrorCode::InvalidArgument,
                    "support and probs must have equal nonzero length");
    }
    std::vector<std::size_t> order(support.size());
    std::iota(order.begin(), order.end(), 0);
    for (std::size_t i = 0; i < support.size(); ++i) {
        if (!std::isfinite(support[i]) || !std::isfinite(probs[i])) {
            throw Error(ErrorCode::InvalidArgument, "non-finite support point or probability");
        }
        if (probs[i] < 0.0) {
            throw Error(ErrorCode::InvalidArgument, "negative probability");
        }
    }
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return support[a] < support[b]; });

    DiscreteDist d;
    d.support_.reserve(order.size());
    d.probs_.reserve(order.size());
    for (std::size_t i : order) {
        if (!d.support_.empty() && d.support_.back() == support[i]) {
            throw Error(ErrorCode::DuplicateSupport,
                        "support point " + std::to_string(support[i]) + " repeated");
        }
        d.support_.push_back(support[i]);
        d.probs_.push_back(probs[i]);
    }

    long double mass = 0.0L;
    long double mean = 0.0L;
    for (std::size_t i = 0; i < d.size(); ++i) {
        mass += d.probs_[i];
        mean += static_cast<long double>(d.probs_[i]) * d.support_[i];
    }
    if (std::abs(static_cast<double>(mass) - 1.0) > kMomentTol) {
        throw Error(ErrorCode::NonUnitMass,
                    "probabilities sum to " + std::to_string(static_cast<double>(mass)));
    }
    if (std::abs(static_cast<double>(mean)) > kMomentTol) {
        throw Error(ErrorCode::NonZeroMean,
                    "mean is " + std::to_string(static_cast<double>(mean)));
    }
    return d;
}

double DiscreteDist::max_abs_support() const noexcept {
    double m = 0.0;
    for (double s : support_) m = std::max(m, std::abs(s));
    return m;
}

DiscreteDist make_discrete(std::span<const double> support, std::span<const double> probs) {
    return DiscreteDist::make(support, probs);
}

double moment(const DiscreteDist& d, unsigned k, bool absolute) {
    long double acc = 0.0L;
    for (std::size_t i = 0; i < d.size(); ++i) {
        long double x = absolute ? std::abs(d.support()[i]) : d.support()[i];
        long double xk = 1.0L;
        for (unsigned j = 0; j < k; ++j) xk *= x;
        acc += d.probs()[i] * xk;
    }
    return static_cast<double>(acc);
}

double abs_moment(const DiscreteDist& d, double p) {
    long double acc = 0.0L;
    for (std::size_t i = 0; i < d.size(); ++i) {
        double x = std::abs(d.support()[i]);
        // 0^0 = 1 so that the zeroth moment is the total mass.
        acc += d.probs()[i] * (p == 0.0 ? 1.0L : std::pow(static_cast<long double>(x), p));
    }
    return static_cast<double>(acc);
}

DiscreteDist rademacher(double scale) {
    const double s[] = {-scale, scale};
    const double p[] = {0.5, 0.5};
    return make_discrete(s, p);
}

double ThetaFamily::max_abs_support() const noexcept {
    double m = 0.0;
    for (const auto& d : members_) m = std::max(m, d.max_abs_support());
    return m;
}

std::optional<double> detect_lattice_step(std::span<const DiscreteDist> members) {
    std::vector<double> scales;
    bool any_nonzero = false;
    for (const auto& d : members) {
        const auto& s = d.support();
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s[i] != 0.0) {
                scales.push_back(std::abs(s[i]));
                any_nonzero = true;
            }
            for (std::size_t j = i + 1; j < s.size(); ++j) scales.push_back(s[j] - s[i]);
        }
    }
    if (!any_nonzero) return 1.0;

    constexpr int kMaxDenominator = 64;
    constexpr double kMinStep = 1e-6;
    std::vector<double> candidates;
    candidates.push_back(1.0);
    for (double d : scales) {
        for (int q = 1; q <= kMaxDenominator; ++q) {
            double c = d / q;
            if (c <= 1.0 + kMomentTol && c >= kMinStep) candidates.push_back(std::min(c, 1.0));
        }
    }
    std::sort(candidates.begin(), candidates.end(), std::greater<>());

    for (double c : candidates) {
        bool ok = true;
        for (const auto& d : members) {
            for (double x : d.support()) {
                if (!on_lattice(x, c)) {
                    ok = false;
                    break;
                }
            }
            if (!ok) break;
        }
        if (ok) return c;
    }
    return std::nullopt;
}

ThetaFamily build_family(std::vector<DiscreteDist> members, double beta) {
    if (members.empty()) throw Error(ErrorCode::EmptyFamily, "family has no members");
    if (!((beta > 0.0 && beta <= 1.0) || beta == 2.0)) {
        throw Error(ErrorCode::InvalidArgument, "beta must be in (0,1] or equal 2");
    }
    ThetaFamily f;
    f.beta_ = beta;
    f.sigma_bar_ = 0.0;
    f.sigma_under_ = std::numeric_limits<double>::infinity();
    for (const auto& d : members) {
        double sd = std::sqrt(moment(d, 2, false));
        f.sigma_bar_ = std::max(f.sigma_bar_, sd);
        f.sigma_under_ = std::min(f.sigma_under_, sd);
        f.m_beta_ = std::max(f.m_beta_, abs_moment(d, 2.0 + beta));
    }
    f.lattice_step_ = detect_lattice_step(members);
    f.members_ = std::move(members);
    return f;
}

ThetaFamily conjecture_theta(long n) {
    if (n < 1) throw Error(ErrorCode::BadN, "n must be positive");
    const double p = 1.0 / std::sqrt(static_cast<double>(n));
    if (2.0 * p > 1.0) {
        throw Error(ErrorCode::BadN, "2 n^{-1/2} > 1 for n = " + std::to_string(n));
    }
    const double s[] = {-1.0, 0.0, 1.0};
    const double pr[] = {p, 1.0 - 2.0 * p, p};
    return build_family({make_discrete(s, pr)}, 2.0);
}

bool check_cubic_condition(const ThetaFamily& f) {
    return std::all_of(f.members().begin(), f.members().end(), [](const DiscreteDist& d) {
        return std::abs(moment(d, 3, false)) <= kMomentTol;
    });
}

}  // namespace gclt
