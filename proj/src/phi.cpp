// SPDX-License-Identifier: MIT
#include "gclt/phi.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>

#include "gclt/error.hpp"

namespace gclt {

PhiFunction PhiFunction::abs() { return PhiFunction(PhiKind::Abs, 1.0, true); }

PhiFunction PhiFunction::abs_pow(double beta) {
    if (!(beta > 0.0 && beta <= 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "abs_pow exponent must lie in (0,1]");
    }
    // |x|^β is convex only for β = 1.
    return PhiFunction(PhiKind::AbsPow, beta, beta == 1.0);
}

PhiFunction PhiFunction::neg_abs() { return PhiFunction(PhiKind::NegAbs, 1.0, false); }

PhiFunction PhiFunction::cosine_scaled() { return PhiFunction(PhiKind::CosineScaled, 1.0, false); }

PhiFunction PhiFunction::piecewise_linear(std::vector<std::pair<double, double>> knots) {
    if (knots.empty()) throw Error(ErrorCode::InvalidArgument, "piecewise_linear needs knots");
    PhiFunction f(PhiKind::PiecewiseLinear, 1.0, true);
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
        const double dx = knots[i + 1].first - knots[i].first;
        if (!(dx > 0.0)) {
            throw Error(ErrorCode::InvalidArgument, "piecewise_linear knots must strictly increase");
        }
        const double s = (knots[i + 1].second - knots[i].second) / dx;
        if (std::abs(s) > 1.0 + 1e-12) {
            throw Error(ErrorCode::InvalidArgument, "piecewise_linear slope exceeds 1 in magnitude");
        }
        f.slopes_.push_back(std::clamp(s, -1.0, 1.0));
    }
    if (f.slopes_.empty()) f.slopes_.push_back(0.0);
    for (std::size_t i = 0; i + 1 < f.slopes_.size(); ++i) {
        if (f.slopes_[i + 1] < f.slopes_[i]) f.convex_ = false;
    }
    f.knots_ = std::move(knots);
    return f;
}

PhiFunction PhiFunction::constant(double value) {
    PhiFunction f(PhiKind::Constant, 1.0, true);
    f.value_ = value;
    return f;
}

double PhiFunction::operator()(double x) const noexcept {
    switch (kind_) {
        case PhiKind::Abs: return std::abs(x);
        case PhiKind::AbsPow: return beta_ == 1.0 ? std::abs(x) : std::pow(std::abs(x), beta_);
        case PhiKind::NegAbs: return -std::abs(x);
        case PhiKind::CosineScaled: return std::cos(x);
        case PhiKind::Constant: return value_;
        case PhiKind::PiecewiseLinear: {
            if (knots_.size() == 1) return knots_.front().second;
            if (x <= knots_.front().first) {
                return knots_.front().second + slopes_.front() * (x - knots_.front().first);
            }
            if (x >= knots_.back().first) {
                return knots_.back().second + slopes_.back() * (x - knots_.back().first);
            }
            auto it = std::upper_bound(knots_.begin(), knots_.end(), x,
                                       [](double v, const auto& k) { return v < k.first; });
            const std::size_t i = static_cast<std::size_t>(it - knots_.begin()) - 1;
            return knots_[i].second + slopes_[i] * (x - knots_[i].first);
        }
    }
    return 0.0;
}

std::vector<double> PhiFunction::kinks() const {
    switch (kind_) {
        case PhiKind::Abs:
        case PhiKind::AbsPow:
        case PhiKind::NegAbs: return {0.0};
        case PhiKind::PiecewiseLinear: {
            std::vector<double> k;
            for (const auto& [x, y] : knots_) k.push_back(x);
            return k;
        }
        default: return {};
    }
}

std::string PhiFunction::name() const {
    char buf[64];
    switch (kind_) {
        case PhiKind::Abs: return "abs";
        case PhiKind::AbsPow: std::snprintf(buf, sizeof buf, "abs_pow(%.17g)", beta_); return buf;
        case PhiKind::NegAbs: return "neg_abs";
        case PhiKind::CosineScaled: return "cosine_scaled";
        case PhiKind::PiecewiseLinear: return "piecewise_linear(" + std::to_string(knots_.size()) + ")";
        case PhiKind::Constant: std::snprintf(buf, sizeof buf, "constant(%.17g)", value_); return buf;
    }
    return "unknown";
}

double eval_phi(const PhiFunction& f, double x) noexcept { return f(x); }

double unit_uniform(std::uint64_t bits) noexcept {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

HolderAuditReport holder_audit(const PhiFunction& f, double beta, long num_pairs,
                               std::pair<double, double> range, std::uint64_t seed) {
    if (num_pairs < 1) throw Error(ErrorCode::InvalidArgument, "num_pairs must be >= 1");
    std::mt19937_64 rng(seed);
    const auto [lo, hi] = range;
    HolderAuditReport rep;
    for (long i = 0; i < num_pairs; ++i) {
        const double x = lo + (hi - lo) * unit_uniform(rng());
        const double y = lo + (hi - lo) * unit_uniform(rng());
        if (x == y) continue;
        const double r = std::abs(f(x) - f(y)) / std::pow(std::abs(x - y), beta);
        if (r > rep.max_ratio) {
            rep.max_ratio = r;
            rep.worst_x = x;
            rep.worst_y = y;
        }
    }
    rep.pass = rep.max_ratio <= 1.0 + 1e-9;
    return rep;
}

double convexity_audit(const PhiFunction& f, long num_pairs, std::pair<double, double> range,
                       std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const auto [lo, hi] = range;
    double worst = -std::numeric_limits<double>::infinity();
    for (long i = 0; i < num_pairs; ++i) {
        const double x = lo + (hi - lo) * unit_uniform(rng());
        const double y = lo + (hi - lo) * unit_uniform(rng());
        worst = std::max(worst, f(0.5 * (x + y)) - 0.5 * (f(x) + f(y)));
    }
    return worst;
}

}  // namespace gclt
