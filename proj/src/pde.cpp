// SPDX-License-Identifier: MIT
#include "gclt/pde.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "gclt/error.hpp"
#include "gclt/gaussian.hpp"

namespace gclt {

void GHeatProblem::validate() const {
    if (!(sigma_under >= 0.0 && sigma_under <= sigma_bar && std::isfinite(sigma_bar))) {
        throw Error(ErrorCode::InvalidArgument, "need 0 <= sigma_under <= sigma_bar < inf");
    }
}

SchemeSpec SchemeSpec::make(const GHeatProblem& prob, double h, double halfwidth, double lambda) {
    prob.validate();
    if (!(h > 0.0) || !(halfwidth > 0.0) || !(lambda > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "h, halfwidth and lambda must be positive");
    }
    SchemeSpec s;
    s.h = h;
    s.halfwidth = halfwidth;
    s.lambda = lambda;
    const double sb2 = prob.sigma_bar * prob.sigma_bar;
    s.steps = sb2 > 0.0 ? static_cast<long>(std::ceil(sb2 / (lambda * h * h) - 1e-9)) : 1;
    s.steps = std::max(s.steps, 1L);
    s.tau = 1.0 / static_cast<double>(s.steps);
    return s;
}

SchemeSpec default_scheme(const GHeatProblem& prob) {
    return SchemeSpec::make(prob, 1.0 / 400.0, std::max(1.0, 8.0 * prob.sigma_bar), 1.0);
}

double barenblatt_rhs(double second_diff, double sigma_under, double sigma_bar) noexcept {
    const double p = second_diff;
    return 0.5 * std::max(sigma_bar * sigma_bar * p, sigma_under * sigma_under * p);
}

ValueField solve_gheat(const GHeatProblem& prob, const SchemeSpec& spec, const GHeatOptions& opts) {
    prob.validate();
    if (!(spec.h > 0.0) || !(spec.tau > 0.0) || spec.steps < 1) {
        throw Error(ErrorCode::InvalidArgument, "scheme spec not initialised");
    }
    if (spec.cfl(prob.sigma_bar) > 1.0 + 1e-12) {
        throw Error(ErrorCode::CFLViolated,
                    "tau*sigma_bar^2/h^2 = " + std::to_string(spec.cfl(prob.sigma_bar)) + " > 1");
    }
    const long half = static_cast<long>(std::ceil(spec.halfwidth / spec.h - 1e-9));
    if (2 * half - 1 < 3) throw Error(ErrorCode::DegenerateGrid, "fewer than 3 interior nodes");
    const long nodes = 2 * half + 1;
    const long w = opts.window < 0.0 ? half
                                     : std::min(half, static_cast<long>(std::ceil(opts.window / spec.h - 1e-9)));

    // Steps (counted backward from t = 1) at which a row is recorded.
    std::vector<long> record{0};
    const int extra = std::max(0, opts.snapshots);
    for (int m = 1; m <= extra; ++m) {
        const long s = static_cast<long>(std::llround(static_cast<double>(m) * spec.steps / (extra + 1)));
        if (s > record.back() && s < spec.steps) record.push_back(s);
    }
    record.push_back(spec.steps);

    ValueField field;
    field.n = 0;
    field.mode = FieldMode::Pde;
    field.h = spec.h;
    for (auto it = record.rbegin(); it != record.rend(); ++it) {
        field.times.push_back(*it == spec.steps ? 0.0 : 1.0 - static_cast<double>(*it) * spec.tau);
    }
    for (long j = -w; j <= w; ++j) field.x.push_back(static_cast<double>(j) * spec.h);
    field.values.assign(field.rows() * field.cols(), 0.0);

    std::vector<double> u(static_cast<std::size_t>(nodes));
    std::vector<double> un(u.size());
    for (long j = 0; j < nodes; ++j) u[j] = prob.phi(static_cast<double>(j - half) * spec.h);
    un.front() = u.front();
    un.back() = u.back();

    auto store = [&](std::size_t row) {
        for (long j = -w; j <= w; ++j) field.at(row, static_cast<std::size_t>(j + w)) = u[j + half];
    };
    std::size_t next_record = 1;
    store(field.rows() - 1);

    // u(t−τ) = u(t) + τ·½ max(σ̄²Δu, σ̲²Δu) with Δu = δ²u/h².
    const double a_bar = 0.5 * spec.tau * prob.sigma_bar * prob.sigma_bar / (spec.h * spec.h);
    const double a_under = 0.5 * spec.tau * prob.sigma_under * prob.sigma_under / (spec.h * spec.h);
    for (long step = 1; step <= spec.steps; ++step) {
        const double* cur = u.data();
        double* out = un.data();
        for (long j = 1; j < nodes - 1; ++j) {
            const double d = cur[j + 1] - 2.0 * cur[j] + cur[j - 1];
            out[j] = cur[j] + std::max(a_bar * d, a_under * d);
        }
        u.swap(un);
        if (next_record < record.size() && record[next_record] == step) {
            store(field.rows() - 1 - next_record);
            ++next_record;
        }
    }
    return field;
}

double convex_oracle(const GHeatProblem& prob, double x) {
    prob.validate();
    const PhiFunction& phi = prob.phi;
    if (!phi.convex()) throw Error(ErrorCode::NotConvex, phi.name() + " is not flagged convex");
    const double s = prob.sigma_bar;
    switch (phi.kind()) {
        case PhiKind::Constant: return phi.constant_value();
        case PhiKind::Abs:
        case PhiKind::AbsPow: return gaussian_abs_expectation(x, s);
        case PhiKind::PiecewiseLinear: {
            const auto& k = phi.knots();
            const auto& sl = phi.slopes();
            if (k.size() == 1) return k.front().second;
            // φ(y) = y₀ + s₀(y − k₀) + Σ (sᵢ − sᵢ₋₁)(y − kᵢ)⁺ over interior knots.
            long double acc = k.front().second + sl.front() * (x - k.front().first);
            for (std::size_t i = 1; i + 1 < k.size(); ++i) {
                acc += (sl[i] - sl[i - 1]) * gaussian_hinge_expectation(x, s, k[i].first);
            }
            return static_cast<double>(acc);
        }
        default: return gauss_hermite_expectation([&](double y) { return phi(y); }, x, s, 128);
    }
}

ControlPath ControlPath::constant(double sigma, int intervals) {
    ControlPath c;
    c.rule = Rule::Deterministic;
    for (int i = 0; i <= intervals; ++i) c.breakpoints.push_back(static_cast<double>(i) / intervals);
    c.sigma.assign(static_cast<std::size_t>(intervals), sigma);
    return c;
}

ControlPath ControlPath::feedback_sign(double sigma_nonneg, double sigma_neg, int intervals) {
    ControlPath c;
    c.rule = Rule::FeedbackSign;
    for (int i = 0; i <= intervals; ++i) c.breakpoints.push_back(static_cast<double>(i) / intervals);
    c.sigma_nonneg = sigma_nonneg;
    c.sigma_neg = sigma_neg;
    return c;
}

void ControlPath::validate(double sigma_under, double sigma_bar) const {
    if (breakpoints.size() < 2 || breakpoints.front() != 0.0 || breakpoints.back() != 1.0) {
        throw Error(ErrorCode::InvalidArgument, "control partition must run from 0 to 1");
    }
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        if (!(breakpoints[i + 1] > breakpoints[i])) {
            throw Error(ErrorCode::InvalidArgument, "control partition must increase");
        }
    }
    auto admissible = [&](double s) { return s >= sigma_under && s <= sigma_bar; };
    if (rule == Rule::Deterministic) {
        if (sigma.size() + 1 != breakpoints.size()) {
            throw Error(ErrorCode::InvalidArgument, "one sigma per control interval required");
        }
        if (!std::all_of(sigma.begin(), sigma.end(), admissible)) {
            throw Error(ErrorCode::InvalidArgument, "control leaves [sigma_under, sigma_bar]");
        }
    } else if (!admissible(sigma_nonneg) || !admissible(sigma_neg)) {
        throw Error(ErrorCode::InvalidArgument, "control leaves [sigma_under, sigma_bar]");
    }
}

McEstimate mc_lower_bound(const GHeatProblem& prob, const ControlPath& ctrl, long paths, std::uint64_t seed) {
    prob.validate();
    ctrl.validate(prob.sigma_under, prob.sigma_bar);
    if (paths < 1) throw Error(ErrorCode::InvalidArgument, "paths must be >= 1");

    std::vector<double> root_dt;
    for (std::size_t i = 0; i + 1 < ctrl.breakpoints.size(); ++i) {
        root_dt.push_back(std::sqrt(ctrl.breakpoints[i + 1] - ctrl.breakpoints[i]));
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    // Welford running mean / variance.
    double mean = 0.0;
    double m2 = 0.0;
    for (long p = 0; p < paths; ++p) {
        double x = 0.0;
        for (std::size_t k = 0; k < root_dt.size(); ++k) {
            const double s = ctrl.rule == ControlPath::Rule::Deterministic
                                 ? ctrl.sigma[k]
                                 : (x >= 0.0 ? ctrl.sigma_nonneg : ctrl.sigma_neg);
            x += s * root_dt[k] * gauss(rng);
        }
        const double y = prob.phi(x);
        const double delta = y - mean;
        mean += delta / static_cast<double>(p + 1);
        m2 += delta * (y - mean);
    }
    McEstimate est;
    est.estimate = mean;
    est.std_error = paths > 1 ? std::sqrt(m2 / static_cast<double>(paths - 1) / static_cast<double>(paths)) : 0.0;
    return est;
}

RichardsonValue richardson_value(const GHeatProblem& prob, const SchemeSpec& base) {
    const SchemeSpec fine = SchemeSpec::make(prob, base.h / 2.0, base.halfwidth, base.lambda);
    GHeatOptions origin_only;
    origin_only.window = 0.0;
    RichardsonValue r;
    r.coarse_value = solve_gheat(prob, base, origin_only).value_at_origin();
    r.value = solve_gheat(prob, fine, origin_only).value_at_origin();
    r.error_estimate = std::abs(r.value - r.coarse_value);
    return r;
}

}  // namespace gclt
