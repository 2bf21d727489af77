// SPDX-License-Identifier: MIT
#include "gclt/rates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "gclt/error.hpp"
#include "gclt/gaussian.hpp"

namespace gclt {

std::string_view to_string(Verdict v) noexcept {
    switch (v) {
        case Verdict::Pass: return "pass";
        case Verdict::Fail: return "fail";
        case Verdict::Degenerate: return "degenerate";
        case Verdict::ReferenceLimited: return "reference-limited";
    }
    return "unknown";
}

std::string_view to_string(RateTheorem t) noexcept {
    switch (t) {
        case RateTheorem::Auto: return "auto";
        case RateTheorem::General: return "general";
        case RateTheorem::Improved: return "improved";
    }
    return "unknown";
}

LogLogFit fit_loglog(const std::vector<long>& ns, const std::vector<double>& errs) {
    if (ns.size() != errs.size()) throw Error(ErrorCode::InvalidArgument, "ns and errs differ in length");
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < ns.size(); ++i) {
        if (errs[i] > 0.0 && ns[i] > 0) {
            lx.push_back(std::log(static_cast<double>(ns[i])));
            ly.push_back(std::log(errs[i]));
        }
    }
    if (lx.size() < 3) throw Error(ErrorCode::TooFewPoints, "need at least 3 positive errors to fit");
    const double m = static_cast<double>(lx.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= m;
    my /= m;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    if (sxx == 0.0) throw Error(ErrorCode::TooFewPoints, "all n coincide");
    LogLogFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        const double r = ly[i] - (fit.intercept + fit.slope * lx[i]);
        ss += r * r;
    }
    fit.residual = std::sqrt(ss / m);
    fit.used = lx.size();
    return fit;
}

double theoretical_exponent(const ThetaFamily& f, const PhiFunction& phi, RateTheorem theorem,
                            RateTheorem* resolved) {
    const bool improved_ok = check_cubic_condition(f) && phi.lipschitz();
    RateTheorem use = theorem;
    if (use == RateTheorem::Auto) use = improved_ok ? RateTheorem::Improved : RateTheorem::General;
    if (use == RateTheorem::Improved && !improved_ok) {
        throw Error(ErrorCode::InvalidArgument,
                    "improved rate needs vanishing third moments and Lipschitz phi");
    }
    if (resolved) *resolved = use;
    if (use == RateTheorem::Improved) return 0.25;
    const double b = phi.beta();
    return b * b / (4.0 + 2.0 * b);
}

RateReport error_curve(const ThetaFamily& f, const PhiFunction& phi, std::vector<long> ns,
                       const RateOptions& opts) {
    if (ns.empty()) throw Error(ErrorCode::InvalidArgument, "empty n list");
    std::sort(ns.begin(), ns.end());
    if (ns.front() < 1 || std::adjacent_find(ns.begin(), ns.end()) != ns.end()) {
        throw Error(ErrorCode::InvalidArgument, "ns must be positive and distinct");
    }

    RateReport rep;
    rep.family_id = opts.family_id;
    rep.phi_id = phi.name();
    rep.theoretical_exponent = theoretical_exponent(f, phi, opts.theorem, &rep.theorem);

    GHeatProblem prob{f.sigma_under(), f.sigma_bar(), phi};
    double vref = 0.0;
    double vref_err = 0.0;
    if (f.sigma_under() == f.sigma_bar() && phi.convex()) {
        vref = convex_oracle(prob, 0.0);
        rep.reference_kind = "analytic";
    } else {
        const SchemeSpec spec = opts.scheme.value_or(default_scheme(prob));
        const RichardsonValue r = richardson_value(prob, spec);
        vref = r.value;
        vref_err = r.error_estimate;
        rep.reference_kind = "richardson";
    }

    for (long n : ns) {
        RatePoint p;
        p.n = n;
        p.vn = vn_origin(f, phi, n, opts.mode);
        p.vref = vref;
        p.vref_err = vref_err;
        p.err = std::abs(p.vn - vref);
        rep.points.push_back(p);
    }

    std::vector<double> errs;
    for (const auto& p : rep.points) errs.push_back(p.err);
    double min_positive = std::numeric_limits<double>::infinity();
    for (double e : errs) {
        if (e > 0.0) min_positive = std::min(min_positive, e);
    }
    rep.reference_limited = std::isfinite(min_positive) && vref_err > min_positive / 10.0;
    if (rep.reference_limited && opts.require_resolved) {
        throw Error(ErrorCode::ReferenceTooCoarse, "reference error bar exceeds a tenth of the smallest error");
    }

    const auto positive = std::count_if(errs.begin(), errs.end(), [](double e) { return e > 0.0; });
    if (positive >= 3) rep.fit = fit_loglog(ns, errs);

    if (!rep.fit) {
        rep.verdict = Verdict::Degenerate;
    } else if (rep.reference_limited) {
        rep.verdict = Verdict::ReferenceLimited;
    } else {
        const bool ok = rep.fit->slope <= -rep.theoretical_exponent + kSlopeTolerance &&
                        rep.fit->residual <= kResidualCap;
        rep.verdict = ok ? Verdict::Pass : Verdict::Fail;
    }
    return rep;
}

ConjectureReport conjecture_experiment(std::vector<long> ns) {
    std::sort(ns.begin(), ns.end());
    ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
    ConjectureReport rep;
    rep.target = 2.0 * std::numbers::inv_sqrtpi;
    const PhiFunction abs = PhiFunction::abs();
    for (long n : ns) {
        const ThetaFamily theta = conjecture_theta(n);
        const double scale = std::pow(static_cast<double>(n), 0.25);
        ConjectureRow row;
        row.n = n;
        row.scaled_continuous = scale * gaussian_abs_expectation(0.0, theta.sigma_bar());
        row.scaled_discrete = scale * vn_origin(theta, abs, n, DpMode::Lattice);
        rep.rows.push_back(row);
    }
    return rep;
}

}  // namespace gclt
