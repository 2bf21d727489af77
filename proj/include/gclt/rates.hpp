// SPDX-License-Identifier: MIT
/**
 * @file rates.hpp
 * @brief Convergence experiments |v(0,0) − v_n(0,0)| against n
 *
 * Two proven exponents are available: β²/(4+2β) in general, and 1/4 when φ is
 * Lipschitz and every law in Θ has vanishing third moment. A report passes
 * when the fitted log-log slope is at most −exponent + 0.05 with an RMS fit
 * residual of at most 0.1. The constant in front of the rate is never
 * estimated.
 */
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gclt/dp.hpp"
#include "gclt/pde.hpp"
#include "gclt/phi.hpp"
#include "gclt/theta.hpp"

namespace gclt {

inline constexpr double kSlopeTolerance = 0.05;
inline constexpr double kResidualCap = 0.1;

enum class RateTheorem { Auto, General, Improved };
enum class Verdict { Pass, Fail, Degenerate, ReferenceLimited };

std::string_view to_string(Verdict v) noexcept;
std::string_view to_string(RateTheorem t) noexcept;

struct LogLogFit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0;  ///< RMS of the log-space residuals
    std::size_t used = 0;   ///< points with err > 0
};

/// Ordinary least squares of log err on log n; zero errors are skipped.
/// Throws TooFewPoints when fewer than 3 positive errors remain.
LogLogFit fit_loglog(const std::vector<long>& ns, const std::vector<double>& errs);

/// β²/(4+2β) with β the Hölder exponent of φ, or 1/4 when `theorem` asks for
/// (or Auto finds applicable) the improved rate. Improved is rejected with
/// InvalidArgument when its conditions fail.
double theoretical_exponent(const ThetaFamily& f, const PhiFunction& phi, RateTheorem theorem,
                            RateTheorem* resolved = nullptr);

struct RatePoint {
    long n = 0;
    double vn = 0.0;
    double vref = 0.0;
    double vref_err = 0.0;
    double err = 0.0;
};

struct RateReport {
    std::string family_id;
    std::string phi_id;
    std::vector<RatePoint> points;
    std::optional<LogLogFit> fit;
    double theoretical_exponent = 0.0;
    RateTheorem theorem = RateTheorem::General;
    std::string reference_kind;  ///< "analytic" or "richardson"
    bool reference_limited = false;
    Verdict verdict = Verdict::Degenerate;
};

struct RateOptions {
    RateTheorem theorem = RateTheorem::Auto;
    DpMode mode = DpMode::Auto;
    std::optional<SchemeSpec> scheme;  ///< reference scheme; default_scheme() when empty
    bool require_resolved = false;     ///< throw ReferenceTooCoarse instead of flagging
    std::string family_id = "custom";
};

/// v_n(0,0) by the recursion for every n, against an analytic reference
/// (σ̲ = σ̄ and convex φ) or the Richardson PDE value.
RateReport error_curve(const ThetaFamily& f, const PhiFunction& phi, std::vector<long> ns,
                       const RateOptions& opts = {});

struct ConjectureRow {
    long n = 0;
    double scaled_continuous = 0.0;  ///< n^{1/4} v^n(0,0), closed form
    double scaled_discrete = 0.0;    ///< n^{1/4} v_n^n(0,0), exact trinomial recursion
};

struct ConjectureReport {
    std::vector<ConjectureRow> rows;
    double target = 0.0;  ///< E|w| for w ~ N(0, 2), i.e. 2/√π
};

/// Reports both scaled sequences for the n-dependent trinomial law; makes no
/// claim about their limits. Throws BadN for n < 4.
ConjectureReport conjecture_experiment(std::vector<long> ns);

}  // namespace gclt
