// SPDX-License-Identifier: MIT
#include "gclt/mollify.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <string>

#include "gclt/error.hpp"
#include "lags.hpp"

namespace gclt {

namespace {

double bump(double r) noexcept {
    return std::abs(r) < 1.0 ? std::exp(-1.0 / (1.0 - r * r)) : 0.0;
}

double integrate(double (*fn)(double, void*), double lo, double hi) {
    std::unique_ptr<gsl_integration_workspace, decltype(&gsl_integration_workspace_free)> ws(
        gsl_integration_workspace_alloc(1000), &gsl_integration_workspace_free);
    gsl_function f{fn, nullptr};
    double result = 0.0;
    double err = 0.0;
    gsl_error_handler_t* old = gsl_set_error_handler_off();
    gsl_integration_qag(&f, lo, hi, 1e-15, 1e-13, 1000, GSL_INTEG_GAUSS61, ws.get(), &result, &err);
    gsl_set_error_handler(old);
    return result;
}

double bump_integral() {
    static const double value = integrate([](double r, void*) { return bump(r); }, -1.0, 1.0);
    return value;
}

double kernel_x(double x) noexcept { return bump(x) / bump_integral(); }
double kernel_t(double t) noexcept { return 2.0 * bump(2.0 * t + 1.0) / bump_integral(); }

std::vector<double> normalised(std::vector<double> w) {
    long double s = 0.0L;
    for (double v : w) s += v;
    for (double& v : w) v = static_cast<double>(v / s);
    return w;
}

bool within(double step, double limit) { return step <= limit * (1.0 + 1e-9); }

}  // namespace

double MollifierSpec::kernel(double t, double x) noexcept { return kernel_t(t) * kernel_x(x); }

double MollifierSpec::kernel_mass() {
    const double mt = integrate([](double t, void*) { return kernel_t(t); }, -1.0, 0.0);
    const double mx = integrate([](double x, void*) { return kernel_x(x); }, -1.0, 1.0);
    return mt * mx;
}

double MollifierSpec::kernel_x_moment() {
    const double mt = integrate([](double t, void*) { return kernel_t(t); }, -1.0, 0.0);
    return mt * integrate([](double x, void*) { return x * kernel_x(x); }, -1.0, 1.0);
}

SampledSurface SampledSurface::sample(const std::function<double(double, double)>& u, double halfwidth,
                                      double dt_max, double dx_max, double beta, double slack_a) {
    if (!(halfwidth > 0.0) || !(dt_max > 0.0) || !(dx_max > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "surface extents and steps must be positive");
    }
    SampledSurface s;
    const auto steps_t = static_cast<std::size_t>(std::ceil(1.0 / dt_max - 1e-9));
    const auto half_x = static_cast<std::size_t>(std::ceil(halfwidth / dx_max - 1e-9));
    s.nt = steps_t + 1;
    s.dt = 1.0 / static_cast<double>(steps_t);
    s.nx = 2 * half_x + 1;
    s.dx = halfwidth / static_cast<double>(half_x);
    s.x0 = -halfwidth;
    s.beta = beta;
    s.slack_a = slack_a;
    s.values.resize(s.nt * s.nx);
    for (std::size_t i = 0; i < s.nt; ++i) {
        const double t = std::min(1.0, s.t(i));
        for (std::size_t j = 0; j < s.nx; ++j) s.at(i, j) = u(t, s.x(j));
    }
    return s;
}

SampledSurface mollify(const SampledSurface& u, const MollifierSpec& spec) {
    const double eps = spec.epsilon;
    if (!(eps > 0.0 && eps < 1.0)) throw Error(ErrorCode::InvalidArgument, "epsilon must lie in (0,1)");
    if (!within(u.dx, eps / 16.0) || !within(u.dt, eps * eps / 16.0)) {
        throw Error(ErrorCode::ResolutionTooCoarse,
                    "surface steps exceed eps/16 in x or eps^2/16 in t for eps = " + std::to_string(eps));
    }
    const auto reach_t = static_cast<std::size_t>(std::floor(eps * eps / u.dt + 1e-9));
    const auto reach_x = static_cast<std::size_t>(std::floor(eps / u.dx + 1e-9));
    if (u.nt <= reach_t || u.nx <= 2 * reach_x) {
        throw Error(ErrorCode::DomainTooSmall, "surface does not cover the kernel support");
    }

    // ζ_ε(s,y) ds dy on the grid: s = −m·dt, y = l·dx.
    std::vector<double> wt(reach_t + 1);
    for (std::size_t m = 0; m <= reach_t; ++m) {
        wt[m] = kernel_t(-static_cast<double>(m) * u.dt / (eps * eps));
    }
    std::vector<double> wx(2 * reach_x + 1);
    for (std::size_t l = 0; l < wx.size(); ++l) {
        wx[l] = kernel_x((static_cast<double>(l) - static_cast<double>(reach_x)) * u.dx / eps);
    }
    wt = normalised(std::move(wt));
    wx = normalised(std::move(wx));

    SampledSurface out;
    out.t0 = u.t0;
    out.dt = u.dt;
    out.dx = u.dx;
    out.x0 = u.x(reach_x);
    out.nt = u.nt - reach_t;
    out.nx = u.nx - 2 * reach_x;
    out.beta = u.beta;
    out.slack_a = u.slack_a;
    out.values.resize(out.nt * out.nx);

    // u^{(ε)}(t,x) = Σ_m Σ_l u(t + m·dt, x − l·dx) w_t(m) w_x(l).
    std::vector<long double> row(u.nx);
    for (std::size_t i = 0; i < out.nt; ++i) {
        std::fill(row.begin(), row.end(), 0.0L);
        for (std::size_t m = 0; m <= reach_t; ++m) {
            const double* src = &u.values[(i + m) * u.nx];
            for (std::size_t j = 0; j < u.nx; ++j) row[j] += wt[m] * src[j];
        }
        for (std::size_t j = 0; j < out.nx; ++j) {
            const std::size_t centre = j + reach_x;
            long double acc = 0.0L;
            for (std::size_t l = 0; l < wx.size(); ++l) {
                acc += wx[l] * row[centre + reach_x - l];
            }
            out.at(i, j) = static_cast<double>(acc);
        }
    }
    return out;
}

HolderAudit audit_surface(const SampledSurface& u) {
    constexpr long kLines = 64;
    constexpr double kTol = 1e-9;
    HolderAudit rep;
    rep.spatial_excess = -std::numeric_limits<double>::infinity();
    rep.temporal_excess = -std::numeric_limits<double>::infinity();
    const long nt = static_cast<long>(u.nt);
    const long nx = static_cast<long>(u.nx);

    const auto xlags = detail::pair_lags(nx, false);
    for (long i : detail::spread(0, nt - 1, kLines)) {
        for (long lag : xlags) {
            const double bound = std::pow(static_cast<double>(lag) * u.dx, u.beta);
            for (long j = 0; j + lag < nx; ++j) {
                const double d = std::abs(u.at(i, j) - u.at(i, j + lag));
                rep.spatial_excess = std::max(rep.spatial_excess, d - bound);
                ++rep.pairs;
            }
        }
    }
    const auto tlags = detail::pair_lags(nt, false);
    for (long j : detail::spread(0, nx - 1, kLines)) {
        for (long lag : tlags) {
            const double bound = std::pow(static_cast<double>(lag) * u.dt, u.beta / 2.0) + u.slack_a;
            for (long i = 0; i + lag < nt; ++i) {
                const double d = std::abs(u.at(i, j) - u.at(i + lag, j));
                rep.temporal_excess = std::max(rep.temporal_excess, d - bound);
                ++rep.pairs;
            }
        }
    }
    rep.pass = rep.spatial_excess <= kTol && rep.temporal_excess <= kTol;
    return rep;
}

namespace {

double spread_ratio(const std::vector<double>& q) {
    constexpr double kTiny = 1e-12;
    const auto [mn, mx] = std::minmax_element(q.begin(), q.end());
    if (*mx <= kTiny) return 1.0;
    if (*mn <= kTiny) return std::numeric_limits<double>::infinity();
    return *mx / *mn;
}

}  // namespace

MollifierReport verify_mollifier_bounds(const SampledSurface& u, const std::vector<double>& eps_list) {
    if (eps_list.empty()) throw Error(ErrorCode::InvalidArgument, "empty epsilon list");
    const HolderAudit audit = audit_surface(u);
    if (!audit.pass) {
        throw Error(ErrorCode::HypothesisViolated,
                    "surface fails its declared regularity (spatial excess " +
                        std::to_string(audit.spatial_excess) + ", temporal excess " +
                        std::to_string(audit.temporal_excess) + ")");
    }

    constexpr long kLines = 64;
    const double beta = u.beta;
    const double a = u.slack_a;
    MollifierReport rep;
    rep.sup_bound_pass = true;
    for (double eps : eps_list) {
        const SampledSurface m = mollify(u, MollifierSpec{eps});
        const std::size_t shift = static_cast<std::size_t>(std::llround((m.x0 - u.x0) / u.dx));
        MollifierRow row;
        row.epsilon = eps;
        row.bound = 2.0 * std::pow(eps, beta) + a;
        for (std::size_t i = 0; i < m.nt; ++i) {
            for (std::size_t j = 0; j < m.nx; ++j) {
                row.observed = std::max(row.observed, std::abs(m.at(i, j) - u.at(i, j + shift)));
            }
        }
        row.pass = row.observed <= row.bound;
        rep.sup_bound_pass = rep.sup_bound_pass && row.pass;

        const long nt = static_cast<long>(m.nt);
        const long nx = static_cast<long>(m.nx);
        const double dt = m.dt;
        const double dx = m.dx;
        auto d2x = [&](long i, long j) {
            return (m.at(i, j + 1) - 2.0 * m.at(i, j) + m.at(i, j - 1)) / (dx * dx);
        };
        auto dt1 = [&](long i, long j) { return (m.at(i + 1, j) - m.at(i - 1, j)) / (2.0 * dt); };

        double deriv = 0.0;
        for (long i = 2; i + 2 < nt; ++i) {
            for (long j = 2; j + 2 < nx; ++j) {
                const double dtt = (m.at(i + 1, j) - 2.0 * m.at(i, j) + m.at(i - 1, j)) / (dt * dt);
                const double d4 = (m.at(i, j - 2) - 4.0 * m.at(i, j - 1) + 6.0 * m.at(i, j) -
                                   4.0 * m.at(i, j + 1) + m.at(i, j + 2)) /
                                  (dx * dx * dx * dx);
                const double dtd2 = (d2x(i + 1, j) - d2x(i - 1, j)) / (2.0 * dt);
                deriv = std::max(deriv, std::abs(dtt) + std::abs(d4) + std::abs(dtd2));
            }
        }
        row.deriv_scaled = std::pow(eps, 4) * deriv / (std::pow(eps, beta) + a);

        // Modulus of ∂_t u^{(ε)} and D²u^{(ε)} along sampled columns (time pairs)
        // and sampled rows (space pairs).
        double time_mod = 0.0;
        const long rows_in = nt - 4;
        if (rows_in >= 2) {
            const auto lags = detail::pair_lags(rows_in, false);
            std::vector<double> pt(rows_in), p2(rows_in);
            for (long j : detail::spread(2, nx - 3, kLines)) {
                for (long r = 0; r < rows_in; ++r) {
                    pt[r] = dt1(r + 2, j);
                    p2[r] = d2x(r + 2, j);
                }
                for (long lag : lags) {
                    const double den = std::pow(static_cast<double>(lag) * dt, beta / 2.0) + a;
                    for (long r = 0; r + lag < rows_in; ++r) {
                        const double num = std::abs(pt[r] - pt[r + lag]) + std::abs(p2[r] - p2[r + lag]);
                        time_mod = std::max(time_mod, num / den);
                    }
                }
            }
        }
        row.time_modulus_scaled = eps * eps * time_mod;

        double space_mod = 0.0;
        const long cols_in = nx - 4;
        if (cols_in >= 2) {
            const auto lags = detail::pair_lags(cols_in, false);
            std::vector<double> pt(cols_in), p2(cols_in);
            for (long i : detail::spread(2, nt - 3, kLines)) {
                for (long c = 0; c < cols_in; ++c) {
                    pt[c] = dt1(i, c + 2);
                    p2[c] = d2x(i, c + 2);
                }
                for (long lag : lags) {
                    const double den = std::pow(static_cast<double>(lag) * dx, beta);
                    for (long c = 0; c + lag < cols_in; ++c) {
                        const double num = std::abs(pt[c] - pt[c + lag]) + std::abs(p2[c] - p2[c + lag]);
                        space_mod = std::max(space_mod, num / den);
                    }
                }
            }
        }
        row.space_modulus_scaled = eps * eps * space_mod;
        rep.rows.push_back(row);
    }

    std::vector<double> q1, q2, q3;
    for (const auto& r : rep.rows) {
        q1.push_back(r.deriv_scaled);
        q2.push_back(r.time_modulus_scaled);
        q3.push_back(r.space_modulus_scaled);
    }
    rep.deriv_ratio = spread_ratio(q1);
    rep.time_modulus_ratio = spread_ratio(q2);
    rep.space_modulus_ratio = spread_ratio(q3);
    rep.scaling_pass = rep.deriv_ratio <= 10.0 && rep.time_modulus_ratio <= 10.0 && rep.space_modulus_ratio <= 10.0;
    rep.pass = rep.sup_bound_pass && rep.scaling_pass;
    return rep;
}

}  // namespace gclt
