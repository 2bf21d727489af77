// SPDX-License-Identifier: MIT
#include "gclt/dp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "gclt/error.hpp"

namespace gclt {

namespace {

/// Support offsets of one law in units of the node spacing.
struct LatticeLaw {
    std::vector<long> offsets;
    std::vector<double> probs;
};

/// For grid mode: ξ/√n = (shift + frac)·h with 0 ≤ frac < 1.
struct GridLaw {
    std::vector<long> shift;
    std::vector<double> frac;
    std::vector<double> jump;  ///< ξ/√n itself, for the off-grid fallback
    std::vector<double> probs;
};

LatticeLaw to_lattice(const DiscreteDist& d, double unit) {
    LatticeLaw law;
    for (std::size_t i = 0; i < d.size(); ++i) {
        const double q = d.support()[i] / unit;
        const double r = std::round(q);
        if (std::abs(q - r) > 1e-9 * std::max(1.0, std::abs(q))) {
            throw Error(ErrorCode::ModeMismatch,
                        "support point " + std::to_string(d.support()[i]) + " is off the lattice");
        }
        law.offsets.push_back(static_cast<long>(r));
        law.probs.push_back(d.probs()[i]);
    }
    return law;
}

GridLaw to_grid(const DiscreteDist& d, long n, double h) {
    GridLaw law;
    const double root_n = std::sqrt(static_cast<double>(n));
    for (std::size_t i = 0; i < d.size(); ++i) {
        const double jump = d.support()[i] / root_n;
        double q = jump / h;
        double r = std::round(q);
        // Snap near-integers so lattice-compatible grids stay exact.
        if (std::abs(q - r) <= 1e-12 * std::max(1.0, std::abs(q))) q = r;
        const double fl = std::floor(q);
        law.shift.push_back(static_cast<long>(fl));
        law.frac.push_back(q - fl);
        law.jump.push_back(jump);
        law.probs.push_back(d.probs()[i]);
    }
    return law;
}

long max_offset(const LatticeLaw& law) {
    long r = 0;
    for (long m : law.offsets) r = std::max(r, std::labs(m));
    return r;
}

/// E next(x_i + ξ/√n) for node i of a uniform slice; arguments off the slice use φ.
long double grid_expect(const std::vector<double>& next, double x0, double h, long i,
                        const GridLaw& law, const PhiFunction& phi) {
    const long last = static_cast<long>(next.size()) - 1;
    long double acc = 0.0L;
    for (std::size_t s = 0; s < law.probs.size(); ++s) {
        const long lo = i + law.shift[s];
        const double fr = law.frac[s];
        double v;
        if (lo >= 0 && lo <= last && (fr == 0.0 || lo + 1 <= last)) {
            v = fr == 0.0 ? next[lo] : (1.0 - fr) * next[lo] + fr * next[lo + 1];
        } else {
            v = phi(x0 + static_cast<double>(i) * h + law.jump[s]);
        }
        acc += static_cast<long double>(law.probs[s]) * v;
    }
    return acc;
}

ValueField solve_lattice(const ThetaFamily& f, const PhiFunction& phi, long n, double window) {
    const double c = *f.lattice_step();
    const double hl = c / std::sqrt(static_cast<double>(n));
    std::vector<LatticeLaw> laws;
    long reach = 0;
    for (const auto& d : f.members()) {
        laws.push_back(to_lattice(d, c));
        reach = std::max(reach, max_offset(laws.back()));
    }
    const long w = static_cast<long>(std::ceil(window / hl - 1e-9));

    ValueField field;
    field.n = n;
    field.mode = FieldMode::Lattice;
    field.h = hl;
    for (long k = 0; k <= n; ++k) field.times.push_back(static_cast<double>(k) / static_cast<double>(n));
    for (long j = -w; j <= w; ++j) field.x.push_back(static_cast<double>(j) * hl);
    field.values.assign(field.rows() * field.cols(), 0.0);

    auto half = [&](long k) { return w + reach * k; };
    auto store = [&](long k, const std::vector<double>& level) {
        const long hk = half(k);
        for (long j = -w; j <= w; ++j) field.at(k, j + w) = level[j + hk];
    };

    std::vector<double> next(2 * half(n) + 1);
    for (long j = -half(n); j <= half(n); ++j) next[j + half(n)] = phi(static_cast<double>(j) * hl);
    store(n, next);

    std::vector<double> cur;
    for (long k = n - 1; k >= 0; --k) {
        const long hk = half(k);
        cur.assign(2 * hk + 1, 0.0);
        for (long i = 0; i <= 2 * hk; ++i) {
            const long base = i + reach;  // index of the same x in `next`
            double best = -std::numeric_limits<double>::infinity();
            for (const auto& law : laws) {
                long double acc = 0.0L;
                for (std::size_t s = 0; s < law.probs.size(); ++s) {
                    acc += static_cast<long double>(law.probs[s]) * next[base + law.offsets[s]];
                }
                best = std::max(best, static_cast<double>(acc));
            }
            cur[i] = best;
        }
        store(k, cur);
        next.swap(cur);
    }
    return field;
}

ValueField solve_grid(const ThetaFamily& f, const PhiFunction& phi, long n, const DpOptions& opts) {
    const double h = opts.grid_step.value_or(1.0 / static_cast<double>(n));
    if (!(h > 0.0)) throw Error(ErrorCode::InvalidArgument, "grid step must be positive");
    const double needed = opts.window + 8.0 * f.sigma_bar();
    const double halfwidth = opts.grid_halfwidth.value_or(needed);
    if (halfwidth < needed - 1e-12) {
        throw Error(ErrorCode::GridTooSmall,
                    "grid half-width " + std::to_string(halfwidth) + " below window + 8 sigma_bar = " +
                        std::to_string(needed));
    }
    const long half = static_cast<long>(std::ceil(halfwidth / h - 1e-9));
    if (half < 1) throw Error(ErrorCode::GridTooSmall, "grid has fewer than 3 nodes");
    const long w = std::min(half, static_cast<long>(std::ceil(opts.window / h - 1e-9)));
    const double x0 = -static_cast<double>(half) * h;

    std::vector<GridLaw> laws;
    for (const auto& d : f.members()) laws.push_back(to_grid(d, n, h));

    ValueField field;
    field.n = n;
    field.mode = FieldMode::Grid;
    field.h = h;
    for (long k = 0; k <= n; ++k) field.times.push_back(static_cast<double>(k) / static_cast<double>(n));
    for (long j = -w; j <= w; ++j) field.x.push_back(static_cast<double>(j) * h);
    field.values.assign(field.rows() * field.cols(), 0.0);
    auto store = [&](long k, const std::vector<double>& level) {
        for (long j = -w; j <= w; ++j) field.at(k, j + w) = level[j + half];
    };

    std::vector<double> next(2 * half + 1);
    for (long j = -half; j <= half; ++j) next[j + half] = phi(static_cast<double>(j) * h);
    store(n, next);

    std::vector<double> cur(next.size());
    for (long k = n - 1; k >= 0; --k) {
        for (long i = 0; i <= 2 * half; ++i) {
            double best = -std::numeric_limits<double>::infinity();
            for (const auto& law : laws) {
                best = std::max(best, static_cast<double>(grid_expect(next, x0, h, i, law, phi)));
            }
            cur[i] = best;
        }
        store(k, cur);
        next.swap(cur);
    }
    return field;
}

}  // namespace

Slice step_expectation(const Slice& slice, const DiscreteDist& d, long n, DpMode mode,
                       const PhiFunction* outside) {
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "n must be positive");
    if (mode == DpMode::Lattice) {
        const LatticeLaw law = to_lattice(d, slice.h * std::sqrt(static_cast<double>(n)));
        const long reach = max_offset(law);
        const long size = static_cast<long>(slice.values.size());
        if (size <= 2 * reach) {
            throw Error(ErrorCode::InvalidArgument, "slice too narrow for one lattice step");
        }
        Slice out{slice.x0 + static_cast<double>(reach) * slice.h, slice.h, {}};
        out.values.resize(static_cast<std::size_t>(size - 2 * reach));
        for (long i = 0; i < static_cast<long>(out.values.size()); ++i) {
            long double acc = 0.0L;
            for (std::size_t s = 0; s < law.probs.size(); ++s) {
                acc += static_cast<long double>(law.probs[s]) * slice.values[i + reach + law.offsets[s]];
            }
            out.values[i] = static_cast<double>(acc);
        }
        return out;
    }
    if (outside == nullptr) {
        throw Error(ErrorCode::InvalidArgument, "grid mode needs φ for off-grid arguments");
    }
    const GridLaw law = to_grid(d, n, slice.h);
    Slice out{slice.x0, slice.h, std::vector<double>(slice.values.size())};
    for (long i = 0; i < static_cast<long>(out.values.size()); ++i) {
        out.values[i] = static_cast<double>(grid_expect(slice.values, slice.x0, slice.h, i, law, *outside));
    }
    return out;
}

ValueField solve_vn(const ThetaFamily& f, const PhiFunction& phi, long n, const DpOptions& opts) {
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "n must be positive");
    if (opts.window < 0.0) throw Error(ErrorCode::InvalidArgument, "window must be nonnegative");
    DpMode mode = opts.mode;
    if (mode == DpMode::Auto) mode = f.lattice_step() ? DpMode::Lattice : DpMode::Grid;
    if (mode == DpMode::Lattice) {
        if (!f.lattice_step()) {
            throw Error(ErrorCode::ModeMismatch, "lattice mode requested but family has no lattice step");
        }
        return solve_lattice(f, phi, n, opts.window);
    }
    return solve_grid(f, phi, n, opts);
}

double vn_origin(const ThetaFamily& f, const PhiFunction& phi, long n, DpMode mode) {
    DpOptions opts;
    opts.mode = mode;
    return solve_vn(f, phi, n, opts).value_at_origin();
}

long time_level(double t, long n) {
    if (!(t >= 0.0 && t <= 1.0)) throw Error(ErrorCode::OutOfHull, "t outside [0,1]");
    if (t == 1.0) return n;
    const double nd = static_cast<double>(n);
    long level = static_cast<long>(std::floor(t * nd));
    // Undo rounding in t·n so that t = k/n lands on level k exactly.
    if (level + 1 <= n && static_cast<double>(level + 1) / nd <= t) ++level;
    if (level > 0 && static_cast<double>(level) / nd > t) --level;
    return std::clamp(level, 0L, n);
}

double vn_at(const ValueField& field, double t, double x) {
    const long k = time_level(t, field.n);
    if (field.x.empty() || x < field.x.front() - 1e-12 || x > field.x.back() + 1e-12) {
        throw Error(ErrorCode::OutOfHull, "x = " + std::to_string(x) + " outside the stored window");
    }
    if (field.cols() == 1) return field.at(static_cast<std::size_t>(k), 0);
    const double u = std::clamp((x - field.x.front()) / field.h, 0.0, static_cast<double>(field.cols() - 1));
    const auto i = std::min(static_cast<std::size_t>(u), field.cols() - 2);
    const double fr = u - static_cast<double>(i);
    const double a = field.at(static_cast<std::size_t>(k), i);
    if (fr == 0.0) return a;
    return (1.0 - fr) * a + fr * field.at(static_cast<std::size_t>(k), i + 1);
}

std::size_t ValueField::origin_index() const {
    auto it = std::min_element(x.begin(), x.end(),
                               [](double a, double b) { return std::abs(a) < std::abs(b); });
    return static_cast<std::size_t>(it - x.begin());
}

std::vector<double> TimeGrid::points() const {
    std::vector<double> p;
    for (long k = 0; k <= n; ++k) p.push_back(static_cast<double>(k) / static_cast<double>(n));
    return p;
}

}  // namespace gclt
