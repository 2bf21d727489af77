// SPDX-License-Identifier: MIT
// Independent reference computations used only by the tests. Nothing here
// shares code with the recursion or the PDE solver.
#pragma once

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gclt/phi.hpp"
#include "gclt/theta.hpp"

namespace oracle {

/// E φ((ξ₁+…+ξₙ)/√n) by walking every one of |support|^n outcomes.
inline double brute_force_vn(const gclt::DiscreteDist& d, const gclt::PhiFunction& phi, int n) {
    const auto& s = d.support();
    const auto& p = d.probs();
    const std::size_t m = s.size();
    std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
    const double root_n = std::sqrt(static_cast<double>(n));
    long double total = 0.0L;
    while (true) {
        long double sum = 0.0L, prob = 1.0L;
        for (int i = 0; i < n; ++i) {
            sum += s[idx[i]];
            prob *= p[idx[i]];
        }
        if (prob > 0.0L) total += prob * phi(static_cast<double>(sum) / root_n);
        int pos = 0;
        while (pos < n && ++idx[pos] == m) idx[pos++] = 0;
        if (pos == n) break;
    }
    return static_cast<double>(total);
}

/// E|S_n|/√n for the law (±1 w.p. q each, 0 otherwise) by forward convolution of S_n.
inline double trinomial_abs(long n, double q) {
    std::vector<long double> dist{1.0L};
    for (long k = 0; k < n; ++k) {
        std::vector<long double> next(dist.size() + 2, 0.0L);
        for (std::size_t j = 0; j < dist.size(); ++j) {
            next[j] += q * dist[j];
            next[j + 1] += (1.0L - 2.0L * q) * dist[j];
            next[j + 2] += q * dist[j];
        }
        dist.swap(next);
    }
    long double acc = 0.0L;
    for (std::size_t j = 0; j < dist.size(); ++j) acc += dist[j] * std::fabs(static_cast<long double>(j) - n);
    return static_cast<double>(acc / std::sqrt(static_cast<long double>(n)));
}

/// E|S_n|/√n for a simple ±1 walk, from binomial coefficients.
inline double binomial_abs(int n) {
    long double acc = 0.0L, c = 1.0L;
    for (int k = 0; k <= n; ++k) {
        acc += c * std::fabs(2.0L * k - n);
        c = c * (n - k) / (k + 1);
    }
    return static_cast<double>(acc / std::pow(2.0L, n) / std::sqrt(static_cast<long double>(n)));
}

/// Zero-mean law on the quarter lattice in [-1, 1], built as a mixture of
/// two-point zero-mean laws (mixtures keep the mean at 0).
inline gclt::DiscreteDist random_law(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> pos(1, 4), parts(1, 3);
    std::uniform_real_distribution<double> w(0.1, 1.0);
    std::map<double, double> mass;
    const int k = parts(rng);
    std::vector<double> weights;
    double wsum = 0.0;
    for (int i = 0; i < k; ++i) wsum += weights.emplace_back(w(rng));
    for (int i = 0; i < k; ++i) {
        const double a = -0.25 * pos(rng), b = 0.25 * pos(rng);
        const double wi = weights[i] / wsum;
        mass[a] += wi * b / (b - a);
        mass[b] += wi * -a / (b - a);
    }
    std::vector<double> s, p;
    for (const auto& [x, m] : mass) {
        s.push_back(x);
        p.push_back(m);
    }
    double total = 0.0;
    for (double v : p) total += v;
    for (auto& v : p) v /= total;
    return gclt::make_discrete(s, p);
}

/// Piecewise-linear pair φ₁ ≤ φ₂, both with slopes bounded by 1.
inline std::pair<gclt::PhiFunction, gclt::PhiFunction> random_ordered_pair(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> slope(-0.5, 0.5), gap(0.2, 0.8), lift(0.0, 0.3);
    const int k = 2 + static_cast<int>(rng() % 4);
    std::vector<double> xs{-2.0};
    for (int i = 1; i < k; ++i) xs.push_back(xs.back() + gap(rng));
    std::vector<double> y1{0.0}, g{0.0};
    for (std::size_t i = 1; i < xs.size(); ++i) {
        y1.push_back(y1.back() + slope(rng) * (xs[i] - xs[i - 1]));
        g.push_back(g.back() + slope(rng) * (xs[i] - xs[i - 1]));
    }
    double gmin = 0.0;
    for (double v : g) gmin = std::min(gmin, v);
    const double up = lift(rng) - gmin;
    std::vector<std::pair<double, double>> k1, k2;
    // Flat shoulders keep the gap nonnegative beyond the outer knots.
    k1.emplace_back(xs.front() - 1.0, y1.front());
    k2.emplace_back(xs.front() - 1.0, y1.front() + g.front() + up);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        k1.emplace_back(xs[i], y1[i]);
        k2.emplace_back(xs[i], y1[i] + g[i] + up);
    }
    k1.emplace_back(xs.back() + 1.0, y1.back());
    k2.emplace_back(xs.back() + 1.0, y1.back() + g.back() + up);
    return {gclt::PhiFunction::piecewise_linear(k1), gclt::PhiFunction::piecewise_linear(k2)};
}

inline std::filesystem::path scratch_dir(const std::string& tag) {
    std::string tmpl = (std::filesystem::temp_directory_path() / ("gclt-" + tag + "-XXXXXX")).string();
    if (::mkdtemp(tmpl.data()) == nullptr) throw std::runtime_error("mkdtemp failed");
    return tmpl;
}

inline std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace oracle
