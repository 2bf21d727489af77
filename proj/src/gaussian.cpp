// SPDX-License-Identifier: MIT
#include "gclt/gaussian.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <vector>

#include "gclt/error.hpp"

namespace gclt {

double normal_cdf(double z) noexcept { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double normal_pdf(double z) noexcept {
    return std::exp(-0.5 * z * z) * (std::numbers::inv_sqrtpi / std::numbers::sqrt2);
}

double gaussian_abs_expectation(double x, double sigma) noexcept {
    if (sigma == 0.0) return std::abs(x);
    return sigma * std::sqrt(2.0 / std::numbers::pi) * std::exp(-x * x / (2.0 * sigma * sigma)) +
           x * (1.0 - 2.0 * normal_cdf(-x / sigma));
}

double gaussian_hinge_expectation(double x, double sigma, double k) noexcept {
    const double m = x - k;
    if (sigma == 0.0) return std::max(m, 0.0);
    const double d = m / sigma;
    return m * normal_cdf(d) + sigma * normal_pdf(d);
}

double gauss_hermite_expectation(const std::function<double(double)>& f, double mean, double sd,
                                 int nodes) {
    if (nodes < 1) throw Error(ErrorCode::InvalidArgument, "need at least one node");
    std::unique_ptr<gsl_integration_fixed_workspace, decltype(&gsl_integration_fixed_free)> ws(
        gsl_integration_fixed_alloc(gsl_integration_fixed_hermite, static_cast<std::size_t>(nodes), 0.0,
                                    1.0, 0.0, 0.0),
        &gsl_integration_fixed_free);
    if (!ws) throw Error(ErrorCode::InvalidArgument, "Gauss-Hermite allocation failed");
    const double* x = gsl_integration_fixed_nodes(ws.get());
    const double* w = gsl_integration_fixed_weights(ws.get());
    // ∫ g(z) e^{−z²} dz with W = √2·z.
    long double acc = 0.0L;
    for (int i = 0; i < nodes; ++i) acc += w[i] * f(mean + sd * std::numbers::sqrt2 * x[i]);
    return static_cast<double>(acc * std::numbers::inv_sqrtpi);
}

namespace {

struct Integrand {
    const PhiFunction* phi;
    double mean;
    double sd;
};

double integrand(double z, void* p) {
    const auto* in = static_cast<const Integrand*>(p);
    return (*in->phi)(in->mean + in->sd * z) * normal_pdf(z);
}

}  // namespace

double gaussian_expectation(const PhiFunction& phi, double mean, double sd) {
    if (sd == 0.0) return phi(mean);
    constexpr double kCut = 12.0;
    std::vector<double> pts{-kCut};
    for (double k : phi.kinks()) {
        const double z = (k - mean) / sd;
        if (z > -kCut && z < kCut) pts.push_back(z);
    }
    pts.push_back(kCut);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    Integrand in{&phi, mean, sd};
    gsl_function fn{&integrand, &in};
    std::unique_ptr<gsl_integration_workspace, decltype(&gsl_integration_workspace_free)> ws(
        gsl_integration_workspace_alloc(2000), &gsl_integration_workspace_free);
    double result = 0.0;
    double abserr = 0.0;
    gsl_error_handler_t* old = gsl_set_error_handler_off();
    const int status = gsl_integration_qagp(&fn, pts.data(), pts.size(), 1e-14, 1e-12, 2000, ws.get(),
                                            &result, &abserr);
    gsl_set_error_handler(old);
    // Roundoff warnings at this tolerance are benign; anything else is not.
    if (status != GSL_SUCCESS && status != GSL_EROUND && abserr > 1e-10) {
        throw Error(ErrorCode::InvalidArgument, "Gaussian quadrature failed to converge");
    }
    return result;
}

}  // namespace gclt
