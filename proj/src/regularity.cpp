// SPDX-License-Identifier: MIT
#include <algorithm>
#include <cmath>
#include <limits>

#include "gclt/error.hpp"
#include "gclt/mollify.hpp"
#include "lags.hpp"

namespace gclt {

RegularityReport regularity_audit(const ValueField& field, double beta, double sigma_bar, double slack,
                                  long pair_budget) {
    if (!(beta > 0.0 && beta <= 1.0)) throw Error(ErrorCode::InvalidArgument, "beta must lie in (0,1]");
    RegularityReport rep;
    const long rows = static_cast<long>(field.rows());
    const long cols = static_cast<long>(field.cols());
    if (rows == 0 || cols == 0) return rep;
    rep.spatial_excess = -std::numeric_limits<double>::infinity();
    rep.temporal_excess = -std::numeric_limits<double>::infinity();

    const long spatial_total = rows * cols * (cols - 1) / 2;
    const long temporal_total = cols * rows * (rows - 1) / 2;
    const bool all_x = spatial_total <= pair_budget;
    const bool all_t = temporal_total <= pair_budget;
    rep.exhaustive = all_x && all_t;

    for (long lag : detail::pair_lags(cols, all_x)) {
        for (long k = 0; k < rows; ++k) {
            for (long i = 0; i + lag < cols; ++i) {
                const double dist = std::abs(field.x[i + lag] - field.x[i]);
                const double d = std::abs(field.at(k, i + lag) - field.at(k, i));
                rep.spatial_excess = std::max(rep.spatial_excess, d - std::pow(dist, beta));
                ++rep.spatial_pairs;
            }
        }
    }
    const double scale = std::pow(sigma_bar, beta);
    for (long lag : detail::pair_lags(rows, all_t)) {
        for (long k = 0; k + lag < rows; ++k) {
            const double bound = scale * std::pow(std::abs(field.times[k + lag] - field.times[k]), beta / 2.0);
            for (long i = 0; i < cols; ++i) {
                const double d = std::abs(field.at(k + lag, i) - field.at(k, i));
                rep.temporal_excess = std::max(rep.temporal_excess, d - bound);
                ++rep.temporal_pairs;
            }
        }
    }
    rep.spatial_excess = std::max(rep.spatial_excess, 0.0);
    rep.temporal_excess = std::max(rep.temporal_excess, 0.0);
    rep.pass = rep.spatial_excess <= slack + kAuditRounding && rep.temporal_excess <= slack + kAuditRounding;
    return rep;
}

}  // namespace gclt
