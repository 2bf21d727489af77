// SPDX-License-Identifier: MIT
#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

namespace gclt::detail {

/// Index lags 1..size−1 when `all` is set; otherwise 1..64 followed by
/// geometrically spaced lags (ratio 1.25) up to size−1.
inline std::vector<long> pair_lags(long size, bool all) {
    std::vector<long> lags;
    if (size < 2) return lags;
    const long dense = all ? size - 1 : std::min(size - 1, 64L);
    for (long l = 1; l <= dense; ++l) lags.push_back(l);
    if (!all) {
        double l = static_cast<double>(dense);
        while (true) {
            l *= 1.25;
            const long li = static_cast<long>(std::ceil(l));
            if (li > size - 1) break;
            lags.push_back(li);
        }
        if (lags.back() != size - 1) lags.push_back(size - 1);
    }
    return lags;
}

/// Up to `count` evenly spaced indices in [lo, hi].
inline std::vector<long> spread(long lo, long hi, long count) {
    std::vector<long> out;
    if (hi < lo) return out;
    const long span = hi - lo + 1;
    if (span <= count) {
        for (long i = lo; i <= hi; ++i) out.push_back(i);
        return out;
    }
    for (long k = 0; k < count; ++k) out.push_back(lo + k * (span - 1) / (count - 1));
    return out;
}

}  // namespace gclt::detail
