// SPDX-License-Identifier: MIT
#pragma once

#include <cstddef>
#include <vector>

namespace gclt {

enum class FieldMode { Lattice, Grid, Pde };

/// Values of v or v_n on a (time, space) product grid. Rows are time levels in
/// increasing t; columns are sorted x points shared by every row.
struct ValueField {
    long n = 0;  ///< number of DP steps; 0 for PDE fields
    FieldMode mode = FieldMode::Lattice;
    double h = 0.0;  ///< spatial spacing
    std::vector<double> times;
    std::vector<double> x;
    std::vector<double> values;  ///< row-major, times.size() × x.size()

    std::size_t rows() const noexcept { return times.size(); }
    std::size_t cols() const noexcept { return x.size(); }
    double& at(std::size_t k, std::size_t i) noexcept { return values[k * x.size() + i]; }
    double at(std::size_t k, std::size_t i) const noexcept { return values[k * x.size() + i]; }

    /// Index of x = 0 (fields are built so that the origin is a node).
    std::size_t origin_index() const;
    /// Value at (t = times.front(), x = 0).
    double value_at_origin() const { return at(0, origin_index()); }
};

/// T_n = {k/n : k = 0..n}.
struct TimeGrid {
    long n;
    std::vector<double> points() const;
};

}  // namespace gclt
