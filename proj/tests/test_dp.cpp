// SPDX-License-Identifier: MIT
#include <doctest.h>

#include <cmath>
#include <random>

#include "gclt/dp.hpp"
#include "gclt/error.hpp"
#include "oracles.hpp"

using namespace gclt;

TEST_CASE("single lattice step") {
    const auto phi = PhiFunction::abs();
    Slice s{-3.0, 1.0, {}};
    for (int i = 0; i <= 6; ++i) s.values.push_back(phi(s.x(i)));
    const Slice out = step_expectation(s, rademacher(), 1, DpMode::Lattice);
    REQUIRE(out.values.size() == 5);
    CHECK(out.x0 == -2.0);
    CHECK(out.values[2] == 1.0);  // x = 0: (|-1| + |1|) / 2

    const double zero[] = {0.0}, one[] = {1.0};
    const auto point = make_discrete(zero, one);
    const Slice same = step_expectation(s, point, 4, DpMode::Grid, &phi);
    CHECK(same.values == s.values);

    Slice flat{-2.0, 0.5, std::vector<double>(9, 3.25)};
    for (const auto& v : step_expectation(flat, rademacher(), 4, DpMode::Lattice).values) CHECK(v == 3.25);
    const auto level = PhiFunction::constant(3.25);
    for (const auto& v : step_expectation(flat, rademacher(), 3, DpMode::Grid, &level).values) CHECK(v == 3.25);

    CHECK_THROWS_AS(step_expectation(flat, rademacher(), 3, DpMode::Lattice), Error);
    CHECK_THROWS_AS(step_expectation(flat, rademacher(), 4, DpMode::Grid), Error);
}

TEST_CASE("rademacher values") {
    const auto f = build_family({rademacher()}, 1.0);
    const auto phi = PhiFunction::abs();
    CHECK(vn_origin(f, phi, 1, DpMode::Lattice) == 1.0);
    CHECK(vn_origin(f, phi, 2, DpMode::Lattice) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
    CHECK(vn_origin(f, phi, 4, DpMode::Lattice) == 0.75);
    for (int n : {3, 7, 12, 33}) {
        CHECK(vn_origin(f, phi, n, DpMode::Lattice) == doctest::Approx(oracle::binomial_abs(n)).epsilon(1e-13));
    }
}

TEST_CASE("lattice recursion equals enumeration for singleton families") {
    const PhiFunction phis[] = {PhiFunction::abs(), PhiFunction::abs_pow(0.5), PhiFunction::cosine_scaled(),
                                PhiFunction::piecewise_linear({{-1.0, 0.3}, {0.2, -0.4}, {1.5, 0.1}})};
    const double s[] = {-2.0, 1.0};
    const double p[] = {1.0 / 3.0, 2.0 / 3.0};
    const DiscreteDist laws[] = {rademacher(), make_discrete(s, p), conjecture_theta(16).members()[0]};
    for (const auto& d : laws) {
        const auto f = build_family({d}, 1.0);
        for (const auto& phi : phis) {
            for (int n = 1; n <= 8; ++n) {
                CHECK(vn_origin(f, phi, n, DpMode::Lattice) ==
                      doctest::Approx(oracle::brute_force_vn(d, phi, n)).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("sixteen-step trinomial: convolution and full enumeration agree") {
    const auto f = conjecture_theta(16);
    const double dp = vn_origin(f, PhiFunction::abs(), 16, DpMode::Lattice);
    CHECK(dp == doctest::Approx(oracle::trinomial_abs(16, 0.25)).epsilon(1e-13));
}

TEST_CASE("field shape and window") {
    const auto f = build_family({rademacher(1.0), rademacher(0.5)}, 1.0);
    DpOptions o;
    o.window = 1.0;
    const auto field = solve_vn(f, PhiFunction::abs(), 9, o);
    CHECK(field.mode == FieldMode::Lattice);
    CHECK(field.rows() == 10);
    CHECK(field.x.front() <= -1.0);
    CHECK(field.x.back() >= 1.0);
    // terminal row is φ itself
    for (std::size_t i = 0; i < field.cols(); ++i) CHECK(field.at(9, i) == std::abs(field.x[i]));
}

TEST_CASE("time lookup") {
    const auto f = build_family({rademacher()}, 1.0);
    DpOptions o;
    o.window = 1.0;
    const auto field = solve_vn(f, PhiFunction::abs(), 2, o);
    CHECK(time_level(0.49, 2) == 0);
    CHECK(time_level(0.5, 2) == 1);
    CHECK(time_level(1.0, 2) == 2);
    CHECK(time_level(1.0 / 3.0, 3) == 1);
    CHECK(time_level(2.0 / 7.0, 7) == 2);
    CHECK(vn_at(field, 0.49, 0.0) == field.value_at_origin());
    CHECK(vn_at(field, 1.0, 0.5) == doctest::Approx(0.5));
    CHECK_THROWS_AS(vn_at(field, 1.2, 0.0), Error);
    CHECK_THROWS_AS(vn_at(field, 0.5, 5.0), Error);
}

TEST_CASE("grid mode") {
    const auto f = build_family({rademacher()}, 1.0);
    const auto phi = PhiFunction::abs();
    DpOptions grid;
    grid.mode = DpMode::Grid;
    // jumps of 1/4 land on the default 1/16 grid, so the grid is exact here
    CHECK(solve_vn(f, phi, 16, grid).value_at_origin() ==
          doctest::Approx(vn_origin(f, phi, 16, DpMode::Lattice)).epsilon(1e-13));

    const double exact = vn_origin(f, phi, 8, DpMode::Lattice);
    double prev = 1.0;
    for (double h : {1.0 / 8.0, 1.0 / 32.0, 1.0 / 128.0}) {
        grid.grid_step = h;
        const double gap = std::abs(solve_vn(f, phi, 8, grid).value_at_origin() - exact);
        CHECK(gap <= prev);
        prev = gap;
    }
    CHECK(prev < 5e-3);

    grid.grid_halfwidth = 2.0;
    CHECK_THROWS_AS(solve_vn(f, phi, 8, grid), Error);

    const double s[] = {-std::sqrt(2.0), std::sqrt(2.0)};
    const double p[] = {0.5, 0.5};
    const auto irr = build_family({rademacher(), make_discrete(s, p)}, 1.0);
    DpOptions lat;
    lat.mode = DpMode::Lattice;
    CHECK_THROWS_AS(solve_vn(irr, phi, 4, lat), Error);
    CHECK(solve_vn(irr, phi, 4, DpOptions{}).mode == FieldMode::Grid);
}

TEST_CASE("constants are preserved") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 10; ++i) {
        const auto f = build_family({oracle::random_law(rng), oracle::random_law(rng)}, 1.0);
        DpOptions o;
        o.window = 0.5;
        const auto field = solve_vn(f, PhiFunction::constant(-0.7), 6, o);
        for (double v : field.values) CHECK(v == doctest::Approx(-0.7).epsilon(1e-15));
    }
}

TEST_CASE("enlarging the family never lowers the value") {
    std::mt19937_64 rng(17);
    const PhiFunction phis[] = {PhiFunction::abs(), PhiFunction::neg_abs(), PhiFunction::cosine_scaled(),
                                PhiFunction::abs_pow(0.5)};
    for (int i = 0; i < 25; ++i) {
        std::vector<DiscreteDist> small{oracle::random_law(rng)};
        std::vector<DiscreteDist> big = small;
        big.push_back(oracle::random_law(rng));
        const auto& phi = phis[i % 4];
        const long n = 1 + static_cast<long>(rng() % 10);
        CHECK(vn_origin(build_family(big, 1.0), phi, n) >= vn_origin(build_family(small, 1.0), phi, n) - 1e-14);
    }
}
