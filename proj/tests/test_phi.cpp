// SPDX-License-Identifier: MIT
#include <doctest.h>

#include <cmath>

#include "gclt/error.hpp"
#include "gclt/phi.hpp"

using namespace gclt;

TEST_CASE("catalogue values") {
    CHECK(PhiFunction::abs()(-3.0) == 3.0);
    CHECK(PhiFunction::abs_pow(0.5)(4.0) == 2.0);
    CHECK(PhiFunction::cosine_scaled()(0.0) == 1.0);
    CHECK(PhiFunction::neg_abs()(2.0) == -2.0);
    CHECK(PhiFunction::constant(1.5)(123.0) == 1.5);

    const auto pl = PhiFunction::piecewise_linear({{-1.0, 1.0}, {0.0, 0.0}, {1.0, 0.5}});
    CHECK(pl(-0.5) == 0.5);
    CHECK(pl(0.5) == 0.25);
    CHECK(pl(3.0) == doctest::Approx(1.5));   // extends with the end slope
    CHECK(pl(-2.0) == doctest::Approx(2.0));
    CHECK(pl.convex());
    CHECK_FALSE(PhiFunction::piecewise_linear({{-1.0, 0.0}, {0.0, 1.0}, {1.0, 0.0}}).convex());
    CHECK_THROWS_AS(PhiFunction::piecewise_linear({{0.0, 0.0}, {1.0, 2.0}}), Error);
    CHECK_THROWS_AS(PhiFunction::abs_pow(1.5), Error);
}

TEST_CASE("hoelder audit") {
    const auto a = holder_audit(PhiFunction::abs(), 1.0, 20000, {-5.0, 5.0}, 7);
    CHECK(a.pass);
    CHECK(a.max_ratio <= 1.0 + 1e-12);

    CHECK(holder_audit(PhiFunction::abs_pow(0.5), 0.5, 20000, {-5.0, 5.0}, 7).pass);
    CHECK(holder_audit(PhiFunction::cosine_scaled(), 1.0, 20000, {-5.0, 5.0}, 3).pass);

    const auto bad = holder_audit(PhiFunction::abs(), 0.5, 20000, {-2.0, 2.0}, 7);
    CHECK_FALSE(bad.pass);
    CHECK(bad.max_ratio > 1.0);
}

TEST_CASE("audit is reproducible per seed") {
    const auto a = holder_audit(PhiFunction::abs(), 0.5, 5000, {-2.0, 2.0}, 11);
    const auto b = holder_audit(PhiFunction::abs(), 0.5, 5000, {-2.0, 2.0}, 11);
    CHECK(a.max_ratio == b.max_ratio);
    CHECK(a.worst_x == b.worst_x);
}

TEST_CASE("convexity audit") {
    CHECK(convexity_audit(PhiFunction::abs(), 5000, {-3.0, 3.0}, 1) <= 0.0);
    CHECK(convexity_audit(PhiFunction::neg_abs(), 5000, {-3.0, 3.0}, 1) > 0.0);
}
