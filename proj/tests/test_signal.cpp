// Copyright Contributors to the expsamp project
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "expsamp/numeric.hpp"
#include "expsamp/signal.hpp"

using namespace expsamp;

namespace {
PiecewiseSignal demo_signal() {
    return make_signal({1.5, 3.5, 5.5}, {"11/(2*t^2+1)", "3", "2", "12/(1+2*t)"}, 0.5, 8.0);
}
} // namespace

TEST_CASE("piece lookup honors the left-closed convention") {
    const auto f = demo_signal();
    CHECK(f.eval(1.0) == doctest::Approx(11.0 / 3.0));
    CHECK(f.eval(1.5) == doctest::Approx(3.0)); // breakpoint takes the right piece
    CHECK(f.eval(3.4999) == doctest::Approx(3.0));
    CHECK(f.eval(3.5) == doctest::Approx(2.0));
    CHECK(f.eval(6.0) == doctest::Approx(12.0 / 13.0));
    CHECK_THROWS_AS(f.eval(0.0), std::domain_error);
    CHECK_THROWS_AS(f.eval(-1.0), std::domain_error);
}

TEST_CASE("construction is validated") {
    CHECK_THROWS_AS(make_signal({2.0, 1.0}, {"1", "2", "3"}, 0.5, 8.0), std::invalid_argument);
    CHECK_THROWS_AS(make_signal({1.0}, {"1"}, 0.5, 8.0), std::invalid_argument);
    CHECK_THROWS_AS(make_signal({}, {"1/(t-1)"}, 0.5, 8.0), std::invalid_argument); // pole inside
    CHECK_THROWS_AS(make_signal({}, {"t"}, 8.0, 0.5), std::invalid_argument);
}

TEST_CASE("one-sided limits at the jumps") {
    const auto f = demo_signal();
    {
        auto [l, r] = f.one_sided_limits(1.5);
        CHECK(l == doctest::Approx(2.0).epsilon(1e-15)); // 11/(2 (3/2)^2 + 1)
        CHECK(r == doctest::Approx(3.0));
    }
    {
        auto [l, r] = f.one_sided_limits(5.5);
        CHECK(l == doctest::Approx(2.0));
        CHECK(r == doctest::Approx(1.0)); // 12/(1+11)
    }
    {
        auto [l, r] = f.one_sided_limits(2.0); // interior of a constant piece
        CHECK(l == doctest::Approx(3.0));
        CHECK(r == doctest::Approx(3.0));
    }
    const auto j = f.jump_at(1.5);
    CHECK(j.jump() == doctest::Approx(1.0));
    CHECK(j.value_at == doctest::Approx(3.0));
    CHECK_FALSE(j.removable());
}

TEST_CASE("auxiliary signal h_t") {
    const auto f = demo_signal();
    const auto h = build_h(f, 1.5);
    CHECK(h.eval(1.0) == doctest::Approx(11.0 / 3.0 - 2.0).epsilon(1e-15));
    CHECK(h.eval(2.0) == doctest::Approx(0.0));
    CHECK(h.eval(1.5) == 0.0); // pinned point value
    auto [l, r] = h.one_sided_limits(1.5);
    CHECK(l == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(r == doctest::Approx(0.0).epsilon(1e-15));

    // t interior to a piece: h gets a new breakpoint there
    const auto h2 = build_h(f, 2.5);
    CHECK(h2.eval(2.5) == 0.0);
    CHECK(h2.eval(2.4) == doctest::Approx(0.0)); // 3 - 3 on both sides
    CHECK(h2.eval(1.0) == doctest::Approx(11.0 / 3.0 - 3.0).epsilon(1e-14));
}

TEST_CASE("log modulus basics") {
    const auto c = make_signal({}, {"3"}, 0.5, 8.0);
    CHECK(log_modulus(c, 0.25) == 0.0);

    const auto lg = make_signal({}, {"log(t)"}, 1.0, std::exp(2.0));
    for (double delta : {0.05, 0.1, 0.3}) {
        const double w = log_modulus(lg, delta, 4000);
        CHECK(w == doctest::Approx(delta).epsilon(2e-3)); // log-Lipschitz constant 1
        CHECK(w <= delta + 1e-12);
    }
    CHECK_THROWS_AS(log_modulus(lg, 0.0), std::domain_error);
}

TEST_CASE("log modulus is monotone and subadditive-style") {
    const auto f = demo_signal();
    double prev = 0.0;
    for (double delta : {0.4, 0.2, 0.1, 0.05, 0.025}) {
        const double w = log_modulus(f, delta);
        if (prev > 0.0) CHECK(w <= prev + 1e-12); // nondecreasing in delta
        prev = w;
    }
    // omega(f, 2 delta) <= 3 omega(f, delta)
    const auto lg = make_signal({}, {"log(t)*log(t)+t/4"}, 1.0, 8.0);
    for (double delta : {0.05, 0.1, 0.2})
        CHECK(log_modulus(lg, 2.0 * delta) <= 3.0 * log_modulus(lg, delta) + 1e-9);
}

TEST_CASE("vanishing modulus for log-uniformly continuous signals") {
    const auto lg = make_signal({}, {"log(t)"}, 1.0, 8.0);
    double prev = 1e300;
    for (int j = 1; j <= 7; ++j) {
        const double w = log_modulus(lg, std::pow(2.0, -j));
        CHECK(w <= prev + 1e-15);
        prev = w;
    }
    CHECK(prev < 1e-2);
}

TEST_CASE("pairwise bound |f(p)-f(q)| <= omega (1 + |log p - log q| / delta)") {
    const auto f = make_signal({}, {"log(t) + t/(1+t)"}, 0.5, 8.0);
    const double delta = 0.1;
    const double omega = log_modulus(f, delta, 8000);
    SplitMix64 rng(23);
    for (int i = 0; i < 1000; ++i) {
        const double p = std::exp(rng.uniform(std::log(0.5), std::log(8.0)));
        const double q = std::exp(rng.uniform(std::log(0.5), std::log(8.0)));
        const double lhs = std::abs(f.eval(p) - f.eval(q));
        const double rhs = omega * (1.0 + std::abs(std::log(p) - std::log(q)) / delta);
        CHECK(lhs <= rhs * (1.0 + 1e-6) + 1e-12);
    }
}

TEST_CASE("derivative and norm sups") {
    const auto c = make_signal({}, {"3"}, 0.5, 8.0);
    CHECK(derivative_sup(c, 0.5, 8.0) == 0.0);
    CHECK(sup_norm(c, 0.5, 8.0) == doctest::Approx(3.0));

    const auto lg = make_signal({}, {"log(t)"}, 1.0, std::exp(1.0));
    CHECK(derivative_sup(lg, 1.0, std::exp(1.0)) == doctest::Approx(1.0).epsilon(1e-12));

    const auto f = demo_signal();
    CHECK(sup_norm(f, 0.5, 8.0) == doctest::Approx(22.0 / 3.0).epsilon(1e-12));
    // derivative is taken piecewise; the jumps do not blow it up
    CHECK(derivative_sup(f, 0.5, 8.0) < 20.0);
}

TEST_CASE("point value overrides resolve bit-identical lookups") {
    auto f = demo_signal();
    f.set_point_value(2.0, 42.0);
    CHECK(f.eval(2.0) == 42.0);
    CHECK(f.eval(2.0 * (1.0 + 1e-9)) == doctest::Approx(3.0)); // far enough away
    // one-sided limits ignore the override
    auto [l, r] = f.one_sided_limits(2.0);
    CHECK(l == doctest::Approx(3.0));
    CHECK(r == doctest::Approx(3.0));
}
