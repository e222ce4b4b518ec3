// Copyright Contributors to the expsamp project
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "expsamp/kernel_analysis.hpp"
#include "expsamp/numeric.hpp"
#include "expsamp/sampling.hpp"
#include "expsamp/signal.hpp"

using namespace expsamp;

namespace {

KernelPtr reference_combined() {
    return build_combined(make_bspline(2), 1.0, make_bspline(2), 1.0, 0.75);
}

PiecewiseSignal demo_signal() {
    return make_signal({1.5, 3.5, 5.5}, {"11/(2*t^2+1)", "3", "2", "12/(1+2*t)"}, 0.5, 8.0);
}

KernelReport quick_report(const Kernel& k) {
    CheckOptions opts;
    opts.partition_grid = 200;
    opts.psi_grid = 400;
    opts.sup_grid = 400;
    opts.mellin_K = 1;
    return check_kernel_conditions(k, opts);
}

} // namespace

TEST_CASE("node windows") {
    const auto b2 = make_bspline(2);
    {
        const auto [k_min, k_max] = node_window(*b2, 1.0, 1.0);
        CHECK(k_min == -1);
        CHECK(k_max == 1); // boundary terms included, evaluate to zero
    }
    {
        const auto combo = reference_combined();
        const auto [k_min, k_max] = node_window(*combo, 5.0, 1.5);
        CHECK(k_min <= k_max);
        int nonzero = 0;
        const double lu = 5.0 * std::log(1.5);
        for (long long k = k_min; k <= k_max; ++k)
            if (combo->eval_log(lu - k) != 0.0) ++nonzero;
        CHECK(nonzero >= 1);
    }
    {
        // t = 1: window centered at zero for any kernel
        const auto [k_min, k_max] = node_window(*b2, 17.0, 1.0);
        CHECK(k_min == -k_max);
    }
    CHECK_THROWS_AS(node_window(*b2, -1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(node_window(*b2, 1.0, 0.0), std::domain_error);
}

TEST_CASE("series is exact on constants") {
    const auto c5 = make_signal({}, {"5"}, 0.5, 8.0);
    const auto combo = reference_combined();
    const auto b3 = make_bspline(3);
    for (double w : {2.0, 7.5, 33.0, 150.0}) {
        for (double t : {0.7, 1.0, 1.5, 3.9, 6.2}) {
            CHECK(evaluate_series(*combo, c5, w, t) == doctest::Approx(5.0).epsilon(1e-12));
            CHECK(evaluate_series(*b3, c5, w, t) == doctest::Approx(5.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("wide truncated kernels: node underflow is clamped, sums stay honest") {
    // the truncated Jackson window reaches offsets whose nodes leave the
    // double range; for bounded signals the clamp evaluates the 0+/inf limit
    const auto jack = make_jackson(1.0, 1);
    const auto c5 = make_signal({}, {"5"}, 0.5, 8.0);
    const double v = evaluate_series(*jack, c5, 2.0, 1.5);
    CHECK(std::abs(v - 5.0) < 5.0 * 2e-5); // within the truncation budget
    const auto demo = demo_signal();
    CHECK(std::isfinite(evaluate_series(*jack, demo, 5.0, 1.5)));
}

TEST_CASE("reference table spot values") {
    const auto combo = reference_combined();
    const auto f = demo_signal();
    CHECK(evaluate_series(*combo, f, 5.0, 1.5) == doctest::Approx(3.0036).epsilon(1e-3));
    CHECK(evaluate_series(*combo, f, 50.0, 3.5) == doctest::Approx(2.25).epsilon(1e-6));
    CHECK(evaluate_series(*combo, f, 200.0, 5.5) == doctest::Approx(1.2442).epsilon(1e-3));
}

TEST_CASE("small w at a continuity point inside a flat piece") {
    // at w = 5 the node window still reaches into the rational piece, so the
    // value sits near (but below) the plateau
    const auto combo = reference_combined();
    const auto f = demo_signal();
    const double v = evaluate_series(*combo, f, 5.0, 2.0);
    CHECK(std::abs(v - 3.0) < 0.25);
    CHECK(v == doctest::Approx(2.7936).epsilon(1e-3));
}

TEST_CASE("alignment classification") {
    {
        const auto al = classify_alignment(5.0, std::exp(3.0 / 5.0), 1e-9);
        CHECK(al.aligned);
        CHECK(al.m == 3);
    }
    CHECK_FALSE(classify_alignment(5.0, 1.5, 1e-9).aligned); // 5 log 1.5 = 2.027...
    {
        const auto al = classify_alignment(123.0, 1.0, 1e-9);
        CHECK(al.aligned);
        CHECK(al.m == 0);
    }
}

TEST_CASE("representation identity, deterministic cases") {
    const auto combo = reference_combined();
    const auto f = demo_signal();

    auto d = representation_decomposition(*combo, f, 10.0, 1.5);
    CHECK_FALSE(d.alignment.aligned);
    CHECK(d.psi_minus_val == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(d.residual < 1e-12);

    // continuity point: both limits coincide, the psi term drops out
    auto d2 = representation_decomposition(*combo, f, 13.0, 2.0);
    CHECK(d2.residual < 1e-12);
    CHECK(d2.reconstructed == doctest::Approx(d2.series_h + f.eval(2.0)).epsilon(1e-13));

    // aligned branch with the integer carried explicitly
    const double w = 10.0;
    const double t = std::exp(7.0 / w);
    auto d3 = representation_decomposition(*combo, f, w, t, Alignment{true, 7});
    CHECK(d3.residual < 1e-11);
    CHECK(classify_alignment(w, t, 1e-9).aligned);
}

TEST_CASE("aligned identity with a pinned value distinct from both limits") {
    // f(t) appears only through the chi(1) term; pin it away from the
    // one-sided limits to make that term carry real weight.
    const auto b3 = make_bspline(3); // chi(1) = 3/4
    const double w = 8.0;
    const double t = std::exp(5.0 / w); // lattice point, m = 5
    auto f = demo_signal();
    f.set_point_value(t, -7.0);
    const auto d = representation_decomposition(*b3, f, w, t, Alignment{true, 5});
    CHECK(std::abs(d.chi_one_term) > 1.0); // the term is alive
    CHECK(d.residual < 1e-11);

    const auto cfg = SamplingConfig{w, 1e-10, 1e-9};
    CHECK(classify_alignment(cfg, t).aligned);
    CHECK(evaluate_series(*b3, f, cfg, t) == doctest::Approx(d.direct));
}

TEST_CASE("representation identity over randomized kernels, signals, branches") {
    const std::vector<KernelPtr> kernels = {
        make_bspline(2), make_bspline(3), reference_combined(),
        build_combined(make_bspline(3), 1.5, make_bspline(2), 1.0, 0.4)};
    const std::vector<PiecewiseSignal> signals = {
        demo_signal(), make_signal({}, {"log(t)+1"}, 0.5, 8.0),
        make_signal({2.0}, {"t/(1+t)", "exp(-t)+2"}, 0.5, 8.0)};

    SplitMix64 rng(101);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const auto& kernel = *kernels[rng.next() % kernels.size()];
        const auto& f = signals[rng.next() % signals.size()];
        const double w = rng.uniform(2.0, 120.0);
        Decomposition d;
        if (i % 2 == 0) {
            const double t = rng.uniform(0.6, 7.0);
            d = representation_decomposition(kernel, f, w, t);
        } else {
            // aligned: t constructed from an integer lattice point
            const long long m_lo = static_cast<long long>(std::ceil(w * std::log(0.6)));
            const long long m_hi = static_cast<long long>(std::floor(w * std::log(7.0)));
            const long long m = m_lo + static_cast<long long>(rng.next() % (m_hi - m_lo + 1));
            const double t = std::exp(static_cast<double>(m) / w);
            d = representation_decomposition(kernel, f, w, t, Alignment{true, m});
        }
        worst = std::max(worst, d.residual);
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("jump limit predictions") {
    const auto combo = reference_combined();
    const auto rep = quick_report(*combo);
    const auto f = demo_signal();

    const auto p1 = predict_jump_limit(rep, f.jump_at(1.5), Alignment{false, 0});
    REQUIRE(p1.has_value());
    CHECK(*p1 == doctest::Approx(2.75).epsilon(1e-12));

    const auto p3 = predict_jump_limit(rep, f.jump_at(5.5), Alignment{false, 0});
    REQUIRE(p3.has_value());
    CHECK(*p3 == doctest::Approx(1.25).epsilon(1e-12));

    // chi(1) = 0: aligned and non-aligned predictions coincide
    const auto p1a = predict_jump_limit(rep, f.jump_at(1.5), Alignment{true, 2});
    CHECK(*p1a == doctest::Approx(*p1).epsilon(1e-12));

    // order-2 spline: psi^-(1) = 0 and chi(1) = 1, so the aligned limit is f(t)
    const auto b2 = make_bspline(2);
    const auto rep2 = quick_report(*b2);
    const auto pb = predict_jump_limit(rep2, f.jump_at(1.5), Alignment{true, 1});
    REQUIRE(pb.has_value());
    CHECK(*pb == doctest::Approx(f.eval(1.5)).epsilon(1e-12));
    // non-aligned: psi^- is not constant, no limit exists
    CHECK_FALSE(predict_jump_limit(rep2, f.jump_at(1.5), Alignment{false, 0}).has_value());

    // removable discontinuity with chi(1) = 0 converges to the common limit
    JumpPoint removable{2.0, 3.0, 3.0, 42.0};
    const auto pr = predict_jump_limit(rep, removable, Alignment{false, 0});
    CHECK(*pr == doctest::Approx(3.0));
    CHECK(*predict_jump_limit(rep, removable, Alignment{true, 4}) == doctest::Approx(3.0));
    // with chi(1) = 1 the aligned limit picks up the pinned value instead
    CHECK(*predict_jump_limit(rep2, removable, Alignment{true, 4}) == doctest::Approx(42.0));
    // non-aligned removable: the limit exists for every kernel, even with
    // non-constant psi^- (the psi term multiplies a zero jump)
    REQUIRE(predict_jump_limit(rep2, removable, Alignment{false, 0}).has_value());
    CHECK(*predict_jump_limit(rep2, removable, Alignment{false, 0}) == doctest::Approx(3.0));
}

TEST_CASE("aligned subsequences converge to the aligned prediction") {
    const auto f = demo_signal();
    const double lt = std::log(1.5);

    // order 2 reproduces the node value exactly on the lattice
    const auto b2 = make_bspline(2);
    for (int m : {25, 100, 400}) {
        const double w = m / lt;
        CHECK(std::abs(evaluate_series(*b2, f, w, 1.5) - 3.0) < 1e-9);
    }

    // order 3 exercises all three terms of the aligned limit:
    // 0.125 f(t+0) + 0.125 f(t-0) + 0.75 f(t) = 2.875
    const auto b3 = make_bspline(3);
    const auto rep3 = quick_report(*b3);
    const auto predicted = predict_jump_limit(rep3, f.jump_at(1.5), Alignment{true, 0});
    REQUIRE(predicted.has_value());
    CHECK(*predicted == doctest::Approx(2.875).epsilon(1e-12));
    double prev = 1e300;
    for (int m : {25, 100, 400, 1600}) {
        const double err = std::abs(evaluate_series(*b3, f, m / lt, 1.5) - 2.875);
        CHECK(err < prev);
        prev = err;
    }
    CHECK(prev < 2e-4);
}

TEST_CASE("gap to the predicted limit shrinks monotonically in w") {
    const auto combo = reference_combined();
    const auto f = demo_signal();
    const double ws[] = {5, 10, 20, 50, 100, 200};
    for (auto [t, limit] : {std::pair{1.5, 2.75}, std::pair{5.5, 1.25}}) {
        double prev = 1e300;
        for (double w : ws) {
            const double gap = std::abs(evaluate_series(*combo, f, w, t) - limit);
            CHECK(gap < prev);
            prev = gap;
        }
        CHECK(prev < 6e-3);
    }
}

TEST_CASE("convergence at continuity points") {
    const auto combo = reference_combined();
    const auto f = demo_signal();
    SplitMix64 rng(31);
    int tested = 0;
    while (tested < 100) {
        const double t = std::exp(rng.uniform(std::log(0.6), std::log(7.5)));
        bool near_jump = false;
        for (double bp : f.breakpoints())
            if (std::abs(std::log(t) - std::log(bp)) < 0.12) near_jump = true;
        if (near_jump) continue;
        ++tested;
        const double e_small = std::abs(evaluate_series(*combo, f, 50.0, t) - f.eval(t));
        const double e_large = std::abs(evaluate_series(*combo, f, 800.0, t) - f.eval(t));
        CHECK(e_large < 0.02);
        CHECK(e_large <= e_small + 1e-12);
    }
}

TEST_CASE("divergence witness: non-constant psi^- vs constant psi^-") {
    const auto b2 = make_bspline(2);
    const auto step = make_signal({2.0}, {"0", "1"}, 0.5, 8.0);
    const auto wit = divergence_witness(*b2, step, 2.0, 64);
    CHECK(wit.aligned_limit == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(wit.offset_limit == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(wit.gap == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(wit.predicted_gap == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(wit.aligned_cauchy_ok);
    CHECK(wit.offset_cauchy_ok);

    // constant psi^-: both subsequences meet at the jump limit
    const auto combo = reference_combined();
    const auto f = demo_signal();
    const auto wit2 = divergence_witness(*combo, f, 1.5, 2000);
    CHECK(wit2.gap < 1e-6);
    CHECK(wit2.predicted_gap < 1e-12);

    CHECK_THROWS_AS(divergence_witness(*b2, step, 1.0, 64), std::domain_error);

    // t < 1: log t negative, subsequences run through negative lattice points
    const auto low_step = make_signal({0.8}, {"0", "1"}, 0.25, 4.0);
    const auto wit3 = divergence_witness(*b2, low_step, 0.8, 64);
    CHECK(wit3.gap == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(wit3.predicted_gap == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("divergence witness: removable discontinuity") {
    // equal one-sided limits, pinned point value different from them
    auto f = make_signal({2.0}, {"3", "3"}, 0.5, 8.0);
    f.set_point_value(2.0, 42.0);

    // chi(1) = 0: the pinned value is invisible, both branches go to 3
    const auto combo = reference_combined();
    const auto wit = divergence_witness(*combo, f, 2.0, 64);
    CHECK(wit.gap < 1e-9);
    CHECK(wit.aligned_limit == doctest::Approx(3.0).epsilon(1e-9));

    // chi(1) = 1: the aligned branch finds the pinned value
    const auto b2 = make_bspline(2);
    const auto wit2 = divergence_witness(*b2, f, 2.0, 64);
    CHECK(wit2.aligned_limit == doctest::Approx(42.0).epsilon(1e-6));
    CHECK(wit2.offset_limit == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(wit2.predicted_gap == doctest::Approx(39.0).epsilon(1e-9));
}

TEST_CASE("jump analysis batch") {
    const auto combo = reference_combined();
    const auto rep = quick_report(*combo);
    const auto f = demo_signal();
    const double ws[] = {5, 10, 20, 50, 100, 200};
    const auto ja = analyze_jump(*combo, rep, f, 3.5, ws);
    CHECK(ja.measured.size() == 6);
    REQUIRE(ja.predicted_nonaligned.has_value());
    CHECK(*ja.predicted_nonaligned == doctest::Approx(2.25).epsilon(1e-12));
    for (const auto& [w, v] : ja.measured) CHECK(v == doctest::Approx(2.25).epsilon(1e-9));
}
