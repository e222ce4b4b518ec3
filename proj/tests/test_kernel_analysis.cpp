// Copyright Contributors to the expsamp project
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "expsamp/kernel.hpp"
#include "expsamp/kernel_analysis.hpp"
#include "expsamp/numeric.hpp"
#include "expsamp/quadrature.hpp"
#include "oracles.hpp"

using namespace expsamp;

namespace {
KernelPtr reference_combined() {
    return build_combined(make_bspline(2), 1.0, make_bspline(2), 1.0, 0.75);
}
} // namespace

TEST_CASE("partition of unity") {
    const auto b2 = make_bspline(2);
    CHECK(partition_residual(*b2, std::sqrt(std::exp(1.0))) ==
          doctest::Approx(0.0).epsilon(1e-14));
    CHECK(partition_residual(*b2, 1.0) == doctest::Approx(0.0).epsilon(1e-15));

    const auto combo = reference_combined();
    const auto b3 = make_bspline(3);
    SplitMix64 rng(7);
    for (int i = 0; i < 300; ++i) {
        const double u = std::exp(rng.uniform(0.0, 1.0));
        CHECK(std::abs(partition_residual(*combo, u)) < 1e-12);
        CHECK(std::abs(partition_residual(*b3, u)) < 1e-12);
    }
}

TEST_CASE("psi^- of the order-2 spline is log u on the fundamental interval") {
    const auto b2 = make_bspline(2);
    CHECK(psi_minus(*b2, 1.0) == 0.0);
    for (int i = 1; i < 100; ++i) {
        const double lu = i / 100.0;
        CHECK(psi_minus(*b2, std::exp(lu)) == doctest::Approx(lu).epsilon(1e-13));
    }
}

TEST_CASE("psi^- of the combined kernel is constant 3/4") {
    const auto combo = reference_combined();
    CHECK(psi_minus(*combo, 1.0) == doctest::Approx(0.75).epsilon(1e-15));
    for (int i = 0; i < 100; ++i) {
        const double lu = (i + 0.5) / 100.0;
        CHECK(psi_minus_log(*combo, lu) == doctest::Approx(0.75).epsilon(1e-13));
    }
}

TEST_CASE("psi recurrence with fundamental interval [1, e]") {
    const auto combo = reference_combined();
    const auto b2 = make_bspline(2);
    SplitMix64 rng(11);
    for (int i = 0; i < 1000; ++i) {
        const double u = std::exp(rng.uniform(-3.0, 3.0));
        for (const Kernel* k : {combo.get(), static_cast<const Kernel*>(b2.get())}) {
            CHECK(psi_minus(*k, std::exp(1.0) * u) ==
                  doctest::Approx(psi_minus(*k, u)).epsilon(1e-12));
            CHECK(psi_plus(*k, std::exp(1.0) * u) ==
                  doctest::Approx(psi_plus(*k, u)).epsilon(1e-12));
        }
    }
}

TEST_CASE("splitting identity: psi^+ + psi^- (+ chi(1) on the lattice) = 1") {
    const auto b2 = make_bspline(2);
    const auto combo = reference_combined();
    SplitMix64 rng(13);
    for (const Kernel* k : {static_cast<const Kernel*>(b2.get()), combo.get()}) {
        for (int i = 0; i < 200; ++i) {
            const double lu = rng.uniform(0.001, 0.999); // log u not an integer
            CHECK(psi_plus_log(*k, lu) + psi_minus_log(*k, lu) ==
                  doctest::Approx(1.0).epsilon(1e-12));
        }
        // log u integer: the k = log u term is chi(1)
        CHECK(psi_plus_log(*k, 0.0) + psi_minus_log(*k, 0.0) + k->at_one() ==
              doctest::Approx(1.0).epsilon(1e-12));
        CHECK(psi_plus_log(*k, 2.0) + psi_minus_log(*k, 2.0) + k->at_one() ==
              doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("moments of the order-2 spline") {
    const auto b2 = make_bspline(2);
    const auto golden = oracle::read_golden("oracle_values.txt");

    CHECK(sup_absolute_moment(*b2, 0.0, 2000) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(sup_absolute_moment(*b2, 1.0, 10000) ==
          doctest::Approx(golden.at("M1_bspline2")).epsilon(1e-6));

    // m_0 equals the partition sum, m_1 vanishes (linear reproduction)
    SplitMix64 rng(17);
    for (int i = 0; i < 100; ++i) {
        const double u = std::exp(rng.uniform(0.0, 1.0));
        CHECK(algebraic_moment(*b2, 0, u) == doctest::Approx(1.0).epsilon(1e-13));
        CHECK(algebraic_moment(*b2, 1, u) == doctest::Approx(0.0).epsilon(1e-13));
    }
}

TEST_CASE("single in-support term reduces the moment to one product") {
    // order-1 spline: indicator of |log u| < 1/2, one lattice term at most
    const auto b1 = make_bspline(1);
    const double u = std::exp(0.2);
    CHECK(absolute_moment(*b1, 0.7, u) ==
          doctest::Approx(std::pow(0.2, 0.7)).epsilon(1e-13));
}

TEST_CASE("m_1 of the combined kernel against a direct-summation oracle") {
    const auto combo = reference_combined();
    // independent route: explicit two-term closed form of the kernel
    auto chi = [](double y) {
        const double ln2 = std::log(2.0);
        return 0.25 * bspline_log(2, y + ln2 - 2.0) + 0.75 * bspline_log(2, y + ln2 + 1.0);
    };
    for (double u : {1.0, 1.3, 2.2}) {
        const double lu = std::log(u);
        double expected = 0.0;
        for (int k = -8; k <= 8; ++k) expected += chi(lu - k) * (k - lu);
        CHECK(algebraic_moment(*combo, 1, u) == doctest::Approx(expected).epsilon(1e-13));
    }
}

TEST_CASE("absolute moment recurrence justifies the sup grid") {
    const auto combo = reference_combined();
    SplitMix64 rng(19);
    for (int i = 0; i < 200; ++i) {
        const double u = std::exp(rng.uniform(-2.0, 2.0));
        for (double nu : {0.0, 0.5, 1.0})
            CHECK(absolute_moment(*combo, nu, std::exp(1.0) * u) ==
                  doctest::Approx(absolute_moment(*combo, nu, u)).epsilon(1e-12));
    }
}

TEST_CASE("mellin transform of splines matches sinc powers") {
    for (int n : {2, 3}) {
        const auto k = make_bspline(n);
        for (double t : {1.0, 2.0, 3.0}) {
            const auto v = mellin_transform(*k, {0.0, t});
            const double expected = std::pow(std::sin(t / 2.0) / (t / 2.0), n);
            CHECK(std::abs(v - std::complex<double>(expected, 0.0)) < 1e-8);
        }
    }
    const auto b2 = make_bspline(2);
    CHECK(std::abs(mellin_transform(*b2, {0.0, 0.0}) - 1.0) < 1e-10);
    for (int k = 1; k <= 5; ++k)
        CHECK(std::abs(mellin_transform(*b2, {0.0, 2.0 * M_PI * k})) < 1e-8);
}

TEST_CASE("mellin transform against a Simpson oracle off the imaginary axis") {
    const auto b2 = make_bspline(2);
    const std::complex<double> s{0.5, 1.5};
    const auto v = mellin_transform(*b2, s);
    const double re = oracle::simpson(
        [&](double x) { return bspline_log(2, x) * std::exp(0.5 * x) * std::cos(1.5 * x); }, -1.0,
        1.0, 20000);
    const double im = oracle::simpson(
        [&](double x) { return bspline_log(2, x) * std::exp(0.5 * x) * std::sin(1.5 * x); }, -1.0,
        1.0, 20000);
    CHECK(std::abs(v - std::complex<double>(re, im)) < 1e-9);
}

TEST_CASE("half-line conditions (chi(1) = 0 families)") {
    const auto combo = reference_combined();
    const auto rep = verify_theorem5_conditions(*combo, 3);
    CHECK(rep.hypothesis_ok);
    CHECK(rep.alpha == doctest::Approx(0.75).epsilon(1e-9));
    CHECK(rep.lower_ok);
    CHECK(rep.upper_ok);
    CHECK(rep.mass_ok);
    CHECK(rep.upper[3].real() == doctest::Approx(0.25).epsilon(1e-8)); // k = 0
    CHECK(std::abs(rep.lower[3 + 1]) < 1e-8);                          // k = 1
    CHECK(rep.pass());

    // chi(1) = 1 != 0: hypothesis warning, conditions fail
    const auto b2 = make_bspline(2);
    const auto rep2 = verify_theorem5_conditions(*b2, 2);
    CHECK_FALSE(rep2.hypothesis_ok);
    CHECK_FALSE(rep2.pass());
}

TEST_CASE("mellin-poisson consistency for psi^-") {
    // psi^-(u) = sum_k [chi restricted to u < 1]^M(2 k pi i) u^{-2 k pi i};
    // with the combined kernel all off-center samples vanish, so the sum is
    // alpha to truncation accuracy.
    const auto combo = reference_combined();
    for (double lu : {0.1, 0.37, 0.62, 0.94}) {
        std::complex<double> acc{0.0, 0.0};
        for (int k = -20; k <= 20; ++k) {
            // lower half-line integral = Mellin transform of chi * 1_{u<1}
            const double freq = 2.0 * M_PI * k;
            const auto sup = combo->support_log();
            const auto bps = combo->log_breakpoints();
            auto re = integrate([&](double x) { return combo->eval_log(x) * std::cos(freq * x); },
                                sup.lo, 0.0, 1e-10, bps);
            auto im = integrate([&](double x) { return combo->eval_log(x) * std::sin(freq * x); },
                                sup.lo, 0.0, 1e-10, bps);
            const std::complex<double> mellin{re.value, im.value};
            acc += mellin * std::exp(std::complex<double>(0.0, -freq * lu));
        }
        CHECK(std::abs(acc.imag()) < 1e-6);
        CHECK(acc.real() == doctest::Approx(psi_minus_log(*combo, lu)).epsilon(1e-4));
    }
}

TEST_CASE("kernel report aggregation") {
    CheckOptions opts;
    opts.partition_grid = 500;
    opts.psi_grid = 200;
    opts.sup_grid = 500;
    opts.mellin_K = 2;

    const auto rep_b2 = check_kernel_conditions(*make_bspline(2), opts);
    CHECK_FALSE(rep_b2.alpha_estimate.has_value()); // psi^- = log u, non-constant
    CHECK(rep_b2.psi_spread > 0.9);
    CHECK(rep_b2.chi_at_one == doctest::Approx(1.0));
    CHECK(rep_b2.partition_max_residual < 1e-13);

    const auto rep_combo = check_kernel_conditions(*reference_combined(), opts);
    REQUIRE(rep_combo.alpha_estimate.has_value());
    CHECK(*rep_combo.alpha_estimate == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(rep_combo.chi_at_one == 0.0);
    CHECK(rep_combo.psi_minus_at_one == doctest::Approx(0.75));

    const auto jack = make_jackson(1.0, 1);
    CheckOptions jopts = opts;
    jopts.mellin_K = 0;
    const auto rep_j = check_kernel_conditions(*jack, jopts);
    CHECK(rep_j.chi_at_one ==
          doctest::Approx(jackson_normalization(1.0, 1)).epsilon(1e-12));
    CHECK(rep_j.chi_at_one != 0.0);
    CHECK(rep_j.moment_warning); // nu = 1 >= 2 beta - 1
    CHECK(rep_j.partition_max_residual < 1e-4);
    CHECK(rep_j.partition_max_residual > 0.0);

    const auto kv = report_to_kv(rep_combo);
    CHECK(kv.find("alpha = 0.75") != std::string::npos);
    CHECK(report_to_kv(rep_b2).find("alpha = non-constant") != std::string::npos);
}
