// Copyright Contributors to the expsamp project
// SPDX-License-Identifier: Apache-2.0
#include "expsamp/kernel_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "expsamp/numeric.hpp"
#include "expsamp/quadrature.hpp"

namespace expsamp {
namespace {

constexpr double kIntegerSnap = 1e-12;

long long floor_ll(double x) { return static_cast<long long>(std::floor(x)); }
long long ceil_ll(double x) { return static_cast<long long>(std::ceil(x)); }

// Offsets k with chi(e^{lu - k}) possibly nonzero: lu - k in [lo, hi].
struct OffsetRange {
    long long k_min, k_max;
};
OffsetRange offsets_in_support(const Kernel& kernel, double lu) {
    const auto s = kernel.support_log();
    return {ceil_ll(lu - s.hi), floor_ll(lu - s.lo)};
}

double snap_threshold(double lu, bool& integer) {
    const double r = std::round(lu);
    integer = std::abs(lu - r) <= kIntegerSnap;
    return r;
}

} // namespace

double partition_residual(const Kernel& kernel, double u) {
    if (!(u > 0.0)) throw std::domain_error("partition_residual: u must be positive");
    const double lu = std::log(u);
    const auto [k_min, k_max] = offsets_in_support(kernel, lu);
    NeumaierSum sum;
    for (long long k = k_min; k <= k_max; ++k) sum.add(kernel.eval_log(lu - k));
    return sum.value() - 1.0;
}

double psi_minus_log(const Kernel& kernel, double lu) {
    bool integer = false;
    const double r = snap_threshold(lu, integer);
    const long long k_first = integer ? static_cast<long long>(r) + 1 : ceil_ll(lu);
    const long long k_last = floor_ll(lu - kernel.support_log().lo);
    NeumaierSum sum;
    for (long long k = k_first; k <= k_last; ++k) sum.add(kernel.eval_log(lu - k));
    return sum.value();
}

double psi_plus_log(const Kernel& kernel, double lu) {
    bool integer = false;
    const double r = snap_threshold(lu, integer);
    const long long k_last = integer ? static_cast<long long>(r) - 1 : floor_ll(lu);
    const long long k_first = ceil_ll(lu - kernel.support_log().hi);
    NeumaierSum sum;
    for (long long k = k_first; k <= k_last; ++k) sum.add(kernel.eval_log(lu - k));
    return sum.value();
}

double psi_minus(const Kernel& kernel, double u) {
    if (!(u > 0.0)) throw std::domain_error("psi_minus: u must be positive");
    return psi_minus_log(kernel, std::log(u));
}

double psi_plus(const Kernel& kernel, double u) {
    if (!(u > 0.0)) throw std::domain_error("psi_plus: u must be positive");
    return psi_plus_log(kernel, std::log(u));
}

double algebraic_moment(const Kernel& kernel, int nu, double u) {
    if (nu < 0) throw std::domain_error("algebraic_moment: nu must be >= 0");
    if (!(u > 0.0)) throw std::domain_error("algebraic_moment: u must be positive");
    const double lu = std::log(u);
    const auto [k_min, k_max] = offsets_in_support(kernel, lu);
    NeumaierSum sum;
    for (long long k = k_min; k <= k_max; ++k)
        sum.add(kernel.eval_log(lu - k) * ipow(static_cast<double>(k) - lu, nu));
    return sum.value();
}

double absolute_moment(const Kernel& kernel, double nu, double u) {
    if (!(u > 0.0)) throw std::domain_error("absolute_moment: u must be positive");
    return absolute_moment_log(kernel, nu, std::log(u));
}

double absolute_moment_log(const Kernel& kernel, double nu, double lu) {
    if (!(nu >= 0.0)) throw std::domain_error("absolute_moment: nu must be >= 0");
    const auto [k_min, k_max] = offsets_in_support(kernel, lu);
    NeumaierSum sum;
    for (long long k = k_min; k <= k_max; ++k) {
        const double chi = kernel.eval_log(lu - k);
        if (chi != 0.0) sum.add(std::abs(chi) * std::pow(std::abs(static_cast<double>(k) - lu), nu));
    }
    return sum.value();
}

double sup_absolute_moment(const Kernel& kernel, double nu, int grid_size) {
    if (grid_size < 2) throw std::domain_error("sup_absolute_moment: grid too small");
    double best = 0.0;
    for (int i = 0; i <= grid_size; ++i) {
        const double lu = static_cast<double>(i) / grid_size; // [0, 1] = log of [1, e]
        const double u = std::exp(lu);
        best = std::max(best, absolute_moment(kernel, nu, u));
    }
    return best;
}

std::complex<double> mellin_transform(const Kernel& kernel, std::complex<double> s,
                                      double abs_tol) {
    // int_0^inf y^{s-1} chi(y) dy = int e^{s x} chi(e^x) dx over the support.
    const auto sup = kernel.support_log();
    const auto bps = kernel.log_breakpoints();
    const double c = s.real(), t = s.imag();
    const int max_panels = 40000;
    auto real_part = integrate(
        [&](double x) { return kernel.eval_log(x) * std::exp(c * x) * std::cos(t * x); }, sup.lo,
        sup.hi, abs_tol, bps, max_panels);
    auto imag_part = integrate(
        [&](double x) { return kernel.eval_log(x) * std::exp(c * x) * std::sin(t * x); }, sup.lo,
        sup.hi, abs_tol, bps, max_panels);
    return {real_part.value, imag_part.value};
}

namespace {

// int over {u < 1} (lower) or {u > 1} (upper) of chi(u) u^{2 k pi i} du/u,
// i.e. int chi(e^x) e^{2 k pi i x} dx over the corresponding log half-line.
std::complex<double> half_line_integral(const Kernel& kernel, int k, bool lower, double abs_tol) {
    const auto sup = kernel.support_log();
    const double a = lower ? sup.lo : std::max(sup.lo, 0.0);
    const double b = lower ? std::min(sup.hi, 0.0) : sup.hi;
    if (a >= b) return {0.0, 0.0};
    const double freq = 2.0 * M_PI * k;
    const auto bps = kernel.log_breakpoints();
    auto re = integrate([&](double x) { return kernel.eval_log(x) * std::cos(freq * x); }, a, b,
                        abs_tol, bps, 40000);
    auto im = integrate([&](double x) { return kernel.eval_log(x) * std::sin(freq * x); }, a, b,
                        abs_tol, bps, 40000);
    return {re.value, im.value};
}

} // namespace

Theorem5Report verify_theorem5_conditions(const Kernel& kernel, int K, double tol) {
    if (K < 1) throw std::domain_error("verify_theorem5_conditions: K must be >= 1");
    Theorem5Report rep;
    rep.K = K;
    rep.tol = tol;
    rep.hypothesis_ok = kernel.at_one() == 0.0;
    rep.lower.resize(2 * K + 1);
    rep.upper.resize(2 * K + 1);
    const double quad_tol = tol * 1e-2;
    rep.lower_ok = rep.upper_ok = true;
    for (int k = -K; k <= K; ++k) {
        const auto lo = half_line_integral(kernel, k, true, quad_tol);
        const auto up = half_line_integral(kernel, k, false, quad_tol);
        rep.lower[k + K] = lo;
        rep.upper[k + K] = up;
        if (k != 0) {
            if (std::abs(lo) >= tol) rep.lower_ok = false;
            if (std::abs(up) >= tol) rep.upper_ok = false;
        }
    }
    rep.alpha = rep.lower[K].real();
    rep.mass_ok = std::abs(rep.lower[K] + rep.upper[K] - 1.0) < tol;
    return rep;
}

KernelReport check_kernel_conditions(const Kernel& kernel, const CheckOptions& options) {
    KernelReport rep;
    rep.kernel_id = kernel.id();
    rep.chi_at_one = kernel.at_one();
    rep.psi_minus_at_one = psi_minus_log(kernel, 0.0);
    rep.nu = options.nu;
    rep.moment_warning = !kernel.moment_finite(options.nu);

    // Shrink scan grids for wide (truncated) supports.
    const double width = std::max(1.0, kernel.support_log().length());
    auto capped = [&](int requested) {
        const int cap = static_cast<int>(std::max(32.0, options.scan_budget / width));
        return std::min(requested, cap);
    };

    const int pgrid = capped(options.partition_grid);
    SplitMix64 rng(options.seed);
    double worst = 0.0;
    for (int i = 0; i < pgrid; ++i) {
        const double u = std::exp(rng.uniform(0.0, 1.0));
        worst = std::max(worst, std::abs(partition_residual(kernel, u)));
    }
    rep.partition_max_residual = worst;

    const int psi_grid = capped(options.psi_grid);
    rep.psi_minus_fundamental.reserve(psi_grid);
    double psi_min = 0.0, psi_max = 0.0;
    for (int i = 0; i < psi_grid; ++i) {
        const double lu = (i + 0.5) / psi_grid; // interior of (1, e)
        const double v = psi_minus_log(kernel, lu);
        rep.psi_minus_fundamental.emplace_back(std::exp(lu), v);
        if (i == 0) psi_min = psi_max = v;
        psi_min = std::min(psi_min, v);
        psi_max = std::max(psi_max, v);
    }
    rep.psi_spread = psi_max - psi_min;
    if (rep.psi_spread < options.psi_const_tol)
        rep.alpha_estimate = 0.5 * (psi_min + psi_max);

    rep.m0 = sup_absolute_moment(kernel, 0.0, capped(options.sup_grid));
    rep.m_nu = sup_absolute_moment(kernel, options.nu, capped(options.sup_grid));

    rep.mellin_K = width <= options.mellin_width_limit ? options.mellin_K : 0;
    rep.mellin_at_2kpi.resize(2 * rep.mellin_K + 1);
    for (int k = -rep.mellin_K; k <= rep.mellin_K; ++k)
        rep.mellin_at_2kpi[k + rep.mellin_K] =
            mellin_transform(kernel, {0.0, 2.0 * M_PI * k}, options.mellin_tol);
    return rep;
}

std::string report_to_kv(const KernelReport& rep) {
    std::ostringstream os;
    os.precision(12);
    os << "kernel = " << rep.kernel_id << "\n";
    os << "partition_max_residual = " << rep.partition_max_residual << "\n";
    os << "chi_at_one = " << rep.chi_at_one << "\n";
    os << "psi_minus_at_one = " << rep.psi_minus_at_one << "\n";
    os << "m0 = " << rep.m0 << "\n";
    os << "nu = " << rep.nu << "\n";
    os << "m_nu = " << rep.m_nu << "\n";
    os << "moment_warning = " << (rep.moment_warning ? "true" : "false") << "\n";
    os << "psi_spread = " << rep.psi_spread << "\n";
    if (rep.alpha_estimate)
        os << "alpha = " << *rep.alpha_estimate << "\n";
    else
        os << "alpha = non-constant\n";
    for (int k = -rep.mellin_K; k <= rep.mellin_K; ++k) {
        const auto v = rep.mellin_at_2kpi[k + rep.mellin_K];
        os << "mellin_2pi_" << k << " = " << v.real() << (v.imag() < 0 ? " - " : " + ")
           << std::abs(v.imag()) << "i\n";
    }
    return os.str();
}

} // namespace expsamp
