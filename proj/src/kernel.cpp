// Copyright Contributors to the expsamp project
// SPDX-License-Identifier: Apache-2.0
#include "expsamp/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "expsamp/numeric.hpp"
#include "expsamp/quadrature.hpp"

namespace expsamp {

double Kernel::eval(double u) const {
    if (!(u > 0.0)) throw std::domain_error("kernel: argument must be positive");
    return eval_log(std::log(u));
}

std::vector<double> Kernel::log_breakpoints() const {
    auto s = support_log();
    return {s.lo, s.hi};
}

double eval_kernel(const Kernel& kernel, double u) { return kernel.eval(u); }

// ---------------------------------------------------------------------------
// B-splines

double bspline_log(int n, double y) {
    if (n < 1) throw std::domain_error("bspline: order must be >= 1");
    const double half = 0.5 * n;
    // Even in y; the left half keeps only the j < n/2 + y terms of the
    // alternating sum, which bounds the cancellation (one-sided evaluation
    // loses all precision approaching the far edge).
    y = -std::abs(y);
    if (y <= -half) return 0.0;
    // (1/(n-1)!) sum_j (-1)^j C(n,j) (n/2 + y - j)_+^{n-1}
    double sum = 0.0;
    double binom = 1.0;
    for (int j = 0; j <= n; ++j) {
        const double arg = half + y - j;
        if (arg > 0.0) {
            const double term = binom * ipow(arg, n - 1);
            sum += (j % 2 == 0) ? term : -term;
        }
        binom = binom * (n - j) / (j + 1);
    }
    const double v = sum / factorial_d(n - 1);
    return v > 0.0 ? v : 0.0; // alternating sum can leave FP dust at the edges
}

double bspline_eval(int n, double x) {
    if (!(x > 0.0)) throw std::domain_error("bspline: argument must be positive");
    return bspline_log(n, std::log(x));
}

MellinBSpline::MellinBSpline(int order) : order_(order) {
    if (order < 1) throw std::domain_error("MellinBSpline: order must be >= 1");
}

double MellinBSpline::eval_log(double y) const { return bspline_log(order_, y); }

LogInterval MellinBSpline::support_log() const { return {-0.5 * order_, 0.5 * order_}; }

std::vector<double> MellinBSpline::log_breakpoints() const {
    std::vector<double> knots;
    knots.reserve(order_ + 1);
    for (int j = 0; j <= order_; ++j) knots.push_back(-0.5 * order_ + j);
    return knots;
}

std::string MellinBSpline::id() const { return "bspline" + std::to_string(order_); }

KernelPtr make_bspline(int order) { return std::make_shared<MellinBSpline>(order); }

// ---------------------------------------------------------------------------
// Jackson kernels

namespace {

// Asymptotic evaluation of int_Z^inf cos(w z) z^-p dz (and the sin variant)
// by repeated integration by parts; each level shrinks by p/(w Z).
double tail_cos_int(double w, double Z, int p, int depth);
double tail_sin_int(double w, double Z, int p, int depth) {
    if (depth == 0) return 0.0;
    return std::cos(w * Z) * std::pow(Z, -p) / w - (p / w) * tail_cos_int(w, Z, p + 1, depth - 1);
}
double tail_cos_int(double w, double Z, int p, int depth) {
    if (depth == 0) return 0.0;
    return -std::sin(w * Z) * std::pow(Z, -p) / w + (p / w) * tail_sin_int(w, Z, p + 1, depth - 1);
}

// int_Z^inf sinc^{2 beta}(z) dz via the finite cosine expansion of
// sin^{2 beta}(pi z): the constant term integrates in closed form, the
// oscillatory terms by parts.
double sinc_power_tail(double Z, int beta) {
    const int p = 2 * beta;
    double binom = 1.0; // C(2b, b-m) running from m = 0
    for (int i = 0; i < beta; ++i) binom = binom * (2 * beta - i) / (i + 1.0);
    // binom = C(2b, b) now
    const double scale = std::pow(4.0, -beta) / std::pow(M_PI, p);
    double total = binom * scale * std::pow(Z, 1 - p) / (p - 1);
    double c = binom;
    for (int m = 1; m <= beta; ++m) {
        // C(2b, b-m) = C(2b, b-m+1) * (b-m+1) / (b+m)
        c = c * (beta - m + 1) / (beta + m);
        const double coeff = 2.0 * ((m % 2 == 0) ? c : -c);
        total += coeff * scale * tail_cos_int(2.0 * M_PI * m, Z, p, 24);
    }
    return total;
}

double sinc_power_integral(int beta) {
    const double Z = 64.0;
    std::vector<double> zeros;
    for (int j = 1; j < 64; ++j) zeros.push_back(static_cast<double>(j));
    auto body = integrate([beta](double z) { return ipow(sinc(z) * sinc(z), beta); }, 0.0, Z,
                          1e-13, zeros, 40000);
    return 2.0 * (body.value + sinc_power_tail(Z, beta));
}

} // namespace

double jackson_normalization(double gamma, int beta) {
    if (!(gamma >= 1.0)) throw std::domain_error("jackson: gamma must be >= 1");
    if (beta < 1) throw std::domain_error("jackson: beta must be >= 1");
    // d^{-1} = int sinc^{2b}(y / (2 g b pi)) dy = 2 g b pi * int sinc^{2b}(z) dz
    const double dinv = 2.0 * gamma * beta * M_PI * sinc_power_integral(beta);
    if (!(dinv > 0.0) || !std::isfinite(dinv))
        throw QuadratureError("jackson_normalization: quadrature failed");
    return 1.0 / dinv;
}

MellinJackson::MellinJackson(double gamma, int beta, double trunc_epsilon, double max_log_radius)
    : gamma_(gamma), beta_(beta), trunc_epsilon_(trunc_epsilon) {
    if (!(gamma >= 1.0)) throw std::domain_error("jackson: gamma must be >= 1");
    if (beta < 1) throw std::domain_error("jackson: beta must be >= 1");
    if (!(trunc_epsilon > 0.0)) throw std::domain_error("jackson: trunc_epsilon must be positive");
    norm_ = jackson_normalization(gamma, beta);

    // Envelope |chi(x)| <= d (2 g b)^{2b} |log x|^{-2b}; the node-sum tail
    // beyond radius R over integer-spaced offsets is at most
    //   2 d (2gb)^{2b} [R^{-2b} + R^{1-2b}/(2b-1)].
    const double C = 2.0 * norm_ * std::pow(2.0 * gamma * beta, 2.0 * beta);
    auto tail = [&](double R) {
        return C * (std::pow(R, -2.0 * beta) + std::pow(R, 1.0 - 2.0 * beta) / (2.0 * beta - 1.0));
    };
    double R = std::pow(C * (1.0 + 1.0 / (2.0 * beta - 1.0)) / trunc_epsilon,
                        1.0 / (2.0 * beta - 1.0));
    R = std::max(R, 6.0 * gamma * beta * M_PI); // keep at least a few lobes
    radius_ = std::min(R, max_log_radius);
    tail_bound_ = tail(radius_);
}

double MellinJackson::eval_log(double y) const {
    if (std::abs(y) > radius_) return 0.0;
    const double s = sinc(y / (2.0 * gamma_ * beta_ * M_PI));
    return norm_ * ipow(s * s, beta_);
}

LogInterval MellinJackson::support_log() const { return {-radius_, radius_}; }

std::vector<double> MellinJackson::log_breakpoints() const {
    // Support edges plus the first few sinc periods around the peak.
    std::vector<double> bps{-radius_, radius_};
    const double period = 2.0 * gamma_ * beta_ * M_PI;
    for (int j = -8; j <= 8; ++j) {
        const double y = j * period;
        if (y > -radius_ && y < radius_) bps.push_back(y);
    }
    std::sort(bps.begin(), bps.end());
    return bps;
}

bool MellinJackson::moment_finite(double nu) const { return nu < 2.0 * beta_ - 1.0; }

std::string MellinJackson::id() const {
    std::ostringstream os;
    os << "jackson:" << gamma_ << ":" << beta_;
    return os.str();
}

KernelPtr make_jackson(double gamma, int beta, double trunc_epsilon, double max_log_radius) {
    return std::make_shared<MellinJackson>(gamma, beta, trunc_epsilon, max_log_radius);
}

// ---------------------------------------------------------------------------
// Combined kernels (chi(1) = 0 construction)

namespace {

// Numeric check that the kernel vanishes outside the declared log radius.
void check_declared_support(const Kernel& k, double radius, const char* which) {
    auto s = k.support_log();
    if (s.lo < -radius - 1e-12 || s.hi > radius + 1e-12)
        throw std::invalid_argument(std::string("build_combined: declared support of inner ") +
                                    which + " exceeds radius " + std::to_string(radius));
    constexpr int kScan = 2048;
    for (int i = 0; i <= kScan; ++i) {
        const double margin = 2.0;
        const double y = -radius - margin + (2.0 * (radius + margin)) * i / kScan;
        if (std::abs(y) > radius && k.eval_log(y) != 0.0)
            throw std::invalid_argument(std::string("build_combined: inner ") + which +
                                        " is nonzero at log-distance " + std::to_string(y) +
                                        " outside declared radius " + std::to_string(radius));
    }
}

} // namespace

CombinedKernel::CombinedKernel(KernelPtr inner_a, double a, KernelPtr inner_b, double b,
                               double alpha)
    : inner_a_(std::move(inner_a)), inner_b_(std::move(inner_b)), a_(a), b_(b), alpha_(alpha) {
    if (!inner_a_ || !inner_b_) throw std::invalid_argument("build_combined: null inner kernel");
    if (!(a > 0.0) || !(b > 0.0))
        throw std::invalid_argument("build_combined: radii must be positive");
    check_declared_support(*inner_a_, a_, "a");
    check_declared_support(*inner_b_, b_, "b");

    // chi_a(2 u e^{-a-1}): inner log-argument is y + log 2 - a - 1.
    shift_a_ = std::log(2.0) - a_ - 1.0;
    // chi_b(2 u e^{b}): inner log-argument is y + log 2 + b.
    shift_b_ = std::log(2.0) + b_;

    const auto sa = inner_a_->support_log();
    const auto sb = inner_b_->support_log();
    seg_a_ = {sa.lo - shift_a_, sa.hi - shift_a_};
    seg_b_ = {sb.lo - shift_b_, sb.hi - shift_b_};

    // With supports inside the declared radii the two segments straddle
    // u = 1: [.., -log 2] on the left and [1 - log 2, ..] on the right.
    if (seg_b_.hi >= 0.0 || seg_a_.lo <= 0.0)
        throw std::invalid_argument("build_combined: shifted supports cover u = 1");
    if (eval_log(0.0) != 0.0)
        throw std::invalid_argument("build_combined: chi(1) != 0 after shifting");
}

double CombinedKernel::eval_log(double y) const {
    return (1.0 - alpha_) * inner_a_->eval_log(y + shift_a_) +
           alpha_ * inner_b_->eval_log(y + shift_b_);
}

LogInterval CombinedKernel::support_log() const { return {seg_b_.lo, seg_a_.hi}; }

std::vector<double> CombinedKernel::log_breakpoints() const {
    std::vector<double> bps;
    for (double k : inner_a_->log_breakpoints()) bps.push_back(k - shift_a_);
    for (double k : inner_b_->log_breakpoints()) bps.push_back(k - shift_b_);
    std::sort(bps.begin(), bps.end());
    return bps;
}

bool CombinedKernel::moment_finite(double nu) const {
    return inner_a_->moment_finite(nu) && inner_b_->moment_finite(nu);
}

std::string CombinedKernel::id() const {
    std::ostringstream os;
    os << "combined(alpha=" << alpha_ << ";a=" << a_ << ";" << inner_a_->id() << ";b=" << b_ << ";"
       << inner_b_->id() << ")";
    return os.str();
}

KernelPtr build_combined(KernelPtr inner_a, double a, KernelPtr inner_b, double b, double alpha) {
    return std::make_shared<CombinedKernel>(std::move(inner_a), a, std::move(inner_b), b, alpha);
}

} // namespace expsamp
