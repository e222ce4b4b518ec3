// Copyright Contributors to the expsamp project
// SPDX-License-Identifier: Apache-2.0
#include "expsamp/error_lab.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <vector>

#include "expsamp/kernel_analysis.hpp"
#include "expsamp/numeric.hpp"
#include "expsamp/sampling.hpp"

namespace expsamp {
namespace {

constexpr double kPassSlackRel = 1e-9;
constexpr double kPassSlackAbs = 1e-12;

bool within_bound(double empirical, double bound) {
    return empirical <= bound * (1.0 + kPassSlackRel) + kPassSlackAbs;
}

// Norm/modulus window inflated so that every node feeding the series at
// some t inside the window is covered.
std::pair<double, double> inflated_window(const Kernel& kernel, const PiecewiseSignal& f,
                                          double w) {
    const auto s = kernel.support_log();
    const double margin = std::max(std::abs(s.lo), std::abs(s.hi)) / w + 1.0 / w;
    return {f.window_lo() * std::exp(-margin), f.window_hi() * std::exp(margin)};
}

std::vector<double> log_uniform_grid(double lo, double hi, int grid) {
    std::vector<double> ts;
    ts.reserve(grid + 1);
    const double la = std::log(lo), lb = std::log(hi);
    for (int i = 0; i <= grid; ++i) ts.push_back(std::exp(la + (lb - la) * i / grid));
    return ts;
}

struct SupMoments {
    double m0, m1;
};
SupMoments sup_moments(const Kernel& kernel) {
    return {sup_absolute_moment(kernel, 0.0, 4000), sup_absolute_moment(kernel, 1.0, 4000)};
}

} // namespace

std::string report_to_kv(const ErrorReport& r) {
    std::ostringstream os;
    char buf[40];
    auto fmt = [&buf](double v) {
        std::snprintf(buf, sizeof buf, "%.12g", v);
        return std::string(buf);
    };
    os << "experiment = " << r.experiment << "\n";
    os << "kernel = " << r.kernel_id << "\n";
    os << "w = " << fmt(r.w) << "\n";
    os << "bound = " << fmt(r.bound) << "\n";
    os << "empirical = " << fmt(r.empirical) << "\n";
    os << "pass = " << (r.pass ? "true" : "false") << "\n";
    os << "seed = " << r.seed << "\n";
    for (const auto& [k, v] : r.constituents) os << k << " = " << fmt(v) << "\n";
    return os.str();
}

namespace {

struct RateConstituents {
    double m0, mnu, omega, fnorm;
    double bound(double w, double nu) const {
        return omega * (mnu + 2.0 * m0) + std::pow(2.0, nu + 1.0) * fnorm * mnu * std::pow(w, -nu);
    }
};

RateConstituents rate_constituents(const Kernel& kernel, const PiecewiseSignal& f, double w,
                                   double nu) {
    if (!(nu > 0.0 && nu < 1.0)) throw std::domain_error("rate bound: nu must lie in (0, 1)");
    if (!(w > 0.0)) throw std::domain_error("rate bound: w must be positive");
    if (!kernel.moment_finite(nu))
        throw std::domain_error("rate bound: M_nu(chi) diverges for this kernel");
    const auto [wlo, whi] = inflated_window(kernel, f, w);
    return {sup_absolute_moment(kernel, 0.0, 4000), sup_absolute_moment(kernel, nu, 4000),
            log_modulus(f, std::pow(w, -nu), wlo, whi, 4000), sup_norm(f, wlo, whi, 2000)};
}

} // namespace

double rate_bound(const Kernel& kernel, const PiecewiseSignal& f, double w, double nu) {
    return rate_constituents(kernel, f, w, nu).bound(w, nu);
}

double empirical_sup_error(const Kernel& kernel, const PiecewiseSignal& f, double w,
                           double window_lo, double window_hi, int grid) {
    const auto& bps = f.breakpoints();
    double worst = 0.0;
    for (double t : log_uniform_grid(window_lo, window_hi, grid)) {
        const double lt = std::log(t);
        bool near_jump = false;
        for (double bp : bps)
            if (std::abs(lt - std::log(bp)) < 1.0 / w) near_jump = true;
        if (near_jump) continue;
        worst = std::max(worst, std::abs(evaluate_series(kernel, f, w, t) - f.eval(t)));
    }
    return worst;
}

ErrorReport rate_report(const Kernel& kernel, const PiecewiseSignal& f, double w, double nu,
                        int grid) {
    const RateConstituents c = rate_constituents(kernel, f, w, nu);
    ErrorReport r;
    r.experiment = "rate";
    r.kernel_id = kernel.id();
    r.w = w;
    r.bound = c.bound(w, nu);
    r.empirical = empirical_sup_error(kernel, f, w, f.window_lo(), f.window_hi(), grid);
    r.constituents = {{"M0", c.m0},          {"Mnu", c.mnu}, {"omega", c.omega},
                      {"sup_norm", c.fnorm}, {"nu", nu},     {"w", w}};
    r.pass = within_bound(r.empirical, r.bound);
    return r;
}

ErrorReport roundoff_experiment(const Kernel& kernel, const PiecewiseSignal& f, double w,
                                double xi, int trials, std::uint64_t seed, PerturbMode mode,
                                int t_grid) {
    if (!(xi >= 0.0)) throw std::domain_error("roundoff_experiment: xi must be >= 0");
    if (trials < 1) throw std::domain_error("roundoff_experiment: trials must be >= 1");
    ErrorReport r;
    r.experiment = "roundoff";
    r.kernel_id = kernel.id();
    r.w = w;
    r.seed = seed;

    const auto [m0, m1] = sup_moments(kernel);
    const auto [wlo, whi] = inflated_window(kernel, f, w);
    const double omega = log_modulus(f, 1.0 / w, wlo, whi, 4000);
    const double c_const = m0 + m1;
    const double total_bound = c_const * omega + xi * m0;
    const auto ts = log_uniform_grid(f.window_lo(), f.window_hi(), t_grid);

    // One perturbed signal per trial: a fixed draw xi_k over the union of
    // all node windows, then the sup over t.
    const long long k_lo = node_window(kernel, w, f.window_lo()).k_min;
    const long long k_hi = node_window(kernel, w, f.window_hi()).k_max;

    double q_max = 0.0, total_max = 0.0;
    const int n_trials = (mode == PerturbMode::Adversarial) ? 1 : trials;
    for (int trial = 0; trial < n_trials; ++trial) {
        std::vector<double> draw;
        if (mode == PerturbMode::Random) {
            SplitMix64 rng(derive_seed(seed, trial));
            draw.resize(static_cast<std::size_t>(k_hi - k_lo + 1));
            for (double& x : draw) x = rng.uniform_pm(xi);
        }
        for (double t : ts) {
            // Q(t) = |sum chi(e^-k t^w) xi_k|; adversarial draws align the
            // signs with chi so Q(t) = xi * sum |chi|.
            double perturbation;
            if (mode == PerturbMode::Adversarial) {
                perturbation = xi * absolute_moment_log(kernel, 0.0, w * std::log(t));
            } else {
                perturbation = evaluate_series_fn(
                    kernel, [&](long long k) { return draw[static_cast<std::size_t>(k - k_lo)]; },
                    w, t);
            }
            const double q = std::abs(perturbation);
            q_max = std::max(q_max, q);
            const double direct = evaluate_series(kernel, f, w, t);
            total_max = std::max(total_max, std::abs(f.eval(t) - (direct + perturbation)));
        }
    }

    r.bound = xi * m0;
    r.empirical = q_max;
    r.constituents = {{"M0", m0},
                      {"M1", m1},
                      {"C", c_const},
                      {"omega_1_w", omega},
                      {"xi", xi},
                      {"trials", static_cast<double>(n_trials)},
                      {"total_empirical", total_max},
                      {"total_bound", total_bound}};
    r.pass = within_bound(q_max, r.bound) && within_bound(total_max, total_bound);
    return r;
}

ErrorReport jitter_experiment(const Kernel& kernel, const PiecewiseSignal& f, double w, double rho,
                              int trials, std::uint64_t seed, PerturbMode mode, int t_grid) {
    if (!(rho >= 0.0)) throw std::domain_error("jitter_experiment: rho must be >= 0");
    if (trials < 1) throw std::domain_error("jitter_experiment: trials must be >= 1");
    ErrorReport r;
    r.experiment = "jitter";
    r.kernel_id = kernel.id();
    r.w = w;
    r.seed = seed;

    const auto [m0, m1] = sup_moments(kernel);
    const auto [wlo, whi] = inflated_window(kernel, f, w);
    const double fprime = derivative_sup(f, wlo, whi, 4000);
    const double omega = log_modulus(f, 1.0 / w, wlo, whi, 4000);
    const double c_const = m0 + m1;
    const double jitter_bound = rho * fprime * m0;
    const double total_bound = c_const * omega + jitter_bound;
    const auto ts = log_uniform_grid(f.window_lo(), f.window_hi(), t_grid);

    const long long k_lo = node_window(kernel, w, f.window_lo()).k_min;
    const long long k_hi = node_window(kernel, w, f.window_hi()).k_max;

    auto check_draw = [&](long long k, double off) {
        const double node = sample_node(k, w);
        const double moved = node + off;
        if (!(moved > 0.0))
            throw ExperimentRejected("jitter: perturbed node k=" + std::to_string(k) +
                                     " left the positive half-line");
        for (double bp : f.breakpoints()) {
            if ((node < bp) != (moved < bp) || moved == bp)
                throw ExperimentRejected(
                    "jitter: node k=" + std::to_string(k) + " at " + std::to_string(node) +
                    " perturbed by " + std::to_string(off) + " crosses breakpoint " +
                    std::to_string(bp) + "; the mean-value bound needs differentiability there");
        }
    };

    double j_max = 0.0, total_max = 0.0;
    const int n_trials = (mode == PerturbMode::Adversarial) ? 1 : trials;
    for (int trial = 0; trial < n_trials; ++trial) {
        std::vector<double> draw;
        if (mode == PerturbMode::Random) {
            SplitMix64 rng(derive_seed(seed, trial));
            draw.resize(static_cast<std::size_t>(k_hi - k_lo + 1));
            for (std::size_t i = 0; i < draw.size(); ++i) {
                draw[i] = rng.uniform_pm(rho);
                check_draw(k_lo + static_cast<long long>(i), draw[i]);
            }
        }
        for (double t : ts) {
            const double lu = w * std::log(t);
            auto offset_for = [&](long long k) {
                if (mode == PerturbMode::Random) return draw[static_cast<std::size_t>(k - k_lo)];
                // sign-aligned with chi so J(t) = sum |chi| |f(n) - f(n+rho)|
                const double chi = kernel.eval_log(lu - k);
                return chi >= 0.0 ? -rho : rho;
            };
            if (mode == PerturbMode::Adversarial) {
                const auto [kmin, kmax] = node_window(kernel, w, t);
                for (long long k = kmin; k <= kmax; ++k)
                    if (kernel.eval_log(lu - k) != 0.0) check_draw(k, offset_for(k));
            }
            const double direct = evaluate_series(kernel, f, w, t);
            const double perturbed = evaluate_series_fn(
                kernel, [&](long long k) { return f.eval(sample_node(k, w) + offset_for(k)); }, w,
                t);
            j_max = std::max(j_max, std::abs(direct - perturbed));
            total_max = std::max(total_max, std::abs(f.eval(t) - perturbed));
        }
    }

    r.bound = jitter_bound;
    r.empirical = j_max;
    r.constituents = {{"M0", m0},
                      {"M1", m1},
                      {"C", c_const},
                      {"omega_1_w", omega},
                      {"fprime_sup", fprime},
                      {"rho", rho},
                      {"trials", static_cast<double>(n_trials)},
                      {"total_empirical", total_max},
                      {"total_bound", total_bound}};
    r.pass = within_bound(j_max, r.bound) && within_bound(total_max, total_bound);
    return r;
}

} // namespace expsamp
