// Copyright Contributors to the expsamp project
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>

#include "expsamp/kernel.hpp"
#include "expsamp/signal.hpp"

namespace expsamp {

// Raised when a jitter draw moves a node across a signal breakpoint (the
// mean-value estimate needs differentiability between node and perturbed
// node) or out of the positive half-line.
class ExperimentRejected : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct ErrorReport {
    std::string experiment; // "rate" | "roundoff" | "jitter"
    std::string kernel_id;
    double w = 0.0;
    double bound = 0.0;
    double empirical = 0.0;
    std::map<std::string, double> constituents;
    bool pass = false; // empirical <= bound (1 + 1e-9) + 1e-12, plus the
                       // secondary bound for the perturbation experiments
    std::uint64_t seed = 0;
};

// Serialized "key = value" block (12 significant digits; byte-stable for a
// fixed seed).
std::string report_to_kv(const ErrorReport& report);

// Rate bound: omega(f, w^-nu) [M_nu + 2 M_0] + 2^{nu+1} ||f||_inf M_nu w^-nu.
// Requires 0 < nu < 1 and M_nu finite. Norm/modulus estimation happens on
// the signal window inflated by one kernel-support width of nodes.
double rate_bound(const Kernel& kernel, const PiecewiseSignal& f, double w, double nu);

// max over a log-uniform t grid of |S_w f(t) - f(t)|; t within one node
// spacing (1/w in log) of a breakpoint are excluded.
double empirical_sup_error(const Kernel& kernel, const PiecewiseSignal& f, double w,
                           double window_lo, double window_hi, int grid = 1000);

ErrorReport rate_report(const Kernel& kernel, const PiecewiseSignal& f, double w, double nu,
                        int grid = 1000);

enum class PerturbMode { Random, Adversarial };

// Round-off: samples replaced by f +- xi_k, |xi_k| <= xi. Reports the max of
// Q_xi = |S_w f - S_w f_bar| over trials and a t grid against xi M_0, and the
// total error |f - S_w f_bar| against C omega(f, 1/w) + xi M_0 with
// C = M_0 + M_1. Adversarial mode sets xi_k = xi sign(chi) per t.
ErrorReport roundoff_experiment(const Kernel& kernel, const PiecewiseSignal& f, double w,
                                double xi, int trials, std::uint64_t seed,
                                PerturbMode mode = PerturbMode::Random, int t_grid = 1000);

// Time jitter: nodes replaced by e^{k/w} + rho_k, |rho_k| <= rho. Reports
// J_rho against rho ||f'|| M_0, and the total error against
// C omega(f, 1/w) + rho ||f'|| M_0. Draws that cross a breakpoint of f are
// rejected (ExperimentRejected).
ErrorReport jitter_experiment(const Kernel& kernel, const PiecewiseSignal& f, double w, double rho,
                              int trials, std::uint64_t seed, PerturbMode mode = PerturbMode::Random,
                              int t_grid = 1000);

} // namespace expsamp
