// Copyright Contributors to the expsamp project
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "expsamp/kernel.hpp"
#include "expsamp/kernel_analysis.hpp"
#include "expsamp/signal.hpp"

namespace expsamp {

struct SamplingConfig {
    double w = 10.0;
    double trunc_epsilon = 1e-10; // Jackson tail tolerance (kernel construction)
    double align_tol = 1e-9;      // |w log t - m| <= tol decides alignment
};

// Whether w log t is an integer (t is itself a sample node e^{m/w}).
struct Alignment {
    bool aligned = false;
    long long m = 0;
};

Alignment classify_alignment(double w, double t, double align_tol = 1e-9);
inline Alignment classify_alignment(const SamplingConfig& config, double t) {
    return classify_alignment(config.w, t, config.align_tol);
}

// Offsets k with e^-k t^w inside the kernel support (boundary-inclusive;
// boundary terms evaluate to zero).
struct NodeWindow {
    long long k_min = 0;
    long long k_max = 0;
};
NodeWindow node_window(const Kernel& kernel, double w, double t);

// The sample node e^{k/w}. Every series evaluation (including the perturbed
// ones) goes through this single definition so nodes are bit-identical.
// Nodes beyond double range are clamped to it: wide (truncated Jackson)
// supports reach offsets whose nodes underflow, and for a bounded signal
// evaluating at the clamp is evaluating at its limit toward 0 or infinity.
inline double sample_node(long long k, double w) {
    const double node = std::exp(static_cast<double>(k) / w);
    if (node == 0.0) return std::numeric_limits<double>::min();
    if (node == std::numeric_limits<double>::infinity()) return std::numeric_limits<double>::max();
    return node;
}

// (S_w f)(t) = sum_k chi(e^-k t^w) f(e^{k/w}), summed over the node window
// in increasing k with compensated summation.
double evaluate_series(const Kernel& kernel, const PiecewiseSignal& f, double w, double t);
inline double evaluate_series(const Kernel& kernel, const PiecewiseSignal& f,
                              const SamplingConfig& config, double t) {
    return evaluate_series(kernel, f, config.w, t);
}

// Same sum with arbitrary per-node sample values (used by the perturbation
// experiments).
double evaluate_series_fn(const Kernel& kernel, const std::function<double(long long)>& sample,
                          double w, double t);

// Both sides of the representation identity, computed independently:
//   direct        = (S_w f)(t)
//   reconstructed = (S_w h_t)(t) + f(t-0) + psi^-(t^w) [f(t+0) - f(t-0)]
//                   (+ chi(1) [f(t) - f(t-0)] when w log t is an integer)
struct Decomposition {
    Alignment alignment;
    double direct = 0.0;
    double series_h = 0.0;
    double psi_minus_val = 0.0;
    double chi_one_term = 0.0;
    double reconstructed = 0.0;
    double residual = 0.0; // |direct - reconstructed|
};

Decomposition representation_decomposition(const Kernel& kernel, const PiecewiseSignal& f,
                                           double w, double t,
                                           std::optional<Alignment> alignment = std::nullopt,
                                           double align_tol = 1e-9);

// Predicted limit of (S_w f)(t) along the given alignment class:
//   aligned:     psi^-(1) f(t+0) + [1 - psi^-(1) - chi(1)] f(t-0) + chi(1) f(t)
//   non-aligned: alpha f(t+0) + (1 - alpha) f(t-0), requiring psi^- constant
//                on (1, e); nullopt when it is not (no limit exists).
std::optional<double> predict_jump_limit(const KernelReport& report, const JumpPoint& jump,
                                         const Alignment& alignment);

struct JumpAnalysis {
    double t = 0.0;
    JumpPoint jump;
    std::optional<double> alpha; // psi^- constant value, when constant
    double chi_at_one = 0.0;
    std::optional<double> predicted_nonaligned;
    double predicted_aligned = 0.0;
    std::vector<std::pair<double, double>> measured; // (w, S_w f(t))
    std::vector<Alignment> cases;                    // alignment per measured w
};

JumpAnalysis analyze_jump(const Kernel& kernel, const KernelReport& report,
                          const PiecewiseSignal& f, double t, std::span<const double> ws,
                          double align_tol = 1e-9);

// Evaluates S_w f(t) along w_m = m / log t (aligned: t^w = e^m) and along
// w_m = (m + 1/2) / log t (t^w lands on the half point of the fundamental
// interval). A non-constant psi^- shows up as a persistent gap between the
// two subsequence limits.
struct DivergenceWitness {
    double aligned_limit = 0.0;
    double offset_limit = 0.0;
    double gap = 0.0;
    double predicted_aligned = 0.0;
    double predicted_offset = 0.0;
    double predicted_gap = 0.0;
    bool aligned_cauchy_ok = false; // last three values within 1e-4
    bool offset_cauchy_ok = false;
    std::vector<std::pair<double, double>> aligned_seq; // (w, value)
    std::vector<std::pair<double, double>> offset_seq;
};

DivergenceWitness divergence_witness(const Kernel& kernel, const PiecewiseSignal& f, double t,
                                     int m_max);

} // namespace expsamp
