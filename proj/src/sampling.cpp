// Copyright Contributors to the expsamp project
// SPDX-License-Identifier: Apache-2.0
#include "expsamp/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "expsamp/numeric.hpp"

namespace expsamp {
namespace {

long long floor_ll(double x) { return static_cast<long long>(std::floor(x)); }
long long ceil_ll(double x) { return static_cast<long long>(std::ceil(x)); }

void require_positive(double w, double t) {
    if (!(w > 0.0)) throw std::domain_error("sampling: w must be positive");
    if (!(t > 0.0)) throw std::domain_error("sampling: t must be positive");
}

} // namespace

Alignment classify_alignment(double w, double t, double align_tol) {
    require_positive(w, t);
    const double lu = w * std::log(t);
    const double m = std::round(lu);
    if (std::abs(lu - m) <= align_tol) return {true, static_cast<long long>(m)};
    return {false, 0};
}

NodeWindow node_window(const Kernel& kernel, double w, double t) {
    require_positive(w, t);
    const auto s = kernel.support_log();
    const double lu = w * std::log(t);
    return {ceil_ll(lu - s.hi), floor_ll(lu - s.lo)};
}

double evaluate_series_fn(const Kernel& kernel, const std::function<double(long long)>& sample,
                          double w, double t) {
    const auto [k_min, k_max] = node_window(kernel, w, t);
    const double lu = w * std::log(t);
    NeumaierSum sum;
    for (long long k = k_min; k <= k_max; ++k) {
        const double chi = kernel.eval_log(lu - k);
        if (chi != 0.0) {
            const double v = sample(k);
            if (!std::isfinite(v))
                throw std::runtime_error("evaluate_series: non-finite sample at node k=" +
                                         std::to_string(k));
            sum.add(chi * v);
        }
    }
    return sum.value();
}

double evaluate_series(const Kernel& kernel, const PiecewiseSignal& f, double w, double t) {
    return evaluate_series_fn(
        kernel, [&](long long k) { return f.eval(sample_node(k, w)); }, w, t);
}

Decomposition representation_decomposition(const Kernel& kernel, const PiecewiseSignal& f,
                                           double w, double t, std::optional<Alignment> alignment,
                                           double align_tol) {
    require_positive(w, t);
    Decomposition d;
    d.alignment = alignment ? *alignment : classify_alignment(w, t, align_tol);

    const auto [left_limit, right_limit] = f.one_sided_limits(t);
    const PiecewiseSignal h = build_h(f, t);

    d.direct = evaluate_series(kernel, f, w, t);
    d.series_h = evaluate_series(kernel, h, w, t);

    const double lu = w * std::log(t);
    if (d.alignment.aligned) {
        // Split the lattice at the known integer m; the k = m term carries
        // the chi(1) correction.
        const long long m = d.alignment.m;
        const long long k_last = floor_ll(lu - kernel.support_log().lo);
        NeumaierSum psi;
        for (long long k = m + 1; k <= k_last; ++k) psi.add(kernel.eval_log(lu - k));
        d.psi_minus_val = psi.value();
        d.chi_one_term = kernel.eval_log(lu - m) * (f.eval(t) - left_limit);
    } else {
        d.psi_minus_val = psi_minus_log(kernel, lu);
        d.chi_one_term = 0.0;
    }
    d.reconstructed =
        d.series_h + left_limit + d.psi_minus_val * (right_limit - left_limit) + d.chi_one_term;
    d.residual = std::abs(d.direct - d.reconstructed);
    return d;
}

std::optional<double> predict_jump_limit(const KernelReport& report, const JumpPoint& jump,
                                         const Alignment& alignment) {
    if (alignment.aligned) {
        const double a1 = report.psi_minus_at_one;
        const double c1 = report.chi_at_one;
        return a1 * jump.right_limit + (1.0 - a1 - c1) * jump.left_limit + c1 * jump.value_at;
    }
    // Removable: the psi^- term multiplies a zero jump, so the limit is the
    // common one-sided value for every kernel.
    if (jump.removable()) return jump.left_limit;
    if (!report.alpha_estimate) return std::nullopt; // psi^- non-constant: no limit
    const double a = *report.alpha_estimate;
    return a * jump.right_limit + (1.0 - a) * jump.left_limit;
}

JumpAnalysis analyze_jump(const Kernel& kernel, const KernelReport& report,
                          const PiecewiseSignal& f, double t, std::span<const double> ws,
                          double align_tol) {
    JumpAnalysis ja;
    ja.t = t;
    ja.jump = f.jump_at(t);
    ja.alpha = report.alpha_estimate;
    ja.chi_at_one = report.chi_at_one;
    ja.predicted_nonaligned = predict_jump_limit(report, ja.jump, Alignment{false, 0});
    ja.predicted_aligned = *predict_jump_limit(report, ja.jump, Alignment{true, 0});
    ja.measured.reserve(ws.size());
    for (double w : ws) {
        ja.measured.emplace_back(w, evaluate_series(kernel, f, w, t));
        ja.cases.push_back(classify_alignment(w, t, align_tol));
    }
    return ja;
}

DivergenceWitness divergence_witness(const Kernel& kernel, const PiecewiseSignal& f, double t,
                                     int m_max) {
    if (!(t > 0.0)) throw std::domain_error("divergence_witness: t must be positive");
    const double lt = std::log(t);
    if (std::abs(lt) < 1e-3)
        throw std::domain_error("divergence_witness: t too close to 1 (w log t degenerate)");
    if (m_max < 8) throw std::domain_error("divergence_witness: m_max must be >= 8");

    const double abs_lt = std::abs(lt);
    std::vector<int> ms;
    for (int m = 8; m < m_max; m *= 2) ms.push_back(m);
    ms.push_back(m_max - 2);
    ms.push_back(m_max - 1);
    ms.push_back(m_max);
    std::sort(ms.begin(), ms.end());
    ms.erase(std::unique(ms.begin(), ms.end()), ms.end());

    DivergenceWitness wit;
    for (int m : ms) {
        const double w_aligned = m / abs_lt; // w log t = +-m, integer either way
        const double w_offset = (m + 0.5) / abs_lt;
        wit.aligned_seq.emplace_back(w_aligned, evaluate_series(kernel, f, w_aligned, t));
        wit.offset_seq.emplace_back(w_offset, evaluate_series(kernel, f, w_offset, t));
    }
    auto cauchy_ok = [](const std::vector<std::pair<double, double>>& seq) {
        const std::size_t n = seq.size();
        return std::abs(seq[n - 1].second - seq[n - 2].second) < 1e-4 &&
               std::abs(seq[n - 1].second - seq[n - 3].second) < 1e-4;
    };
    wit.aligned_limit = wit.aligned_seq.back().second;
    wit.offset_limit = wit.offset_seq.back().second;
    wit.aligned_cauchy_ok = cauchy_ok(wit.aligned_seq);
    wit.offset_cauchy_ok = cauchy_ok(wit.offset_seq);
    wit.gap = std::abs(wit.aligned_limit - wit.offset_limit);

    // Closed-form subsequence limits from the representation lemma. The
    // offset subsequence hits t^w on the half point of [1, e] in both
    // directions of log t (frac(-m - 1/2) = 1/2).
    const auto jump = f.jump_at(t);
    const double psi1 = psi_minus_log(kernel, 0.0);
    const double psi_half = psi_minus_log(kernel, 0.5);
    const double chi1 = kernel.at_one();
    wit.predicted_aligned = jump.left_limit + psi1 * jump.jump() +
                            chi1 * (jump.value_at - jump.left_limit);
    wit.predicted_offset = jump.left_limit + psi_half * jump.jump();
    wit.predicted_gap = std::abs(wit.predicted_aligned - wit.predicted_offset);
    return wit;
}

} // namespace expsamp
