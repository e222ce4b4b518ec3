// Copyright Contributors to the expsamp project
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <string>
#include <vector>

namespace expsamp {

// Closed interval in the log domain.
struct LogInterval {
    double lo = 0.0;
    double hi = 0.0;
    double length() const { return hi - lo; }
    bool contains(double y) const { return y >= lo && y <= hi; }
};

/// A kernel chi on the positive half-line. Evaluation is done in the log
/// variable (y = log u) so that series and quadrature code never forms
/// t^w explicitly; eval() is the u-domain convenience wrapper.
///
/// Contract: eval_log returns exactly 0.0 outside support_log(), and all
/// kernels are immutable after construction (concurrent reads are safe).
class Kernel {
  public:
    virtual ~Kernel() = default;

    // chi(e^y)
    virtual double eval_log(double y) const = 0;

    // chi(u), u > 0; throws std::domain_error for u <= 0
    double eval(double u) const;

    virtual LogInterval support_log() const = 0;

    // Panel edges for quadrature in the log domain (support edges plus any
    // interior kinks).
    virtual std::vector<double> log_breakpoints() const;

    // Whether the absolute moment M_nu(chi) is finite.
    virtual bool moment_finite(double nu) const { (void)nu; return true; }

    virtual std::string id() const = 0;

    double at_one() const { return eval_log(0.0); }
};

using KernelPtr = std::shared_ptr<const Kernel>;

// B-spline of order n in the log variable, evaluated at y = log x. Compactly
// supported on [-n/2, n/2], nonnegative, partition of unity over integer
// shifts.
double bspline_log(int n, double y);

// Same spline as a function of x > 0.
double bspline_eval(int n, double x);

class MellinBSpline final : public Kernel {
  public:
    explicit MellinBSpline(int order);
    int order() const { return order_; }
    double eval_log(double y) const override;
    LogInterval support_log() const override;
    std::vector<double> log_breakpoints() const override;
    std::string id() const override;

  private:
    int order_;
};

// Normalization constant d_{gamma,beta}: reciprocal of the integral of
// sinc^{2 beta}(log x / (2 gamma beta pi)) dx/x over the half-line, computed
// by quadrature in the log domain (finite window plus an analytic tail from
// the cosine expansion of sin^{2 beta}).
double jackson_normalization(double gamma, int beta);

class MellinJackson final : public Kernel {
  public:
    // trunc_epsilon: requested bound on the neglected tail of the node sums
    // sum_k |chi(e^-k u)|, from the |sinc|^{2 beta} <= (pi |y|)^{-2 beta}
    // envelope. The resulting radius is capped at max_log_radius; the bound
    // actually achieved is exposed below.
    MellinJackson(double gamma, int beta, double trunc_epsilon = 1e-10,
                  double max_log_radius = 1e5);

    double gamma() const { return gamma_; }
    int beta() const { return beta_; }
    double normalization() const { return norm_; }
    double effective_log_radius() const { return radius_; }
    double requested_trunc_epsilon() const { return trunc_epsilon_; }
    double truncation_tail_bound() const { return tail_bound_; }

    double eval_log(double y) const override;
    LogInterval support_log() const override;
    std::vector<double> log_breakpoints() const override;
    // M_nu(chi) is finite only for nu < 2 beta - 1.
    bool moment_finite(double nu) const override;
    std::string id() const override;

  private:
    double gamma_;
    int beta_;
    double trunc_epsilon_;
    double norm_;
    double radius_;
    double tail_bound_;
};

/// chi(u) = (1 - alpha) chi_a(2 u e^{-a-1}) + alpha chi_b(2 u e^{b}) for
/// inner kernels supported in [e^-a, e^a] and [e^-b, e^b]. The two shifted
/// supports sit strictly right and strictly left of u = 1, so chi(1) = 0
/// exactly; the mass below u = 1 is alpha and above is 1 - alpha.
class CombinedKernel final : public Kernel {
  public:
    CombinedKernel(KernelPtr inner_a, double a, KernelPtr inner_b, double b, double alpha);

    double alpha() const { return alpha_; }
    const Kernel& inner_a() const { return *inner_a_; }
    const Kernel& inner_b() const { return *inner_b_; }
    double radius_a() const { return a_; }
    double radius_b() const { return b_; }
    // The two disjoint support segments, left (b-term) then right (a-term).
    LogInterval segment_lower() const { return seg_b_; }
    LogInterval segment_upper() const { return seg_a_; }

    double eval_log(double y) const override;
    LogInterval support_log() const override;
    std::vector<double> log_breakpoints() const override;
    bool moment_finite(double nu) const override;
    std::string id() const override;

  private:
    KernelPtr inner_a_;
    KernelPtr inner_b_;
    double a_, b_, alpha_;
    double shift_a_, shift_b_; // log-domain shifts of the inner arguments
    LogInterval seg_a_, seg_b_;
};

KernelPtr make_bspline(int order);
KernelPtr make_jackson(double gamma, int beta, double trunc_epsilon = 1e-10,
                       double max_log_radius = 1e5);

// Validates the declared support radii (numeric grid scan of the inner
// kernels) and that the shifted supports leave u = 1 uncovered; throws
// std::invalid_argument otherwise.
KernelPtr build_combined(KernelPtr inner_a, double a, KernelPtr inner_b, double b, double alpha);

// Dispatch over kernel kinds; u > 0 required.
double eval_kernel(const Kernel& kernel, double u);

} // namespace expsamp
