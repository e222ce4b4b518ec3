// Copyright Contributors to the expsamp project
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "expsamp/expression.hpp"

namespace expsamp {

struct Piece {
    ExprPtr expr;
    std::string source; // the text the expression was parsed from
};

struct JumpPoint {
    double location = 0.0;
    double left_limit = 0.0;
    double right_limit = 0.0;
    double value_at = 0.0;
    bool removable() const { return left_limit == right_limit; }
    double jump() const { return right_limit - left_limit; }
};

/// Bounded piecewise signal on the positive half-line. Piece i is attached
/// to [breakpoint[i-1], breakpoint[i]) (left-closed, right-open), so the
/// value at a breakpoint is the right limit. The window bounds where norms
/// and moduli are estimated; pieces themselves are defined on all of (0, inf).
class PiecewiseSignal {
  public:
    PiecewiseSignal(std::vector<double> breakpoints, std::vector<Piece> pieces, double window_lo,
                    double window_hi);

    double eval(double t) const; // throws std::domain_error for t <= 0
    double operator()(double t) const { return eval(t); }

    // Exact evaluation of the adjacent pieces at t: (left limit, right limit).
    std::pair<double, double> one_sided_limits(double t) const;
    JumpPoint jump_at(double t) const;

    // Derivative of the piece active at t (jumps excluded; at a breakpoint
    // this is the right piece's derivative).
    double piece_derivative(double t) const;

    // Explicit point value pinned at an isolated location; eval matches the
    // location up to a few ulps so a float-identical sample node hits it.
    void set_point_value(double location, double value);

    const std::vector<double>& breakpoints() const { return breakpoints_; }
    const std::vector<Piece>& pieces() const { return pieces_; }
    const std::vector<std::pair<double, double>>& point_values() const { return point_values_; }
    double window_lo() const { return window_lo_; }
    double window_hi() const { return window_hi_; }

  private:
    std::size_t piece_index(double t) const;

    std::vector<double> breakpoints_;
    std::vector<Piece> pieces_;
    std::vector<ExprPtr> derivs_;
    std::vector<std::pair<double, double>> point_values_;
    double window_lo_, window_hi_;
};

// Convenience: parse piece sources and construct.
PiecewiseSignal make_signal(std::vector<double> breakpoints, std::vector<std::string> piece_sources,
                            double window_lo, double window_hi);

// The auxiliary signal h_t: f(x) - f(t-0) below t, f(x) - f(t+0) above t,
// and exactly 0 at x = t (pinned point value).
PiecewiseSignal build_h(const PiecewiseSignal& f, double t);

// Logarithmic modulus of continuity: sup |f(p) - f(q)| over pairs with
// |log p - log q| <= delta, estimated on a log-uniform grid over the window
// (refined near breakpoints). Monotone nondecreasing in delta.
double log_modulus(const PiecewiseSignal& f, double delta, int grid = 4000);
double log_modulus(const PiecewiseSignal& f, double delta, double window_lo, double window_hi,
                   int grid);

// Grid-estimated sup of |f'| (piecewise; jumps excluded) and of |f| over the
// window, refined at piece boundaries.
double derivative_sup(const PiecewiseSignal& f, double window_lo, double window_hi,
                      int grid = 2000);
double sup_norm(const PiecewiseSignal& f, double window_lo, double window_hi, int grid = 2000);

} // namespace expsamp
