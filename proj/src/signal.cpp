// Copyright Contributors to the expsamp project
// SPDX-License-Identifier: Apache-2.0
#include "expsamp/signal.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <stdexcept>

namespace expsamp {
namespace {

// Grid in the log domain over [lo, hi] plus points straddling each
// breakpoint, so sups and moduli see both sides of every jump.
std::vector<double> sample_points(const PiecewiseSignal& f, double lo, double hi, int grid) {
    if (!(lo > 0.0) || !(hi > lo)) throw std::domain_error("signal window must satisfy 0 < lo < hi");
    std::vector<double> pts;
    pts.reserve(grid + 16);
    const double la = std::log(lo), lb = std::log(hi);
    for (int i = 0; i <= grid; ++i) pts.push_back(std::exp(la + (lb - la) * i / grid));
    for (double bp : f.breakpoints()) {
        if (bp > lo && bp < hi) {
            pts.push_back(bp * (1.0 - 1e-12));
            pts.push_back(bp);
            pts.push_back(bp * (1.0 + 1e-12));
        }
    }
    std::sort(pts.begin(), pts.end());
    return pts;
}

} // namespace

PiecewiseSignal::PiecewiseSignal(std::vector<double> breakpoints, std::vector<Piece> pieces,
                                 double window_lo, double window_hi)
    : breakpoints_(std::move(breakpoints)), pieces_(std::move(pieces)), window_lo_(window_lo),
      window_hi_(window_hi) {
    if (pieces_.size() != breakpoints_.size() + 1)
        throw std::invalid_argument("signal: need exactly breakpoints+1 pieces");
    if (!(window_lo_ > 0.0) || !(window_hi_ > window_lo_))
        throw std::invalid_argument("signal: window must satisfy 0 < lo < hi");
    for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
        if (!(breakpoints_[i] > 0.0))
            throw std::invalid_argument("signal: breakpoints must be positive");
        if (i > 0 && !(breakpoints_[i] > breakpoints_[i - 1]))
            throw std::invalid_argument("signal: breakpoints must be strictly increasing");
    }
    derivs_.reserve(pieces_.size());
    for (const auto& p : pieces_) {
        if (!p.expr) throw std::invalid_argument("signal: null piece expression");
        derivs_.push_back(p.expr->derivative());
    }
    // Boundedness on the window, and finite one-sided limits at breakpoints.
    for (int i = 0; i <= 256; ++i) {
        const double t =
            std::exp(std::log(window_lo_) + (std::log(window_hi_) - std::log(window_lo_)) * i / 256);
        if (!std::isfinite(eval(t)))
            throw std::invalid_argument("signal: non-finite value inside window");
    }
    for (double bp : breakpoints_) {
        auto [l, r] = one_sided_limits(bp);
        if (!std::isfinite(l) || !std::isfinite(r))
            throw std::invalid_argument("signal: non-finite one-sided limit at breakpoint");
    }
}

std::size_t PiecewiseSignal::piece_index(double t) const {
    // First breakpoint strictly greater than t; t == bp belongs to the right
    // piece (left-closed, right-open convention).
    return std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t) - breakpoints_.begin();
}

double PiecewiseSignal::eval(double t) const {
    if (!(t > 0.0)) throw std::domain_error("signal: argument must be positive");
    for (const auto& [loc, val] : point_values_)
        if (std::abs(t - loc) <= 4.0 * std::numeric_limits<double>::epsilon() * loc) return val;
    return pieces_[piece_index(t)].expr->eval(t);
}

std::pair<double, double> PiecewiseSignal::one_sided_limits(double t) const {
    if (!(t > 0.0)) throw std::domain_error("signal: argument must be positive");
    const std::size_t right = piece_index(t);
    std::size_t left = right;
    if (right > 0 && breakpoints_[right - 1] == t) left = right - 1;
    return {pieces_[left].expr->eval(t), pieces_[right].expr->eval(t)};
}

JumpPoint PiecewiseSignal::jump_at(double t) const {
    auto [l, r] = one_sided_limits(t);
    return {t, l, r, eval(t)};
}

double PiecewiseSignal::piece_derivative(double t) const {
    if (!(t > 0.0)) throw std::domain_error("signal: argument must be positive");
    return derivs_[piece_index(t)]->eval(t);
}

void PiecewiseSignal::set_point_value(double location, double value) {
    if (!(location > 0.0)) throw std::domain_error("signal: point value location must be positive");
    point_values_.emplace_back(location, value);
}

PiecewiseSignal make_signal(std::vector<double> breakpoints, std::vector<std::string> piece_sources,
                            double window_lo, double window_hi) {
    std::vector<Piece> pieces;
    pieces.reserve(piece_sources.size());
    for (auto& src : piece_sources) pieces.push_back({parse_expression(src), src});
    return PiecewiseSignal(std::move(breakpoints), std::move(pieces), window_lo, window_hi);
}

PiecewiseSignal build_h(const PiecewiseSignal& f, double t) {
    const auto [left_limit, right_limit] = f.one_sided_limits(t);

    std::vector<double> bps = f.breakpoints();
    if (std::find(bps.begin(), bps.end(), t) == bps.end()) {
        bps.push_back(t);
        std::sort(bps.begin(), bps.end());
    }
    std::vector<Piece> pieces;
    pieces.reserve(bps.size() + 1);
    for (std::size_t i = 0; i <= bps.size(); ++i) {
        // Piece i covers [bps[i-1], bps[i]); it lies below t iff its right
        // end is <= t.
        const bool below = (i < bps.size()) ? (bps[i] <= t) : false;
        const double offset = below ? left_limit : right_limit;
        const double piece_lo = (i == 0) ? 0.0 : bps[i - 1];
        const Piece& base =
            f.pieces()[std::upper_bound(f.breakpoints().begin(), f.breakpoints().end(), piece_lo) -
                       f.breakpoints().begin()];
        pieces.push_back({subtract_constant(base.expr, offset),
                          "(" + base.source + ")-(" + std::to_string(offset) + ")"});
    }
    PiecewiseSignal h(std::move(bps), std::move(pieces), f.window_lo(), f.window_hi());
    // Pinned values of f shift like the pieces around them.
    for (const auto& [loc, val] : f.point_values()) {
        if (loc == t) continue;
        h.set_point_value(loc, val - (loc < t ? left_limit : right_limit));
    }
    h.set_point_value(t, 0.0);
    return h;
}

double log_modulus(const PiecewiseSignal& f, double delta, double window_lo, double window_hi,
                   int grid) {
    if (!(delta > 0.0)) throw std::domain_error("log_modulus: delta must be positive");
    const auto pts = sample_points(f, window_lo, window_hi, grid);
    std::vector<double> ly(pts.size()), fy(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        ly[i] = std::log(pts[i]);
        fy[i] = f.eval(pts[i]);
    }
    // Sliding window of log-width delta with monotonic deques for max/min.
    std::deque<std::size_t> maxq, minq;
    std::size_t lo_idx = 0;
    double best = 0.0;
    for (std::size_t j = 0; j < pts.size(); ++j) {
        while (!maxq.empty() && fy[maxq.back()] <= fy[j]) maxq.pop_back();
        maxq.push_back(j);
        while (!minq.empty() && fy[minq.back()] >= fy[j]) minq.pop_back();
        minq.push_back(j);
        while (ly[j] - ly[lo_idx] > delta) {
            if (maxq.front() == lo_idx) maxq.pop_front();
            if (minq.front() == lo_idx) minq.pop_front();
            ++lo_idx;
        }
        best = std::max(best, fy[maxq.front()] - fy[minq.front()]);
    }
    return best;
}

double log_modulus(const PiecewiseSignal& f, double delta, int grid) {
    return log_modulus(f, delta, f.window_lo(), f.window_hi(), grid);
}

double derivative_sup(const PiecewiseSignal& f, double window_lo, double window_hi, int grid) {
    double best = 0.0;
    for (double t : sample_points(f, window_lo, window_hi, grid))
        best = std::max(best, std::abs(f.piece_derivative(t)));
    return best;
}

double sup_norm(const PiecewiseSignal& f, double window_lo, double window_hi, int grid) {
    double best = 0.0;
    for (double t : sample_points(f, window_lo, window_hi, grid))
        best = std::max(best, std::abs(f.eval(t)));
    return best;
}

} // namespace expsamp
