// Copyright Contributors to the expsamp project
// SPDX-License-Identifier: Apache-2.0
#include "expsamp/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace expsamp {
namespace {

// 15-point Kronrod nodes / weights and embedded 7-point Gauss weights
// (QUADPACK dqk15 constants).
constexpr double kNodes[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr double kWeightsKronrod[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWeightsGauss[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a, b, value, error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gk15(const std::function<double(double)>& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    const double fc = f(center);
    double resg = fc * kWeightsGauss[3];
    double resk = fc * kWeightsKronrod[7];
    double resabs = std::abs(resk);
    double fv1[7], fv2[7];
    for (int j = 0; j < 7; ++j) {
        const double x = half * kNodes[j];
        fv1[j] = f(center - x);
        fv2[j] = f(center + x);
        const double fsum = fv1[j] + fv2[j];
        if (j % 2 == 1) resg += kWeightsGauss[j / 2] * fsum;
        resk += kWeightsKronrod[j] * fsum;
        resabs += kWeightsKronrod[j] * (std::abs(fv1[j]) + std::abs(fv2[j]));
    }
    const double reskh = resk * 0.5;
    double resasc = kWeightsKronrod[7] * std::abs(fc - reskh);
    for (int j = 0; j < 7; ++j)
        resasc += kWeightsKronrod[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));

    const double dhalf = std::abs(half);
    resabs *= dhalf;
    resasc *= dhalf;
    double err = std::abs((resk - resg) * half);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double eps = std::numeric_limits<double>::epsilon();
    if (resabs > std::numeric_limits<double>::min() / (50.0 * eps))
        err = std::max(eps * 50.0 * resabs, err);

    return {a, b, resk * half, err};
}

} // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double abs_tol, std::span<const double> breakpoints, int max_panels) {
    if (!(abs_tol > 0.0)) throw QuadratureError("integrate: abs_tol must be positive");
    if (a == b) return {0.0, 0.0, 0};
    const double sign = (a < b) ? 1.0 : -1.0;
    const double lo = std::min(a, b), hi = std::max(a, b);

    std::vector<double> edges;
    edges.push_back(lo);
    for (double x : breakpoints)
        if (x > lo && x < hi) edges.push_back(x);
    edges.push_back(hi);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    std::priority_queue<Panel> queue;
    double err_sum = 0.0;
    int panels = 0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        Panel p = gk15(f, edges[i], edges[i + 1]);
        err_sum += p.error;
        queue.push(p);
        ++panels;
    }

    const double min_width = (hi - lo) * 1e-14;
    while (err_sum > abs_tol && panels < max_panels) {
        Panel worst = queue.top();
        if (worst.b - worst.a < min_width) break; // cannot refine further
        queue.pop();
        err_sum -= worst.error;
        const double mid = 0.5 * (worst.a + worst.b);
        Panel left = gk15(f, worst.a, mid);
        Panel right = gk15(f, mid, worst.b);
        err_sum += left.error + right.error;
        queue.push(left);
        queue.push(right);
        ++panels;
    }

    if (err_sum > abs_tol * 16.0) {
        throw QuadratureError("integrate: tolerance " + std::to_string(abs_tol) +
                              " not met; estimated error " + std::to_string(err_sum) + " after " +
                              std::to_string(panels) + " panels");
    }

    // Drain the heap and sum panels sorted by position so the result does
    // not depend on refinement history.
    std::vector<Panel> all;
    all.reserve(queue.size());
    while (!queue.empty()) {
        all.push_back(queue.top());
        queue.pop();
    }
    std::sort(all.begin(), all.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
    double total = 0.0, comp = 0.0;
    for (const Panel& p : all) {
        double t = total + p.value;
        if (std::abs(total) >= std::abs(p.value))
            comp += (total - t) + p.value;
        else
            comp += (p.value - t) + total;
        total = t;
    }
    return {sign * (total + comp), err_sum, panels};
}

} // namespace expsamp
