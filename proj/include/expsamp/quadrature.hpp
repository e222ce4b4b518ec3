// Copyright Contributors to the expsamp project
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <span>
#include <stdexcept>
#include <string>

namespace expsamp {

class QuadratureError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0; // estimated absolute error
    int panels = 0;
};

// Adaptive Gauss-Kronrod 7/15 over [a, b]. Initial panels are split at the
// interior `breakpoints` (integrand kinks land on panel edges). Throws
// QuadratureError when abs_tol cannot be met within max_panels.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double abs_tol = 1e-12, std::span<const double> breakpoints = {},
                           int max_panels = 20000);

} // namespace expsamp
