// Copyright Contributors to the expsamp project
// SPDX-License-Identifier: Apache-2.0
//
// Test-only oracles, kept independent of the library's implementation
// paths: the B-spline goes through the Cox-de Boor recursion instead of the
// truncated-power sum, and integrals go through composite Simpson instead
// of Gauss-Kronrod.
#pragma once

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace oracle {

// Centered cardinal B-spline of order n (knots at -n/2, -n/2+1, ..., n/2)
// via the Cox-de Boor recursion on the integer knot lattice.
inline double cardinal_bspline(int n, double y) {
    const double x = y + 0.5 * n; // shift to knots 0..n
    if (x <= 0.0 || x >= n) return 0.0;
    std::vector<double> b(n, 0.0);
    const int cell = static_cast<int>(std::floor(x));
    b[cell] = 1.0;
    for (int k = 2; k <= n; ++k) {
        for (int i = 0; i <= n - k; ++i) {
            // knots t_i = i: N_{i,k}(x) = (x-i)/(k-1) N_{i,k-1} + (i+k-x)/(k-1) N_{i+1,k-1}
            b[i] = ((x - i) * b[i] + (i + k - x) * b[i + 1]) / (k - 1);
        }
    }
    return b[0];
}

inline double simpson(const std::function<double(double)>& f, double a, double b, int n) {
    if (n % 2 != 0) ++n;
    const double h = (b - a) / n;
    double sum = f(a) + f(b);
    for (int i = 1; i < n; ++i) sum += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return sum * h / 3.0;
}

inline std::map<std::string, double> read_golden(const std::string& filename) {
    const std::string path = std::string(EXPSAMP_GOLDEN_DIR) + "/" + filename;
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open golden file " + path);
    std::map<std::string, double> values;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        std::string key = line.substr(0, eq);
        key.erase(0, key.find_first_not_of(" \t"));
        key.erase(key.find_last_not_of(" \t") + 1);
        values[key] = std::stod(line.substr(eq + 1));
    }
    return values;
}

} // namespace oracle
