// Copyright Contributors to the expsamp project
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>

namespace expsamp {

// Neumaier-compensated accumulator. Series and quadrature sums go through
// this so that residual tolerances are limited by the data, not the order
// of accumulation.
struct NeumaierSum {
    double sum = 0.0;
    double comp = 0.0;

    void add(double x) {
        double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
};

// Normalized sinc: sin(pi y) / (pi y), sinc(0) = 1.
inline double sinc(double y) {
    if (y == 0.0) return 1.0;
    const double py = M_PI * y;
    return std::sin(py) / py;
}

// x^n for small nonnegative integer n.
inline double ipow(double x, int n) {
    double r = 1.0;
    for (int i = 0; i < n; ++i) r *= x;
    return r;
}

// n! as a double; valid for the small orders used here.
inline double factorial_d(int n) {
    double r = 1.0;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

// SplitMix64: tiny deterministic generator; identical streams on every
// platform, which the reproducibility contract of the experiment drivers
// relies on.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97f4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1)
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // uniform in [-half_width, half_width]
    double uniform_pm(double half_width) { return (2.0 * uniform01() - 1.0) * half_width; }

    // uniform in [lo, hi]
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
};

// Independent sub-stream seed for trial/stream indexing.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    SplitMix64 g(seed ^ (0x632BE59BD9B4E019ULL + stream * 0x106689D45497FDB5ULL));
    g.next();
    return g.next();
}

} // namespace expsamp
