// Copyright Contributors to the expsamp project
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "expsamp/kernel.hpp"
#include "expsamp/signal.hpp"

namespace expsamp::cli {

class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct KernelDecl {
    std::string name;   // builtin / shorthand name, may be empty
    std::string kind;   // "bspline" | "jackson" | "combined"
    int order = 2;      // bspline
    double gamma = 1.0; // jackson
    int beta = 1;
    double trunc_epsilon = 1e-10;
    double alpha = 0.75; // combined
    double a = 1.0;
    double b = 1.0;
    std::string inner_a = "bspline:2";
    std::string inner_b = "bspline:2";
};

struct SignalDecl {
    std::string name; // builtin name, may be empty
    std::vector<double> breakpoints;
    std::vector<std::string> pieces;
    double window_lo = 0.5;
    double window_hi = 8.0;
};

struct ExperimentConfig {
    KernelDecl kernel;
    SignalDecl signal;
    std::vector<double> ws{5, 10, 20, 50, 100, 200};
    std::vector<double> ts; // empty: commands fall back to signal breakpoints
    std::uint64_t seed = 1;
    double tol = 1e-3;
    double nu = 0.5;
    double xi = 1e-3;
    double rho = 1e-4;
    int trials = 8;
    int grid = 1000;
    int mmax = 2000;
    double align_tol = 1e-9;
    std::string mode = "random"; // or "adversarial"
    std::string out;             // CSV output path; empty = stdout
};

// Built-in kernels: bspline2, bspline3, bspline:N, jackson, jackson:G:B,
// combined-b2 (the chi(1) = 0 reference kernel (1/4) B2(2te^-2) + (3/4) B2(2te)).
KernelDecl kernel_decl_from_name(const std::string& name);
// Built-in signals: demo (4-piece rational/constant signal with jumps at
// 3/2, 7/2, 11/2), step (unit step at 2), logt, linear, const3.
SignalDecl signal_decl_from_name(const std::string& name);

KernelPtr build_kernel(const KernelDecl& decl);
PiecewiseSignal build_signal(const SignalDecl& decl);
std::string signal_label(const SignalDecl& decl);

ExperimentConfig default_config(); // combined-b2 kernel, demo signal

ExperimentConfig parse_config_text(const std::string& text, const std::string& origin);
ExperimentConfig parse_config_file(const std::string& path);
std::string serialize_config(const ExperimentConfig& config);

std::vector<double> parse_double_list(const std::string& text);

} // namespace expsamp::cli
