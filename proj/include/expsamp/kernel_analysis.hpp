// Copyright Contributors to the expsamp project
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "expsamp/kernel.hpp"

namespace expsamp {

// sum_k chi(e^-k u) - 1 over the finitely many k with e^-k u in support.
double partition_residual(const Kernel& kernel, double u);

// psi^-(u) = sum_{k > log u} chi(u e^-k); psi^+(u) = sum_{k < log u} chi(u e^-k).
// The k = log u term (when log u is an integer) belongs to neither. Both are
// recurrent with fundamental interval [1, e]. When log u is within 1e-12 of
// an integer the threshold snaps to that integer.
double psi_minus(const Kernel& kernel, double u);
double psi_plus(const Kernel& kernel, double u);
// Log-domain forms for callers that know log u exactly.
double psi_minus_log(const Kernel& kernel, double log_u);
double psi_plus_log(const Kernel& kernel, double log_u);

// m_nu(chi, u) = sum_k chi(e^-k u) (k - log u)^nu (signed).
double algebraic_moment(const Kernel& kernel, int nu, double u);

// M_nu(chi, u) = sum_k |chi(e^-k u)| |k - log u|^nu. For Jackson kernels with
// nu >= 2 beta - 1 the true moment diverges; the returned value is the
// truncated estimate (query kernel.moment_finite(nu)).
double absolute_moment(const Kernel& kernel, double nu, double u);
// Same with u given by its logarithm (u = t^w overflows long before
// w log t does).
double absolute_moment_log(const Kernel& kernel, double nu, double log_u);

// M_nu(chi): sup over u, taken on a grid over the fundamental interval
// [1, e] (index-shift recurrence M_nu(chi, e u) = M_nu(chi, u)).
double sup_absolute_moment(const Kernel& kernel, double nu, int grid_size = 10000);

// Mellin transform int_0^inf y^{s-1} chi(y) dy by adaptive quadrature in the
// log domain, panels split at the kernel's breakpoints.
std::complex<double> mellin_transform(const Kernel& kernel, std::complex<double> s,
                                      double abs_tol = 1e-10);

struct Theorem5Report {
    int K = 0;
    double tol = 1e-8;
    // Half-line integrals int_0^1 chi(u) u^{2 k pi i} du/u and the upper
    // counterpart, for k = -K..K (index k + K).
    std::vector<std::complex<double>> lower;
    std::vector<std::complex<double>> upper;
    double alpha = 0.0;        // Re lower[k=0]
    bool hypothesis_ok = true; // chi(1) = 0 (warning when violated)
    bool lower_ok = false;     // |lower[k]| < tol for all k != 0
    bool upper_ok = false;
    bool mass_ok = false;      // lower[0] + upper[0] = 1 within tol
    bool pass() const { return lower_ok && upper_ok && mass_ok; }
};

Theorem5Report verify_theorem5_conditions(const Kernel& kernel, int K, double tol = 1e-8);

struct KernelReport {
    std::string kernel_id;
    double partition_max_residual = 0.0;
    double chi_at_one = 0.0;
    double psi_minus_at_one = 0.0;
    double m0 = 0.0;
    double nu = 1.0; // order of the reported absolute moment
    double m_nu = 0.0;
    bool moment_warning = false; // M_nu possibly divergent (truncated estimate)
    std::vector<std::pair<double, double>> psi_minus_fundamental; // (u, psi^-(u)), u in [1, e)
    double psi_spread = 0.0;                                      // max - min over the scan
    std::optional<double> alpha_estimate; // present iff psi^- constant on (1, e)
    std::vector<std::complex<double>> mellin_at_2kpi; // k = -K..K
    int mellin_K = 0;
};

struct CheckOptions {
    int partition_grid = 10000;
    int psi_grid = 1000;
    int sup_grid = 10000;
    double nu = 1.0;
    int mellin_K = 5;
    double psi_const_tol = 1e-9;
    double mellin_tol = 1e-10;
    std::uint64_t seed = 1234; // partition scan uses random u in [1, e]
    // Wide (truncated) kernels get their scan grids shrunk so that a check
    // stays near this many kernel evaluations per scan.
    double scan_budget = 4e6;
    // Oscillatory Mellin samples (k != 0) are only computed when the
    // support fits this many log units; wider supports keep just k = 0.
    double mellin_width_limit = 64.0;
};

KernelReport check_kernel_conditions(const Kernel& kernel, const CheckOptions& options = {});

// Key-value serialization of a report (one "key = value" per line).
std::string report_to_kv(const KernelReport& report);

} // namespace expsamp
