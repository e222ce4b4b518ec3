// Copyright Contributors to the expsamp project
// SPDX-License-Identifier: Apache-2.0
//
// expsamp: exponential sampling series on the positive half-line.
// Subcommands: kernel-check, table, figure, jump, diverge, rate, roundoff,
// jitter. Exit codes: 0 pass, 1 numerical mismatch, 2 usage/config error.

#include <fstream>
#include <functional>
#include <iostream>

#include <CLI11.hpp>

#include "cli_commands.hpp"
#include "cli_config.hpp"
#include "expsamp/error_lab.hpp"
#include "expsamp/quadrature.hpp"

namespace {

using expsamp::cli::ExperimentConfig;

struct CommonFlags {
    std::string config_path, kernel, signal, w_list, t_list, out, mode;
    std::uint64_t seed = 0;
    double tol = -1.0, nu = -1.0, xi = -1.0, rho = -1.0;
    int trials = -1, grid = -1, mmax = -1;
    bool seed_set = false;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--config", flags.config_path, "experiment config file");
    cmd->add_option("--kernel", flags.kernel,
                    "kernel name (bspline2, bspline3, bspline:N, jackson, jackson:G:B, "
                    "combined-b2)");
    cmd->add_option("--signal", flags.signal, "signal name (demo, step, logt, linear, const3)");
    cmd->add_option("--w", flags.w_list, "comma-separated w values");
    cmd->add_option("--t", flags.t_list, "comma-separated t values");
    cmd->add_option("--seed", flags.seed, "random seed")->each([&flags](const std::string&) {
        flags.seed_set = true;
    });
    cmd->add_option("--out", flags.out, "CSV output path (default stdout)");
    cmd->add_option("--tol", flags.tol, "comparison tolerance");
    cmd->add_option("--nu", flags.nu, "modulus exponent in (0,1)");
    cmd->add_option("--xi", flags.xi, "round-off amplitude");
    cmd->add_option("--rho", flags.rho, "jitter amplitude");
    cmd->add_option("--trials", flags.trials, "random trials");
    cmd->add_option("--grid", flags.grid, "t-grid size");
    cmd->add_option("--mmax", flags.mmax, "largest subsequence index for diverge");
    cmd->add_option("--mode", flags.mode, "perturbation mode: random | adversarial");
}

ExperimentConfig resolve(const CommonFlags& flags) {
    ExperimentConfig config = flags.config_path.empty()
                                  ? expsamp::cli::default_config()
                                  : expsamp::cli::parse_config_file(flags.config_path);
    if (!flags.kernel.empty()) config.kernel = expsamp::cli::kernel_decl_from_name(flags.kernel);
    if (!flags.signal.empty()) config.signal = expsamp::cli::signal_decl_from_name(flags.signal);
    if (!flags.w_list.empty()) config.ws = expsamp::cli::parse_double_list(flags.w_list);
    if (!flags.t_list.empty()) config.ts = expsamp::cli::parse_double_list(flags.t_list);
    if (flags.seed_set) config.seed = flags.seed;
    if (!flags.out.empty()) config.out = flags.out;
    if (flags.tol >= 0.0) config.tol = flags.tol;
    if (flags.nu >= 0.0) config.nu = flags.nu;
    if (flags.xi >= 0.0) config.xi = flags.xi;
    if (flags.rho >= 0.0) config.rho = flags.rho;
    if (flags.trials >= 0) config.trials = flags.trials;
    if (flags.grid >= 0) config.grid = flags.grid;
    if (flags.mmax >= 0) config.mmax = flags.mmax;
    if (!flags.mode.empty()) {
        if (flags.mode != "random" && flags.mode != "adversarial")
            throw expsamp::cli::ConfigError("--mode must be 'random' or 'adversarial'");
        config.mode = flags.mode;
    }
    return config;
}

int dispatch(const ExperimentConfig& config,
             const std::function<int(const ExperimentConfig&, std::ostream&, std::ostream&)>& fn) {
    if (config.out.empty()) return fn(config, std::cout, std::cerr);
    std::ofstream out(config.out, std::ios::binary);
    if (!out) throw expsamp::cli::ConfigError("cannot open output file '" + config.out + "'");
    return fn(config, out, std::cerr);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exponential sampling series toolkit"};
    app.require_subcommand(1);

    CommonFlags flags;
    int table_id = 1, figure_id = 1;

    auto* check = app.add_subcommand("kernel-check", "verify kernel admissibility");
    add_common(check, flags);
    auto* table = app.add_subcommand("table", "reproduce a reference table (1-3)");
    table->add_option("id", table_id, "table id")->required()->check(CLI::Range(1, 3));
    add_common(table, flags);
    auto* figure = app.add_subcommand("figure", "emit plot points for a figure (1-3)");
    figure->add_option("id", figure_id, "figure id")->required()->check(CLI::Range(1, 3));
    add_common(figure, flags);
    auto* jump = app.add_subcommand("jump", "series values and predicted limits at jumps");
    add_common(jump, flags);
    auto* diverge = app.add_subcommand("diverge", "aligned vs offset subsequence witness");
    add_common(diverge, flags);
    auto* rate = app.add_subcommand("rate", "modulus-of-continuity rate bound check");
    add_common(rate, flags);
    auto* roundoff = app.add_subcommand("roundoff", "round-off error experiment");
    add_common(roundoff, flags);
    auto* jitter = app.add_subcommand("jitter", "time-jitter error experiment");
    add_common(jitter, flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return 2;
    }

    try {
        const ExperimentConfig config = resolve(flags);
        namespace cli = expsamp::cli;
        if (check->parsed()) return dispatch(config, cli::cmd_kernel_check);
        if (table->parsed())
            return dispatch(config, [&](const ExperimentConfig& c, std::ostream& o,
                                        std::ostream& l) { return cli::cmd_table(c, table_id, o, l); });
        if (figure->parsed())
            return dispatch(config, [&](const ExperimentConfig& c, std::ostream& o,
                                        std::ostream& l) { return cli::cmd_figure(c, figure_id, o, l); });
        if (jump->parsed()) return dispatch(config, cli::cmd_jump);
        if (diverge->parsed()) return dispatch(config, cli::cmd_diverge);
        if (rate->parsed()) return dispatch(config, cli::cmd_rate);
        if (roundoff->parsed()) return dispatch(config, cli::cmd_roundoff);
        if (jitter->parsed()) return dispatch(config, cli::cmd_jitter);
        std::cerr << "no subcommand\n";
        return 2;
    } catch (const expsamp::cli::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const expsamp::ExperimentRejected& e) {
        std::cerr << "experiment rejected: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
