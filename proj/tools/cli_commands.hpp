// Copyright Contributors to the expsamp project
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>

#include "cli_config.hpp"

namespace expsamp::cli {

// Exit codes: 0 pass, 1 numerical mismatch / failed check, 2 usage or
// config error. Commands write CSV to `csv` and human-readable summaries
// to `log`.

int cmd_kernel_check(const ExperimentConfig& config, std::ostream& csv, std::ostream& log);
int cmd_table(const ExperimentConfig& config, int table_id, std::ostream& csv, std::ostream& log);
int cmd_figure(const ExperimentConfig& config, int figure_id, std::ostream& csv,
               std::ostream& log);
int cmd_jump(const ExperimentConfig& config, std::ostream& csv, std::ostream& log);
int cmd_diverge(const ExperimentConfig& config, std::ostream& csv, std::ostream& log);
int cmd_rate(const ExperimentConfig& config, std::ostream& csv, std::ostream& log);
int cmd_roundoff(const ExperimentConfig& config, std::ostream& csv, std::ostream& log);
int cmd_jitter(const ExperimentConfig& config, std::ostream& csv, std::ostream& log);

// Reference values used by `table` (values of S_w f at the three jumps for
// w = 5..200, and the predicted limits).
inline constexpr double kTableW[6] = {5, 10, 20, 50, 100, 200};
inline constexpr double kTable1[6] = {3.0036, 2.8669, 2.8059, 2.7717, 2.7608, 2.7554};
inline constexpr double kTable2[6] = {2.25, 2.25, 2.25, 2.25, 2.25, 2.25};
inline constexpr double kTable3[6] = {1.0492, 1.1420, 1.1939, 1.2271, 1.2384, 1.2442};
inline constexpr double kTableT[3] = {1.5, 3.5, 5.5};
inline constexpr double kTablePredicted[3] = {2.75, 2.25, 1.25};

} // namespace expsamp::cli
