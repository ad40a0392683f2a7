// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <functional>
#include <string>

#include "config.hpp"

namespace monobox::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitCheckFailed = 3;

/// Worker count: hardware concurrency, capped by MONOBOX_THREADS when set.
std::size_t worker_count(std::size_t jobs);

/// Runs job(i) for i in [0, n) on the worker pool. Each job writes only its
/// own result slot; the first exception is rethrown after all workers stop.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& job);

/// 12 significant digits in scientific notation.
std::string format_number(double x);

int cmd_run(const ExperimentConfig& cfg);
int cmd_integrate(const ExperimentConfig& cfg);
int cmd_complexity(const ExperimentConfig& cfg);
int cmd_rates(const ExperimentConfig& cfg);
int cmd_certificates(const ExperimentConfig& cfg);
int cmd_fig2(const ExperimentConfig& cfg);
int cmd_adversary(const ExperimentConfig& cfg);

}  // namespace monobox::cli
