// Copyright 2026 The signvr Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// =============================================================================

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "signvr/analysis.hpp"
#include "signvr/config.hpp"
#include "signvr/optimizers.hpp"
#include "signvr/problems.hpp"

namespace signvr {

inline constexpr const char* kVersion = "0.1.0";

/// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 1;
inline constexpr int kExitCheckFailed = 2;

/// Hyperparameters resolved from a config against its problem instance.
struct ResolvedRun {
  AlgoConfig algo;
  double period = 0.0;
  std::optional<double> smoothness;
  std::optional<double> f_star;
  std::string f_star_source;  // "optimum", "lower_bound" or "numerical"
  std::optional<DenseVector> x_star;
};

struct ExperimentResult {
  ExperimentConfig config;
  std::shared_ptr<const FiniteSumProblem> problem;
  ResolvedRun resolved;
  std::vector<Trace> traces;  // in config.seeds order
  std::vector<BoundReport> reports;
  double wall_time_seconds = 0.0;

  bool all_hold() const;
};

/// Resolves step size, radius, constants and reference values; throws
/// ConfigError when the problem cannot support the requested combination.
ResolvedRun resolve_run(const ExperimentConfig& config, const FiniteSumProblem& problem);

/// Runs every seed (concurrently, one thread per seed) and evaluates checks.
ExperimentResult run_experiment(const ExperimentConfig& config);

/// Evaluates one named check over finished traces.
BoundReport evaluate_check(const std::string& name, const ExperimentResult& result);

/// Minimum of f by deterministic full gradient descent with step 1 / L_2.
Optimum numerical_optimum(const FiniteSumProblem& problem, std::size_t iterations = 20000);

/// Shortest round-trip decimal form of a double.
std::string format_double(double v);

inline constexpr const char* kTraceHeader =
    "t,f,gnorm1,gnorm2,gnormInf,k,dist_to_ref,bits_cum,grad_evals_cum,flags";

void write_trace_csv(std::ostream& out, const Trace& trace);
std::string trace_file_name(std::uint64_t seed);

nlohmann::json to_json(const BoundReport& report);
nlohmann::json summary_json(const ExperimentResult& result);

// ---------------------------------------------------------------------------
// Subcommands. Each returns an exit code and writes human-readable lines to
// `out` and diagnostics to `err`.

int cmd_run(const std::string& config_path, const std::string& out_dir, std::ostream& out,
            std::ostream& err);

struct KeyIdentityOptions {
  std::size_t N = 1000000;
  std::uint64_t seed = 0;
  std::vector<double> ratios{-1.0, -0.75, -0.5, -0.25, 0.0, 0.25, 0.5, 0.75, 1.0};
  std::vector<double> scales{0.5, 1.0, 3.0};
};
int cmd_verify_key_identity(const KeyIdentityOptions& options, std::ostream& out,
                            std::ostream& err);

int cmd_example1(std::size_t d, std::size_t samples, std::uint64_t seed, std::ostream& out,
                 std::ostream& err);

struct NonconvergenceResult {
  double signsgd_tail_mean = 0.0;
  double signsgd_plus_gap = 0.0;
  double signsgd_plus_bound = 0.0;
  bool stayed_in_box = true;
  int exit_code = kExitOk;
};
NonconvergenceResult nonconvergence_demo(std::size_t T, double gamma, std::uint64_t seed,
                                         std::ostream& out, std::ostream& err);
int cmd_nonconvergence_demo(std::size_t T, double gamma, std::uint64_t seed, std::ostream& out,
                            std::ostream& err);

}  // namespace signvr
