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
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "signvr/optimizers.hpp"
#include "signvr/problems.hpp"

namespace signvr {

/// Invalid or inconsistent experiment configuration. `field` names the
/// offending key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

enum class ScheduleRule { Cor1, Cor2, Sec2, Manual };

std::string to_string(ScheduleRule rule);

struct X1Spec {
  enum class Kind { Zeros, Gaussian, Explicit };
  Kind kind = Kind::Zeros;
  double scale = 1.0;          // Gaussian
  std::vector<double> values;  // Explicit
};

/// Names accepted in ExperimentConfig::checks.
const std::vector<std::string>& known_checks();

struct ExperimentConfig {
  ProblemSpec problem;
  Algorithm algo = Algorithm::SignGD;
  ScheduleRule schedule = ScheduleRule::Manual;
  double gamma = 0.0;   // manual schedule
  double radius = 0.0;  // manual schedule, reference-point methods
  Norm q = Norm::L2;
  std::size_t T = 1;
  std::optional<double> period;  // P; defaults to F n
  std::optional<double> alpha;   // cor2; defaults to ||x1 - x*||_2
  std::vector<std::uint64_t> seeds{0};
  X1Spec x1;
  std::uint64_t float_bits = 32;
  std::vector<std::string> checks;
  std::optional<double> grad_bound_inf;  // overrides the problem's G_inf
  bool keep_iterates = false;

  double resolved_period() const;
};

ProblemSpec problem_spec_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ProblemSpec& spec);

/// Parses and validates. Throws ConfigError.
ExperimentConfig config_from_json(const nlohmann::json& j);
ExperimentConfig load_config(const std::string& path);
/// Canonical echo; config_from_json(to_json(c)) reproduces c.
nlohmann::json to_json(const ExperimentConfig& config);

/// Structural rules that need no problem instance. Throws ConfigError.
void validate(const ExperimentConfig& config);

/// x1 for the given problem dimension; Gaussian draws come from the problem
/// seed, so every run seed starts at the same point.
DenseVector resolve_x1(const ExperimentConfig& config, std::size_t d);

}  // namespace signvr
