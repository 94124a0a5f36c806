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

#include "signvr/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

#include "signvr/rng.hpp"

namespace signvr {

using nlohmann::json;

std::string to_string(ScheduleRule rule) {
  switch (rule) {
    case ScheduleRule::Cor1: return "cor1";
    case ScheduleRule::Cor2: return "cor2";
    case ScheduleRule::Sec2: return "sec2";
    case ScheduleRule::Manual: return "manual";
  }
  return "?";
}

const std::vector<std::string>& known_checks() {
  static const std::vector<std::string> names{
      "theorem2_var1", "theorem2_var2", "theorem3",
      "regret_sec2",   "sec2_final",    "signgd_bound",
      "signgd_descent_accounting",      "corollary1",
      "update_count_bound",             "comm_bits"};
  return names;
}

double ExperimentConfig::resolved_period() const {
  if (period) return *period;
  return static_cast<double>(float_bits) * static_cast<double>(problem.n);
}

namespace {

ScheduleRule parse_rule(const std::string& name) {
  for (auto r : {ScheduleRule::Cor1, ScheduleRule::Cor2, ScheduleRule::Sec2, ScheduleRule::Manual}) {
    if (to_string(r) == name) return r;
  }
  throw ConfigError("schedule", "unknown rule '" + name + "'");
}

double positive_number(const json& j, const std::string& field) {
  if (!j.is_number()) throw ConfigError(field, "expected a number");
  const double v = j.get<double>();
  if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError(field, "must be a positive finite number");
  return v;
}

std::uint64_t unsigned_integer(const json& j, const std::string& field) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0)) {
    throw ConfigError(field, "expected a non-negative integer");
  }
  return j.get<std::uint64_t>();
}

Norm parse_q(const json& j) {
  try {
    if (j.is_string()) return parse_norm(j.get<std::string>());
    if (j.is_number_integer()) return parse_norm(std::to_string(j.get<std::int64_t>()));
  } catch (const ContractError&) {
  }
  throw ConfigError("q", "expected \"1\", \"2\" or \"inf\"");
}

X1Spec parse_x1(const json& j) {
  X1Spec spec;
  if (j.is_string()) {
    if (j.get<std::string>() == "zeros") return spec;
    throw ConfigError("x1", "unknown initial point '" + j.get<std::string>() + "'");
  }
  if (j.is_array()) {
    spec.kind = X1Spec::Kind::Explicit;
    for (const auto& v : j) {
      if (!v.is_number()) throw ConfigError("x1", "explicit values must be numbers");
      spec.values.push_back(v.get<double>());
    }
    return spec;
  }
  if (j.is_object()) {
    const std::string kind = j.value("kind", std::string{});
    if (kind == "zeros") return spec;
    if (kind == "gaussian") {
      spec.kind = X1Spec::Kind::Gaussian;
      if (j.contains("scale")) spec.scale = positive_number(j.at("scale"), "x1.scale");
      return spec;
    }
    if (kind == "explicit") return parse_x1(j.value("values", json::array()));
    throw ConfigError("x1.kind", "expected zeros, gaussian or explicit");
  }
  throw ConfigError("x1", "expected \"zeros\", an object or an array");
}

json x1_to_json(const X1Spec& spec) {
  switch (spec.kind) {
    case X1Spec::Kind::Zeros: return json{{"kind", "zeros"}};
    case X1Spec::Kind::Gaussian: return json{{"kind", "gaussian"}, {"scale", spec.scale}};
    case X1Spec::Kind::Explicit: return json{{"kind", "explicit"}, {"values", spec.values}};
  }
  return json{};
}

void reject_unknown_keys(const json& j, const std::set<std::string>& allowed,
                         const std::string& prefix) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!allowed.count(it.key())) throw ConfigError(prefix + it.key(), "unknown field");
  }
}

bool check_allowed(const std::string& check, Algorithm algo) {
  if (check == "theorem2_var1" || check == "theorem3") return algo == Algorithm::SignSVRG1;
  if (check == "theorem2_var2") return algo == Algorithm::SignSVRG2;
  if (check == "corollary1") return algo == Algorithm::SignSVRG1 || algo == Algorithm::SignSVRG2;
  if (check == "regret_sec2" || check == "sec2_final") {
    return algo == Algorithm::SignSGDPlus || algo == Algorithm::SignSGD;
  }
  if (check == "signgd_bound" || check == "signgd_descent_accounting") {
    return algo == Algorithm::SignGD;
  }
  if (check == "update_count_bound" || check == "comm_bits") return uses_reference_point(algo);
  return false;
}

}  // namespace

ProblemSpec problem_spec_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("problem", "expected an object");
  reject_unknown_keys(j, {"kind", "d", "n", "seed", "lambda", "label_noise", "target_noise"},
                      "problem.");
  ProblemSpec spec;
  if (!j.contains("kind") || !j.at("kind").is_string()) {
    throw ConfigError("problem.kind", "required string");
  }
  try {
    spec.kind = parse_problem_kind(j.at("kind").get<std::string>());
  } catch (const ContractError& e) {
    throw ConfigError("problem.kind", e.what());
  }
  if (spec.kind == ProblemKind::Counterexample) {
    spec.d = 1;
    spec.n = 3;
  } else if (spec.kind == ProblemKind::SphereQuadratic) {
    spec.n = 1;
  }
  if (j.contains("d")) {
    const auto d = unsigned_integer(j.at("d"), "problem.d");
    if (spec.kind == ProblemKind::Counterexample && d != 1) {
      throw ConfigError("problem.d", "counterexample has d = 1");
    }
    spec.d = d;
  }
  if (j.contains("n")) {
    const auto n = unsigned_integer(j.at("n"), "problem.n");
    if (spec.kind == ProblemKind::Counterexample && n != 3) {
      throw ConfigError("problem.n", "counterexample has n = 3");
    }
    if (spec.kind == ProblemKind::SphereQuadratic && n != 1) {
      throw ConfigError("problem.n", "sphere_quadratic has n = 1");
    }
    spec.n = n;
  }
  if (spec.d == 0) throw ConfigError("problem.d", "must be >= 1");
  if (spec.n == 0) throw ConfigError("problem.n", "must be >= 1");
  if (j.contains("seed")) spec.seed = unsigned_integer(j.at("seed"), "problem.seed");
  auto non_negative = [&](const char* key, double& target) {
    if (!j.contains(key)) return;
    const json& v = j.at(key);
    if (!v.is_number() || !(v.get<double>() >= 0.0)) {
      throw ConfigError(std::string("problem.") + key, "must be a non-negative number");
    }
    target = v.get<double>();
  };
  non_negative("lambda", spec.lambda);
  non_negative("label_noise", spec.label_noise);
  non_negative("target_noise", spec.target_noise);
  return spec;
}

json to_json(const ProblemSpec& spec) {
  return json{{"kind", to_string(spec.kind)},   {"d", spec.d},
              {"n", spec.n},                    {"seed", spec.seed},
              {"lambda", spec.lambda},          {"label_noise", spec.label_noise},
              {"target_noise", spec.target_noise}};
}

ExperimentConfig config_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("config", "expected a JSON object");
  reject_unknown_keys(j,
                      {"problem", "algo", "schedule", "q", "T", "P", "alpha", "seeds", "x1", "F",
                       "checks", "G_inf", "keep_iterates"},
                      "");
  ExperimentConfig c;
  if (!j.contains("problem")) throw ConfigError("problem", "required");
  c.problem = problem_spec_from_json(j.at("problem"));

  if (!j.contains("algo") || !j.at("algo").is_string()) throw ConfigError("algo", "required string");
  try {
    c.algo = parse_algorithm(j.at("algo").get<std::string>());
  } catch (const ContractError&) {
    throw ConfigError("algo", "unknown algorithm '" + j.at("algo").get<std::string>() + "'");
  }

  if (!j.contains("schedule")) throw ConfigError("schedule", "required");
  const json& sched = j.at("schedule");
  if (sched.is_string()) {
    c.schedule = parse_rule(sched.get<std::string>());
  } else if (sched.is_object()) {
    reject_unknown_keys(sched, {"rule", "gamma", "D"}, "schedule.");
    c.schedule = parse_rule(sched.value("rule", std::string{}));
    if (sched.contains("gamma")) c.gamma = positive_number(sched.at("gamma"), "schedule.gamma");
    if (sched.contains("D")) c.radius = positive_number(sched.at("D"), "schedule.D");
  } else {
    throw ConfigError("schedule", "expected a rule name or an object");
  }

  if (j.contains("q")) c.q = parse_q(j.at("q"));
  if (!j.contains("T")) throw ConfigError("T", "required");
  c.T = unsigned_integer(j.at("T"), "T");
  if (j.contains("P")) c.period = positive_number(j.at("P"), "P");
  if (j.contains("alpha")) c.alpha = positive_number(j.at("alpha"), "alpha");
  if (j.contains("seeds")) {
    if (!j.at("seeds").is_array()) throw ConfigError("seeds", "expected an array");
    c.seeds.clear();
    for (const auto& s : j.at("seeds")) c.seeds.push_back(unsigned_integer(s, "seeds"));
  }
  if (j.contains("x1")) c.x1 = parse_x1(j.at("x1"));
  if (j.contains("F")) c.float_bits = unsigned_integer(j.at("F"), "F");
  if (j.contains("checks")) {
    if (!j.at("checks").is_array()) throw ConfigError("checks", "expected an array");
    for (const auto& s : j.at("checks")) {
      if (!s.is_string()) throw ConfigError("checks", "expected check names");
      c.checks.push_back(s.get<std::string>());
    }
  }
  if (j.contains("G_inf")) c.grad_bound_inf = positive_number(j.at("G_inf"), "G_inf");
  if (j.contains("keep_iterates")) {
    if (!j.at("keep_iterates").is_boolean()) throw ConfigError("keep_iterates", "expected a bool");
    c.keep_iterates = j.at("keep_iterates").get<bool>();
  }
  validate(c);
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError("config", std::string("malformed JSON: ") + e.what());
  }
  return config_from_json(j);
}

json to_json(const ExperimentConfig& c) {
  json sched;
  if (c.schedule == ScheduleRule::Manual) {
    sched = json{{"rule", "manual"}, {"gamma", c.gamma}};
    if (c.radius > 0.0) sched["D"] = c.radius;
  } else {
    sched = to_string(c.schedule);
  }
  json j{{"problem", to_json(c.problem)},
         {"algo", to_string(c.algo)},
         {"schedule", sched},
         {"q", to_string(c.q)},
         {"T", c.T},
         {"seeds", c.seeds},
         {"x1", x1_to_json(c.x1)},
         {"F", c.float_bits},
         {"checks", c.checks},
         {"keep_iterates", c.keep_iterates}};
  if (c.period) j["P"] = *c.period;
  if (c.alpha) j["alpha"] = *c.alpha;
  if (c.grad_bound_inf) j["G_inf"] = *c.grad_bound_inf;
  return j;
}

void validate(const ExperimentConfig& c) {
  if (c.T == 0) throw ConfigError("T", "must be >= 1");
  if (c.seeds.empty()) throw ConfigError("seeds", "at least one seed required");
  std::set<std::uint64_t> distinct(c.seeds.begin(), c.seeds.end());
  if (distinct.size() != c.seeds.size()) throw ConfigError("seeds", "seeds must be distinct");
  if (c.float_bits == 0) throw ConfigError("F", "must be >= 1");
  if (c.x1.kind == X1Spec::Kind::Explicit && c.x1.values.size() != c.problem.d) {
    throw ConfigError("x1", "explicit x1 must have d entries");
  }

  const bool ref = uses_reference_point(c.algo);
  switch (c.schedule) {
    case ScheduleRule::Cor1:
      if (!(ref || c.algo == Algorithm::SignGD)) {
        throw ConfigError("schedule", "cor1 needs signsvrg_v1, signsvrg_v2, svrg or signgd");
      }
      break;
    case ScheduleRule::Cor2:
      if (c.algo != Algorithm::SignSVRG1) throw ConfigError("schedule", "cor2 needs signsvrg_v1");
      break;
    case ScheduleRule::Sec2:
      if (c.algo != Algorithm::SignSGDPlus && c.algo != Algorithm::SignSGD) {
        throw ConfigError("schedule", "sec2 needs signsgd_plus or signsgd");
      }
      break;
    case ScheduleRule::Manual:
      if (!(c.gamma > 0.0)) throw ConfigError("schedule.gamma", "manual schedule needs gamma > 0");
      if (ref && !(c.radius > 0.0)) {
        throw ConfigError("schedule.D", "reference-point methods need D > 0");
      }
      break;
  }

  const auto& known = known_checks();
  for (const std::string& check : c.checks) {
    if (std::find(known.begin(), known.end(), check) == known.end()) {
      throw ConfigError("checks", "unknown check '" + check + "'");
    }
    if (!check_allowed(check, c.algo)) {
      throw ConfigError("checks", "check '" + check + "' does not apply to " + to_string(c.algo));
    }
  }
}

DenseVector resolve_x1(const ExperimentConfig& c, std::size_t d) {
  switch (c.x1.kind) {
    case X1Spec::Kind::Zeros: return DenseVector(d);
    case X1Spec::Kind::Gaussian: {
      RngStream rng = RngStream(c.problem.seed).child("x1");
      return sample_gaussian(rng, d, c.x1.scale);
    }
    case X1Spec::Kind::Explicit:
      if (c.x1.values.size() != d) throw ConfigError("x1", "explicit x1 must have d entries");
      return DenseVector(c.x1.values);
  }
  return DenseVector(d);
}

}  // namespace signvr
