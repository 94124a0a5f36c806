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

#include "signvr/optimizers.hpp"

#include <cmath>
#include <utility>

namespace signvr {

std::string to_string(Algorithm algo) {
  switch (algo) {
    case Algorithm::SignSGD: return "signsgd";
    case Algorithm::SignSGDPlus: return "signsgd_plus";
    case Algorithm::SignSVRG1: return "signsvrg_v1";
    case Algorithm::SignSVRG2: return "signsvrg_v2";
    case Algorithm::SignGD: return "signgd";
    case Algorithm::SGD: return "sgd";
    case Algorithm::SVRG: return "svrg";
  }
  return "?";
}

Algorithm parse_algorithm(std::string_view name) {
  for (auto algo : {Algorithm::SignSGD, Algorithm::SignSGDPlus, Algorithm::SignSVRG1,
                    Algorithm::SignSVRG2, Algorithm::SignGD, Algorithm::SGD, Algorithm::SVRG}) {
    if (to_string(algo) == name) return algo;
  }
  throw ContractError("unknown algorithm '" + std::string(name) + "'");
}

bool uses_reference_point(Algorithm algo) noexcept {
  return algo == Algorithm::SignSVRG1 || algo == Algorithm::SignSVRG2 || algo == Algorithm::SVRG;
}

SimpleState make_simple_state(DenseVector x1, double gamma) {
  if (!(gamma > 0.0)) throw ContractError("step size gamma must be > 0");
  return SimpleState{std::move(x1), 1, gamma};
}

SignSVRGState make_signsvrg_state(const FiniteSumProblem& problem, DenseVector x1, double gamma,
                                  double radius, double smoothness, ConjugatePair pair,
                                  SignSVRGVariant variant) {
  if (!(gamma > 0.0)) throw ContractError("step size gamma must be > 0");
  if (!(radius > 0.0)) throw ContractError("radius D must be > 0");
  if (!(smoothness >= 0.0)) throw ContractError("smoothness constant must be >= 0");
  if (x1.size() != problem.d()) throw ContractError("initial point has wrong dimension");
  SignSVRGState s;
  s.ref_grad = problem.full_gradient(x1);
  s.ref = x1;
  s.x = std::move(x1);
  s.gamma = gamma;
  s.radius = radius;
  s.smoothness = smoothness;
  s.pair = pair;
  s.variant = variant;
  return s;
}

// ---------------------------------------------------------------------------

SimpleState step_signsgd(SimpleState s, const FiniteSumProblem& problem, RngStream& rng) {
  const std::size_t i = sample_index(rng, problem.n());
  const DenseVector g = problem.component_gradient(i, s.x);
  for (std::size_t j = 0; j < g.size(); ++j) s.x[j] -= s.gamma * sign_of(g[j]);
  ++s.t;
  return s;
}

SimpleState step_signsgd_plus(SimpleState s, const FiniteSumProblem& problem, RngStream& rng,
                              double grad_bound_inf) {
  if (!(grad_bound_inf > 0.0)) throw ContractError("SignSGD+: G_inf must be > 0");
  const std::size_t i = sample_index(rng, problem.n());
  const DenseVector g = problem.component_gradient(i, s.x);
  const DenseVector u = sample_uniform_cube(rng, g.size());
  for (std::size_t j = 0; j < g.size(); ++j) {
    s.x[j] -= s.gamma * sign_of(g[j] + grad_bound_inf * u[j]);
  }
  ++s.t;
  return s;
}

SimpleState step_signgd(SimpleState s, const FiniteSumProblem& problem) {
  const DenseVector g = problem.full_gradient(s.x);
  for (std::size_t j = 0; j < g.size(); ++j) s.x[j] -= s.gamma * sign_of(g[j]);
  ++s.t;
  return s;
}

SimpleState step_sgd(SimpleState s, const FiniteSumProblem& problem, RngStream& rng) {
  const std::size_t i = sample_index(rng, problem.n());
  const DenseVector g = problem.component_gradient(i, s.x);
  for (std::size_t j = 0; j < g.size(); ++j) s.x[j] -= s.gamma * g[j];
  ++s.t;
  return s;
}

namespace {

constexpr double kRadiusSlack = 1e-12;

// v = grad f_i(x) - grad f_i(ref) + ref_grad
DenseVector variance_reduced_gradient(const SignSVRGState& s, const FiniteSumProblem& problem,
                                      std::size_t i) {
  DenseVector v = problem.component_gradient(i, s.x);
  v -= problem.component_gradient(i, s.ref);
  v += s.ref_grad;
  return v;
}

// Accept the candidate or refresh the reference; shared by SignSVRG and SVRG.
void settle_candidate(SignSVRGState& s, DenseVector candidate, const FiniteSumProblem& problem,
                      StepReport& report, std::uint64_t move_bits, std::uint64_t float_bits) {
  report.grad_evals_component = 2;
  // The relative slack absorbs rounding when a sign step lands exactly on
  // the boundary (P = 1), which would otherwise reject forever.
  if (norm(candidate - s.ref, s.pair.q()) <= s.radius * (1.0 + kRadiusSlack)) {
    s.x = std::move(candidate);
    report.moved = true;
    report.bits_sent = move_bits;
  } else {
    ++s.k;
    s.ref = s.x;
    s.ref_grad = problem.full_gradient(s.x);
    report.ref_updated = true;
    report.grad_evals_full = 1;
    report.bits_sent = static_cast<std::uint64_t>(problem.n()) * problem.d() * float_bits;
  }
  ++s.t;
}

}  // namespace

SignSVRGState step_signsvrg(SignSVRGState s, const FiniteSumProblem& problem, RngStream& rng,
                            StepReport* report, std::uint64_t float_bits) {
  const std::size_t d = problem.d();
  const std::size_t i = sample_index(rng, problem.n());
  const DenseVector u = sample_uniform_cube(rng, d);

  const double drift = s.smoothness * norm(s.x - s.ref, s.pair.q());
  DenseVector amplitude(d);
  if (s.variant == SignSVRGVariant::VarI) {
    const double g1 = drift + norm(s.ref_grad, s.pair.p());
    for (std::size_t j = 0; j < d; ++j) amplitude[j] = g1;
  } else {
    for (std::size_t j = 0; j < d; ++j) amplitude[j] = drift + std::abs(s.ref_grad[j]);
  }

  const DenseVector v = variance_reduced_gradient(s, problem, i);
  StepReport local;
  DenseVector candidate = s.x;
  for (std::size_t j = 0; j < d; ++j) {
    if (amplitude[j] == 0.0) local.degenerate = true;
    if (std::abs(v[j]) > amplitude[j] * (1.0 + 1e-12) + 1e-14) local.bound_violation = true;
    candidate[j] -= s.gamma * sign_of(v[j] + amplitude[j] * u[j]);
  }
  local.noise_scale = std::move(amplitude);
  settle_candidate(s, std::move(candidate), problem, local, d, float_bits);
  if (report != nullptr) *report = std::move(local);
  return s;
}

SignSVRGState step_svrg(SignSVRGState s, const FiniteSumProblem& problem, RngStream& rng,
                        StepReport* report, std::uint64_t float_bits) {
  const std::size_t d = problem.d();
  const std::size_t i = sample_index(rng, problem.n());
  const DenseVector v = variance_reduced_gradient(s, problem, i);
  DenseVector candidate = s.x;
  for (std::size_t j = 0; j < d; ++j) candidate[j] -= s.gamma * v[j];
  StepReport local;
  settle_candidate(s, std::move(candidate), problem, local, d * float_bits, float_bits);
  if (report != nullptr) *report = std::move(local);
  return s;
}

// ---------------------------------------------------------------------------

Schedule schedule_cor1(std::size_t d, Norm q, double smoothness, std::size_t T) {
  if (!(smoothness > 0.0)) throw ContractError("schedule_cor1: L must be > 0");
  if (T == 0 || d == 0) throw ContractError("schedule_cor1: T and d must be >= 1");
  const double base = std::sqrt(2.0 / (smoothness * static_cast<double>(T)));
  return Schedule{base / ConjugatePair(q).dim_factor(d), base};
}

Schedule schedule_cor2(double alpha, std::size_t d, std::size_t T) {
  if (!(alpha > 0.0)) throw ContractError("schedule_cor2: alpha must be > 0");
  if (T == 0 || d == 0) throw ContractError("schedule_cor2: T and d must be >= 1");
  return Schedule{alpha / std::sqrt(static_cast<double>(d) * static_cast<double>(T)),
                  1.0 / std::sqrt(static_cast<double>(T))};
}

double schedule_sec2(double dist_to_opt, std::size_t d, std::size_t T) {
  if (!(dist_to_opt > 0.0)) throw ContractError("schedule_sec2: ||x1 - x*|| must be > 0");
  if (T == 0 || d == 0) throw ContractError("schedule_sec2: T and d must be >= 1");
  return dist_to_opt / std::sqrt(static_cast<double>(d) * static_cast<double>(T));
}

// ---------------------------------------------------------------------------

namespace {

TraceRow observe(const FiniteSumProblem& problem, const DenseVector& x, std::size_t t) {
  TraceRow row;
  row.t = t;
  row.f = problem.value(x);
  const DenseVector g = problem.full_gradient(x);
  row.gnorm1 = norm(g, Norm::L1);
  row.gnorm2 = norm(g, Norm::L2);
  row.gnorm_inf = norm(g, Norm::LInf);
  if (!std::isfinite(row.f) || !std::isfinite(row.gnorm1) || !x.all_finite()) {
    throw RunAborted("non-finite value encountered at row " + std::to_string(t), t);
  }
  return row;
}

}  // namespace

Trace run(const AlgoConfig& config, const FiniteSumProblem& problem, std::size_t T,
          std::uint64_t seed) {
  if (T == 0) throw ContractError("run: T must be >= 1");
  if (config.x1.size() != problem.d()) throw ContractError("run: x1 has wrong dimension");
  const std::uint64_t n = problem.n();
  const std::uint64_t d = problem.d();
  const std::uint64_t sync_bits = n * d * config.float_bits;

  Trace trace;
  trace.config = config;
  trace.seed = seed;
  trace.n = problem.n();
  trace.d = problem.d();
  trace.rows.reserve(T);
  RngStream rng(seed);

  DenseVector sum(problem.d());
  std::uint64_t bits = 0;
  std::uint64_t evals = 0;
  auto record = [&](const DenseVector& x) {
    if (config.keep_iterates) trace.iterates.push_back(x);
  };

  if (uses_reference_point(config.algo)) {
    const auto variant =
        config.algo == Algorithm::SignSVRG2 ? SignSVRGVariant::VarII : SignSVRGVariant::VarI;
    if (config.algo != Algorithm::SVRG &&
        config.gamma * ConjugatePair(config.q).dim_factor(d) >
            config.radius * (1.0 + kRadiusSlack)) {
      throw ContractError("run: radius is smaller than one sign step, so no step is accepted");
    }
    SignSVRGState s = make_signsvrg_state(problem, config.x1, config.gamma, config.radius,
                                          config.smoothness, ConjugatePair(config.q), variant);
    bits = sync_bits;
    evals = n;
    for (std::size_t t = 1; t <= T; ++t) {
      TraceRow row = observe(problem, s.x, t);
      row.k = s.k;
      row.dist_to_ref = norm(s.x - s.ref, config.q);
      row.bits_cum = bits;
      row.grad_evals_cum = evals;
      sum += s.x;
      record(s.x);
      StepReport report;
      s = config.algo == Algorithm::SVRG
              ? step_svrg(std::move(s), problem, rng, &report, config.float_bits)
              : step_signsvrg(std::move(s), problem, rng, &report, config.float_bits);
      if (report.ref_updated) row.flags |= kFlagRefUpdate;
      if (report.degenerate) row.flags |= kFlagDegenerateNoise;
      if (report.bound_violation) row.flags |= kFlagBoundViolation;
      bits += report.bits_sent;
      evals += report.grad_evals_component + report.grad_evals_full * n;
      trace.rows.push_back(row);
    }
    trace.x_final = s.x;
  } else {
    SimpleState s = make_simple_state(config.x1, config.gamma);
    for (std::size_t t = 1; t <= T; ++t) {
      TraceRow row = observe(problem, s.x, t);
      row.bits_cum = bits;
      row.grad_evals_cum = evals;
      sum += s.x;
      record(s.x);
      switch (config.algo) {
        case Algorithm::SignSGD:
          s = step_signsgd(std::move(s), problem, rng);
          bits += d;
          evals += 1;
          break;
        case Algorithm::SignSGDPlus:
          s = step_signsgd_plus(std::move(s), problem, rng, config.grad_bound_inf);
          bits += d;
          evals += 1;
          break;
        case Algorithm::SignGD:
          s = step_signgd(std::move(s), problem);
          bits += sync_bits;
          evals += n;
          break;
        case Algorithm::SGD:
          s = step_sgd(std::move(s), problem, rng);
          bits += d * config.float_bits;
          evals += 1;
          break;
        default: throw ContractError("run: unsupported algorithm");
      }
      trace.rows.push_back(row);
    }
    trace.x_final = s.x;
  }

  record(trace.x_final);
  trace.f_final = problem.value(trace.x_final);
  if (!std::isfinite(trace.f_final) || !trace.x_final.all_finite()) {
    throw RunAborted("non-finite final iterate", T + 1);
  }
  sum *= 1.0 / static_cast<double>(T);
  trace.iterate_mean = std::move(sum);
  return trace;
}

std::size_t select_uniform_iterate(const Trace& trace, RngStream& rng) {
  if (trace.rows.empty()) throw ContractError("select_uniform_iterate: empty trace");
  return rng.index(trace.rows.size());
}

const DenseVector& average_iterates(const Trace& trace) {
  if (trace.rows.empty()) throw ContractError("average_iterates: empty trace");
  return trace.iterate_mean;
}

}  // namespace signvr
