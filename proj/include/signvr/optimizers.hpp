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
#include <string_view>
#include <vector>

#include "signvr/problems.hpp"
#include "signvr/rng.hpp"
#include "signvr/trace.hpp"
#include "signvr/vecmath.hpp"

namespace signvr {

enum class Algorithm { SignSGD, SignSGDPlus, SignSVRG1, SignSVRG2, SignGD, SGD, SVRG };

std::string to_string(Algorithm algo);
Algorithm parse_algorithm(std::string_view name);
/// True for the methods that keep a reference point (SignSVRG I/II and SVRG).
bool uses_reference_point(Algorithm algo) noexcept;

enum class SignSVRGVariant { VarI, VarII };

// ---------------------------------------------------------------------------
// State

struct SimpleState {
  DenseVector x;
  std::size_t t = 1;
  double gamma = 0.0;
};

SimpleState make_simple_state(DenseVector x1, double gamma);

/// Iterate plus reference point for SignSVRG and the SVRG baseline.
///
/// Invariants: ref_grad is the full gradient at ref; ||x - ref||_q <= radius
/// at the start of every step; k starts at 1 and never decreases.
struct SignSVRGState {
  DenseVector x;
  DenseVector ref;
  DenseVector ref_grad;
  std::size_t k = 1;
  std::size_t t = 1;
  double gamma = 0.0;
  double radius = 0.0;
  double smoothness = 0.0;
  ConjugatePair pair{Norm::L1};
  SignSVRGVariant variant = SignSVRGVariant::VarI;
};

/// Sets ref = x1 and computes the initial full gradient.
SignSVRGState make_signsvrg_state(const FiniteSumProblem& problem, DenseVector x1, double gamma,
                                  double radius, double smoothness, ConjugatePair pair,
                                  SignSVRGVariant variant = SignSVRGVariant::VarI);

struct StepReport {
  bool moved = false;
  bool ref_updated = false;
  DenseVector noise_scale;  // G_t
  std::size_t grad_evals_component = 0;
  std::size_t grad_evals_full = 0;
  std::uint64_t bits_sent = 0;
  bool degenerate = false;
  bool bound_violation = false;
};

// ---------------------------------------------------------------------------
// Steps

/// x <- x - gamma sign(grad f_i(x)).
SimpleState step_signsgd(SimpleState s, const FiniteSumProblem& problem, RngStream& rng);

/// x <- x - gamma sign(grad f_i(x) + G_inf U), U uniform on [-1, 1]^d.
/// Draws i first, then U.
SimpleState step_signsgd_plus(SimpleState s, const FiniteSumProblem& problem, RngStream& rng,
                              double grad_bound_inf);

/// x <- x - gamma sign(grad f(x)).
SimpleState step_signgd(SimpleState s, const FiniteSumProblem& problem);

/// x <- x - gamma grad f_i(x).
SimpleState step_sgd(SimpleState s, const FiniteSumProblem& problem, RngStream& rng);

/// One iteration of SignSVRG.
///
/// With v = grad f_i(x) - grad f_i(ref) + ref_grad and the noise amplitude
///   VarI:  G_t^j = L ||x - ref||_q + ||ref_grad||_p   (same for every j)
///   VarII: G_t^j = L ||x - ref||_q + |ref_grad^j|
/// the candidate is x+ = x - gamma sign(v + G_t (x) U). It is accepted when
/// ||x+ - ref||_q <= radius; otherwise the candidate is discarded, ref moves
/// to x and the full gradient is recomputed there. Draws i first, then U.
SignSVRGState step_signsvrg(SignSVRGState s, const FiniteSumProblem& problem, RngStream& rng,
                            StepReport* report = nullptr, std::uint64_t float_bits = 32);

/// SVRG baseline with the same radius-triggered reference refresh,
/// stepping x+ = x - gamma v.
SignSVRGState step_svrg(SignSVRGState s, const FiniteSumProblem& problem, RngStream& rng,
                        StepReport* report = nullptr, std::uint64_t float_bits = 32);

// ---------------------------------------------------------------------------
// Schedules

/// Step size plus the radius as a function of the period P.
struct Schedule {
  double gamma = 0.0;
  double radius_per_period = 0.0;

  double radius(double period) const noexcept { return period * radius_per_period; }
};

/// gamma = d^{-1/q} sqrt(2 / (L T)), D(P) = P sqrt(2 / (L T)).
Schedule schedule_cor1(std::size_t d, Norm q, double smoothness, std::size_t T);
/// gamma = alpha / sqrt(d T), D(P) = P / sqrt(T).
Schedule schedule_cor2(double alpha, std::size_t d, std::size_t T);
/// gamma = ||x1 - x*||_2 / sqrt(d T).
double schedule_sec2(double dist_to_opt, std::size_t d, std::size_t T);

// ---------------------------------------------------------------------------
// Runs

struct AlgoConfig {
  Algorithm algo = Algorithm::SignGD;
  double gamma = 0.0;
  double radius = 0.0;           // D; reference-point methods only
  double smoothness = 0.0;       // L_q; reference-point methods only
  Norm q = Norm::L1;
  double grad_bound_inf = 0.0;   // G_inf; SignSGD+ only
  DenseVector x1;
  std::uint64_t float_bits = 32;  // F
  bool keep_iterates = false;
};

struct Trace {
  AlgoConfig config;
  std::uint64_t seed = 0;
  std::size_t n = 0;
  std::size_t d = 0;
  std::vector<TraceRow> rows;   // rows[t - 1] describes x_t
  DenseVector x_final;          // x_{T+1}
  double f_final = 0.0;
  DenseVector iterate_mean;     // (1/T) sum_{t <= T} x_t
  std::vector<DenseVector> iterates;  // x_1..x_{T+1} when keep_iterates

  std::size_t T() const noexcept { return rows.size(); }
  const TraceRow& last() const { return rows.back(); }
};

/// Thrown when an iterate or objective value stops being finite.
class RunAborted : public std::runtime_error {
 public:
  RunAborted(const std::string& what, std::size_t row) : std::runtime_error(what), row_(row) {}
  std::size_t row() const noexcept { return row_; }

 private:
  std::size_t row_;
};

/// Runs T steps from config.x1. Deterministic in (config, problem, T, seed).
Trace run(const AlgoConfig& config, const FiniteSumProblem& problem, std::size_t T,
          std::uint64_t seed);

/// Zero-based row index drawn uniformly from {0, ..., T-1}.
std::size_t select_uniform_iterate(const Trace& trace, RngStream& rng);

/// (1/T) sum_{t <= T} x_t.
const DenseVector& average_iterates(const Trace& trace);

}  // namespace signvr
