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
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "signvr/optimizers.hpp"
#include "signvr/problems.hpp"
#include "signvr/rng.hpp"
#include "signvr/vecmath.hpp"

namespace signvr {

/// lhs <= rhs + tol, evaluated over n_seeds independent traces.
struct BoundReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double tol = 0.0;
  bool holds = false;
  std::size_t n_seeds = 1;
  std::string note;
};

BoundReport make_bound_report(std::string name, double lhs, double rhs, double tol,
                              std::size_t n_seeds, std::string note = {});

/// Trace contents contradict the problem (e.g. f(x_t) below the optimum).
class TraceDataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Three standard errors of the per-seed differences, floored at 1e-12.
double monte_carlo_tolerance(std::span<const double> diffs);

// ---------------------------------------------------------------------------
// Rate bounds for SignSVRG

/// Non-convex bound for Variant I:
///   (1/T) sum_t ||grad f(x_t)||_2^2 / (2 L D + ||grad f(x_t)||_p)
///     <= (f(x_1) - f(x_{T+1})) / (T gamma) + L gamma d^{2/q} / 2.
BoundReport theorem2_var1(std::span<const Trace> traces, double smoothness, double radius,
                          ConjugatePair pair, double gamma);

/// Variant II: the left term becomes ||grad f||_1^2 / (2 L d D + ||grad f||_1).
BoundReport theorem2_var2(std::span<const Trace> traces, double smoothness, double radius,
                          ConjugatePair pair, double gamma, std::size_t d);

/// Convex bound for Variant I:
///   (1/T) sum_t (f(x_t) - f*) / (2 L D + sqrt(2 L (f(x_t) - f*)))
///     <= ||x_1 - x*||^2 / (2 T gamma) + gamma d / 2.
BoundReport theorem3(std::span<const Trace> traces, double smoothness, double radius,
                     ConjugatePair pair, double gamma, std::size_t d, double f_star,
                     const DenseVector& x_star);

// ---------------------------------------------------------------------------
// SignSGD+ and SignGD

/// sum_t (f(x_t) - f*) <= (G_inf / 2)(||x_1 - x*||^2 / gamma + gamma d T).
BoundReport regret_sec2(std::span<const Trace> traces, double grad_bound_inf, double gamma,
                        std::size_t d, double f_star, const DenseVector& x_star);

/// f(xbar_T) - f* <= (G_inf / 2)(||x_1 - x*||^2 / (gamma T) + gamma d) on the
/// averaged iterate; equals G_inf ||x_1 - x*|| sqrt(d / T) at the matching step.
BoundReport sec2_final_bound(std::span<const Trace> traces, const FiniteSumProblem& problem,
                             double grad_bound_inf, double f_star, const DenseVector& x_star);

/// (1/T) sum_t ||grad f(x_t)||_1 <= (f(x_1) - f*) / (T gamma) + L gamma d^{2/q} / 2.
BoundReport signgd_bound(const Trace& trace, double smoothness, ConjugatePair pair, double gamma,
                         std::size_t d, double f_star);

/// gamma sum_t ||grad f(x_t)||_1 <= f(x_1) - f(x_{T+1}) + T gamma^2 L d^{2/q} / 2,
/// the per-run descent accounting behind signgd_bound.
BoundReport signgd_descent_accounting(const Trace& trace, double smoothness, ConjugatePair pair,
                                      double gamma, std::size_t d);

// ---------------------------------------------------------------------------
// Metrics on the output iterate

struct Corollary1Report {
  double mean_gnorm_p = 0.0;  // E ||grad f(xbar)||_p
  double mean_gnorm_2 = 0.0;
  double mean_gnorm_1 = 0.0;
  double ratio = 0.0;  // (E ||grad f(xbar)||_2)^2 / E ||grad f(xbar)||_p
  double rhs_radius_branch = 0.0;  // 2 L D = 2 P sqrt(2 L / T)
  double rhs_ratio_branch = 0.0;   // d^{1/q} (f(x_1) - f* + 1) sqrt(2 L / T)
  double rhs_l1 = 0.0;             // sqrt(2L/T) max(d^{1/q}(f(x_1) - f* + 1), 2 d P)
  bool radius_branch_holds = false;
  bool ratio_branch_holds = false;
  bool var1_holds = false;  // either branch
  bool var2_holds = false;  // mean_gnorm_1 <= rhs_l1
  std::size_t n_seeds = 0;
};

/// Monte Carlo estimates of the output-iterate gradient norms and their
/// bounds. With `selector`, one uniformly drawn iterate per trace is used;
/// without it, each trace contributes its exact average over the uniform
/// index (the conditional expectation given the trajectory).
Corollary1Report corollary1_metrics(std::span<const Trace> traces, ConjugatePair pair,
                                    double radius, double smoothness, std::size_t d,
                                    double f_star, RngStream* selector = nullptr);

// ---------------------------------------------------------------------------
// Reference refreshes and communication

/// k(T) <= ceil(T / P).
BoundReport update_count_bound(const Trace& trace, double period);

/// d (F n + P - 1) ceil(T / P)
double comm_bits_bound(std::size_t d, std::uint64_t float_bits, std::size_t n, double period,
                       std::size_t T);

/// bits_cum(T) <= d (F n + P - 1) ceil(T / P).
BoundReport comm_bits(const Trace& trace, std::uint64_t float_bits, std::size_t n, std::size_t d,
                      double period);

// ---------------------------------------------------------------------------
// Operator norms

/// Power iteration did not converge.
class OpNormError : public std::runtime_error {
 public:
  OpNormError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// max_{j,k} |M_jk|
double opnorm_1_to_inf(const DenseMatrix& m);

/// Largest singular value by power iteration on M^T M.
double opnorm_2_to_2(const DenseMatrix& m, double rel_tol = 1e-10,
                     std::size_t max_iterations = 100000);

/// ||u v^T||_{2->2} = ||u||_2 ||v||_2
double opnorm_2_to_2_rank_one(const DenseVector& u, const DenseVector& v);

/// max over s in {-1, 1}^d of ||M s||_1. Closed form ||u||_1 ||v||_1 for
/// rank-one M = u v^T at any size; sign-vertex enumeration otherwise, which
/// is limited to at most 20 columns (nullopt beyond that).
std::optional<double> opnorm_inf_to_1(const DenseMatrix& m);

// ---------------------------------------------------------------------------
// Smoothness of f(x) = 1/2 (zeta^T x)^2 for zeta uniform on the sphere

struct Example1Stats {
  double mean_l1 = 0.0;     // E ||zeta zeta^T||_{1->inf}
  double stderr_l1 = 0.0;
  std::vector<double> l2;   // ||zeta zeta^T||_{2->2} per sample
  double mean_linf = 0.0;   // E ||zeta zeta^T||_{inf->1}
  double stderr_linf = 0.0;
};

Example1Stats example1_stats(std::size_t d, std::size_t n_samples, RngStream& rng);

/// (1 - 2/pi) + (2/pi) d
double example1_linf_expectation(std::size_t d);

// ---------------------------------------------------------------------------

/// Central differences of f_i with per-coordinate step h (1 + |x_j|).
DenseVector finite_diff_gradient(const FiniteSumProblem& problem, std::size_t i,
                                 const DenseVector& x, double h);

}  // namespace signvr
