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
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "signvr/rng.hpp"
#include "signvr/vecmath.hpp"

namespace signvr {

enum class ProblemKind {
  LeastSquares,
  Logistic,
  TrigNonconvex,
  AbsRegression,
  SphereQuadratic,
  Counterexample,
};

std::string to_string(ProblemKind kind);
ProblemKind parse_problem_kind(std::string_view name);

/// Fully determines a problem instance: equal specs give identical data.
struct ProblemSpec {
  ProblemKind kind = ProblemKind::LeastSquares;
  std::size_t d = 1;
  std::size_t n = 1;
  std::uint64_t seed = 0;
  double lambda = 0.0;        // trig_nonconvex ridge weight
  double label_noise = 0.1;   // logistic label flip probability
  double target_noise = 0.1;  // least_squares additive target noise
};

struct Optimum {
  DenseVector x;
  double f = 0.0;
};

/// f(x) = (1/n) sum_i f_i(x).
///
/// Component gradients are subgradients when f_i is non-smooth. Constants
/// that are not available for an instance come back as std::nullopt.
class FiniteSumProblem {
 public:
  virtual ~FiniteSumProblem() = default;

  virtual std::string_view name() const = 0;
  virtual std::size_t n() const = 0;
  virtual std::size_t d() const = 0;

  virtual double component_value(std::size_t i, const DenseVector& x) const = 0;
  virtual DenseVector component_gradient(std::size_t i, const DenseVector& x) const = 0;

  virtual double value(const DenseVector& x) const;
  virtual DenseVector full_gradient(const DenseVector& x) const;

  /// L_q with ||grad f_i(x) - grad f_i(y)||_p <= L_q ||x - y||_q.
  virtual std::optional<double> lipschitz_constant(Norm /*q*/) const { return std::nullopt; }
  /// G_inf with ||grad f_i(x)||_inf <= G_inf everywhere.
  virtual std::optional<double> grad_bound_inf() const { return std::nullopt; }
  virtual std::optional<Optimum> optimum() const { return std::nullopt; }
  /// A known lower bound on f; the optimal value when the optimum is known.
  virtual std::optional<double> lower_bound() const;

  virtual bool smooth() const { return true; }
  virtual bool convex() const { return false; }

 protected:
  void check_point(const DenseVector& x) const;
  void check_index(std::size_t i) const;
};

/// f_i(x) = loss_i(a_i^T x) + (lambda/2)||x||^2 over a fixed design matrix.
class LinearModelProblem : public FiniteSumProblem {
 public:
  std::size_t n() const override { return design_.rows(); }
  std::size_t d() const override { return design_.cols(); }

  double component_value(std::size_t i, const DenseVector& x) const override;
  DenseVector component_gradient(std::size_t i, const DenseVector& x) const override;
  double value(const DenseVector& x) const override;
  DenseVector full_gradient(const DenseVector& x) const override;

  const DenseMatrix& design() const noexcept { return design_; }
  double ridge() const noexcept { return ridge_; }

  /// max_i ||a_i||_norm^2
  double max_row_norm_sq(Norm norm) const;

 protected:
  LinearModelProblem(DenseMatrix design, double ridge);

  virtual double loss(std::size_t i, double margin) const = 0;
  virtual double loss_derivative(std::size_t i, double margin) const = 0;

  double margin(std::size_t i, const DenseVector& x) const;

 private:
  DenseMatrix design_;
  double ridge_;
};

/// f_i(x) = 1/2 (a_i^T x - b_i)^2
class LeastSquaresProblem final : public LinearModelProblem {
 public:
  LeastSquaresProblem(DenseMatrix design, DenseVector targets, std::string name = "least_squares");

  std::string_view name() const override { return name_; }
  std::optional<double> lipschitz_constant(Norm q) const override;
  std::optional<Optimum> optimum() const override { return optimum_; }
  bool convex() const override { return true; }

  const DenseVector& targets() const noexcept { return targets_; }

 protected:
  double loss(std::size_t i, double margin) const override;
  double loss_derivative(std::size_t i, double margin) const override;

 private:
  DenseVector targets_;
  std::string name_;
  Optimum optimum_;
};

/// f_i(x) = log(1 + exp(-y_i a_i^T x))
class LogisticProblem final : public LinearModelProblem {
 public:
  LogisticProblem(DenseMatrix design, DenseVector labels);

  std::string_view name() const override { return "logistic"; }
  std::optional<double> lipschitz_constant(Norm q) const override;
  std::optional<double> lower_bound() const override { return 0.0; }
  bool convex() const override { return true; }

  const DenseVector& labels() const noexcept { return labels_; }

 protected:
  double loss(std::size_t i, double margin) const override;
  double loss_derivative(std::size_t i, double margin) const override;

 private:
  DenseVector labels_;
};

/// f_i(x) = cos(a_i^T x) + (lambda/2)||x||_2^2
class TrigNonconvexProblem final : public LinearModelProblem {
 public:
  TrigNonconvexProblem(DenseMatrix design, double lambda);

  std::string_view name() const override { return "trig_nonconvex"; }
  std::optional<double> lipschitz_constant(Norm q) const override;
  std::optional<double> lower_bound() const override { return -1.0; }

 protected:
  double loss(std::size_t i, double margin) const override;
  double loss_derivative(std::size_t i, double margin) const override;
};

/// f_i(x) = |a_i^T x - b_i|, subgradient sign(a_i^T x - b_i) a_i with sign(0) = +1.
class AbsRegressionProblem final : public LinearModelProblem {
 public:
  /// `planted`, when given, must interpolate the targets; it becomes the optimum.
  AbsRegressionProblem(DenseMatrix design, DenseVector targets,
                       std::optional<DenseVector> planted = std::nullopt);

  std::string_view name() const override { return "abs_regression"; }
  std::optional<double> grad_bound_inf() const override;
  std::optional<Optimum> optimum() const override { return optimum_; }
  std::optional<double> lower_bound() const override { return 0.0; }
  bool smooth() const override { return false; }
  bool convex() const override { return true; }

 protected:
  double loss(std::size_t i, double margin) const override;
  double loss_derivative(std::size_t i, double margin) const override;

 private:
  DenseVector targets_;
  std::optional<Optimum> optimum_;
};

/// d = 1, n = 3, f_i(x) = a_i x + x^2/2 with a = (-3, 1, 1).
///
/// The majority of component gradient signs opposes the mean gradient on
/// (-1, 3), so plain SignSGD drifts to x = -1 instead of x* = 1/3.
class CounterexampleProblem final : public FiniteSumProblem {
 public:
  static constexpr double kOffsets[3] = {-3.0, 1.0, 1.0};

  std::string_view name() const override { return "counterexample"; }
  std::size_t n() const override { return 3; }
  std::size_t d() const override { return 1; }

  double component_value(std::size_t i, const DenseVector& x) const override;
  DenseVector component_gradient(std::size_t i, const DenseVector& x) const override;

  std::optional<double> lipschitz_constant(Norm) const override { return 1.0; }
  std::optional<Optimum> optimum() const override;
  bool convex() const override { return true; }
};

LeastSquaresProblem make_least_squares(const ProblemSpec& spec);
LogisticProblem make_logistic(const ProblemSpec& spec);
TrigNonconvexProblem make_trig_nonconvex(const ProblemSpec& spec);
AbsRegressionProblem make_abs_regression(const ProblemSpec& spec);
/// n = 1, f(x) = 1/2 (zeta^T x)^2 with zeta uniform on the unit sphere.
LeastSquaresProblem make_sphere_quadratic(const ProblemSpec& spec);
CounterexampleProblem make_counterexample();

std::shared_ptr<const FiniteSumProblem> make_problem(const ProblemSpec& spec);

/// ||grad f_i(x) - grad f_i(y)||_p / ||x - y||_q for one pair.
double lipschitz_ratio(const FiniteSumProblem& problem, std::size_t i, const DenseVector& x,
                       const DenseVector& y, Norm q);

/// Largest sampled lipschitz_ratio over `trials` random (i, x, y). A lower
/// bound on the true L_q.
double estimate_lipschitz_empirical(const FiniteSumProblem& problem, Norm q, RngStream& rng,
                                    std::size_t trials);

}  // namespace signvr
