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

#include "signvr/problems.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <utility>

namespace signvr {

std::string to_string(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::LeastSquares: return "least_squares";
    case ProblemKind::Logistic: return "logistic";
    case ProblemKind::TrigNonconvex: return "trig_nonconvex";
    case ProblemKind::AbsRegression: return "abs_regression";
    case ProblemKind::SphereQuadratic: return "sphere_quadratic";
    case ProblemKind::Counterexample: return "counterexample";
  }
  return "?";
}

ProblemKind parse_problem_kind(std::string_view name) {
  for (auto kind : {ProblemKind::LeastSquares, ProblemKind::Logistic, ProblemKind::TrigNonconvex,
                    ProblemKind::AbsRegression, ProblemKind::SphereQuadratic,
                    ProblemKind::Counterexample}) {
    if (to_string(kind) == name) return kind;
  }
  throw ContractError("unknown problem kind '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// FiniteSumProblem

double FiniteSumProblem::value(const DenseVector& x) const {
  check_point(x);
  double acc = 0.0;
  for (std::size_t i = 0; i < n(); ++i) acc += component_value(i, x);
  return acc / static_cast<double>(n());
}

DenseVector FiniteSumProblem::full_gradient(const DenseVector& x) const {
  check_point(x);
  DenseVector acc(d());
  for (std::size_t i = 0; i < n(); ++i) acc += component_gradient(i, x);
  acc *= 1.0 / static_cast<double>(n());
  return acc;
}

std::optional<double> FiniteSumProblem::lower_bound() const {
  if (auto opt = optimum()) return opt->f;
  return std::nullopt;
}

void FiniteSumProblem::check_point(const DenseVector& x) const {
  if (x.size() != d()) {
    throw ContractError(std::string(name()) + ": point has dimension " + std::to_string(x.size()) +
                        ", expected " + std::to_string(d()));
  }
}

void FiniteSumProblem::check_index(std::size_t i) const {
  if (i >= n()) {
    throw ContractError(std::string(name()) + ": component index " + std::to_string(i) +
                        " out of range");
  }
}

// ---------------------------------------------------------------------------
// LinearModelProblem

LinearModelProblem::LinearModelProblem(DenseMatrix design, double ridge)
    : design_(std::move(design)), ridge_(ridge) {
  if (design_.rows() == 0 || design_.cols() == 0) {
    throw ContractError("linear model: empty design matrix");
  }
  if (!(ridge_ >= 0.0)) throw ContractError("linear model: ridge weight must be >= 0");
}

double LinearModelProblem::margin(std::size_t i, const DenseVector& x) const {
  const auto row = design_.row(i);
  double acc = 0.0;
  for (std::size_t j = 0; j < row.size(); ++j) acc += row[j] * x[j];
  return acc;
}

double LinearModelProblem::component_value(std::size_t i, const DenseVector& x) const {
  check_index(i);
  check_point(x);
  double v = loss(i, margin(i, x));
  if (ridge_ > 0.0) {
    const double r = norm(x, Norm::L2);
    v += 0.5 * ridge_ * r * r;
  }
  return v;
}

DenseVector LinearModelProblem::component_gradient(std::size_t i, const DenseVector& x) const {
  check_index(i);
  check_point(x);
  const double scale = loss_derivative(i, margin(i, x));
  const auto row = design_.row(i);
  DenseVector g(d());
  for (std::size_t j = 0; j < row.size(); ++j) g[j] = scale * row[j] + ridge_ * x[j];
  return g;
}

double LinearModelProblem::value(const DenseVector& x) const {
  check_point(x);
  double acc = 0.0;
  for (std::size_t i = 0; i < n(); ++i) acc += loss(i, margin(i, x));
  double v = acc / static_cast<double>(n());
  if (ridge_ > 0.0) {
    const double r = norm(x, Norm::L2);
    v += 0.5 * ridge_ * r * r;
  }
  return v;
}

DenseVector LinearModelProblem::full_gradient(const DenseVector& x) const {
  check_point(x);
  DenseVector g(d());
  for (std::size_t i = 0; i < n(); ++i) {
    const double scale = loss_derivative(i, margin(i, x));
    const auto row = design_.row(i);
    for (std::size_t j = 0; j < row.size(); ++j) g[j] += scale * row[j];
  }
  const double inv_n = 1.0 / static_cast<double>(n());
  for (std::size_t j = 0; j < d(); ++j) g[j] = g[j] * inv_n + ridge_ * x[j];
  return g;
}

double LinearModelProblem::max_row_norm_sq(Norm which) const {
  double best = 0.0;
  for (std::size_t i = 0; i < n(); ++i) {
    const double r = norm(design_.row(i), which);
    best = std::max(best, r * r);
  }
  return best;
}

// ---------------------------------------------------------------------------
// Least squares

namespace {

Optimum solve_least_squares(const DenseMatrix& design, const DenseVector& targets) {
  Eigen::MatrixXd a(design.rows(), design.cols());
  Eigen::VectorXd b(design.rows());
  for (std::size_t r = 0; r < design.rows(); ++r) {
    for (std::size_t c = 0; c < design.cols(); ++c) a(r, c) = design(r, c);
    b(r) = targets[r];
  }
  // Minimum-norm solution also covers rank-deficient designs.
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(a);
  const Eigen::VectorXd sol = cod.solve(b);
  Optimum opt;
  opt.x = DenseVector(std::vector<double>(sol.data(), sol.data() + sol.size()));
  return opt;
}

}  // namespace

LeastSquaresProblem::LeastSquaresProblem(DenseMatrix design, DenseVector targets, std::string name)
    : LinearModelProblem(std::move(design), 0.0),
      targets_(std::move(targets)),
      name_(std::move(name)) {
  if (targets_.size() != n()) throw ContractError("least_squares: one target per row required");
  optimum_ = solve_least_squares(this->design(), targets_);
  optimum_.f = value(optimum_.x);
}

double LeastSquaresProblem::loss(std::size_t i, double margin) const {
  const double r = margin - targets_[i];
  return 0.5 * r * r;
}

double LeastSquaresProblem::loss_derivative(std::size_t i, double margin) const {
  return margin - targets_[i];
}

std::optional<double> LeastSquaresProblem::lipschitz_constant(Norm q) const {
  // Hessian a_i a_i^T has (q -> p) operator norm ||a_i||_p^2.
  return max_row_norm_sq(ConjugatePair(q).p());
}

// ---------------------------------------------------------------------------
// Logistic

LogisticProblem::LogisticProblem(DenseMatrix design, DenseVector labels)
    : LinearModelProblem(std::move(design), 0.0), labels_(std::move(labels)) {
  if (labels_.size() != n()) throw ContractError("logistic: one label per row required");
  for (double y : labels_) {
    if (y != 1.0 && y != -1.0) throw ContractError("logistic: labels must be +1 or -1");
  }
}

double LogisticProblem::loss(std::size_t i, double margin) const {
  const double m = labels_[i] * margin;
  return m > 0.0 ? std::log1p(std::exp(-m)) : -m + std::log1p(std::exp(m));
}

double LogisticProblem::loss_derivative(std::size_t i, double margin) const {
  const double m = labels_[i] * margin;
  // -y * sigmoid(-m), evaluated without overflow.
  const double s = m > 0.0 ? std::exp(-m) / (1.0 + std::exp(-m)) : 1.0 / (1.0 + std::exp(m));
  return -labels_[i] * s;
}

std::optional<double> LogisticProblem::lipschitz_constant(Norm q) const {
  return 0.25 * max_row_norm_sq(ConjugatePair(q).p());
}

// ---------------------------------------------------------------------------
// Trigonometric non-convex

TrigNonconvexProblem::TrigNonconvexProblem(DenseMatrix design, double lambda)
    : LinearModelProblem(std::move(design), lambda) {}

double TrigNonconvexProblem::loss(std::size_t, double margin) const { return std::cos(margin); }

double TrigNonconvexProblem::loss_derivative(std::size_t, double margin) const {
  return -std::sin(margin);
}

std::optional<double> TrigNonconvexProblem::lipschitz_constant(Norm q) const {
  // ||I||_{q->p}: 1 for q = 1 and q = 2, d for q = inf.
  const double identity_norm = q == Norm::LInf ? static_cast<double>(d()) : 1.0;
  return max_row_norm_sq(ConjugatePair(q).p()) + ridge() * identity_norm;
}

// ---------------------------------------------------------------------------
// Absolute-value regression

AbsRegressionProblem::AbsRegressionProblem(DenseMatrix design, DenseVector targets,
                                           std::optional<DenseVector> planted)
    : LinearModelProblem(std::move(design), 0.0), targets_(std::move(targets)) {
  if (targets_.size() != n()) throw ContractError("abs_regression: one target per row required");
  if (planted) {
    const double f = value(*planted);
    if (f > 1e-12) throw ContractError("abs_regression: planted point does not interpolate");
    optimum_ = Optimum{*planted, f};
  }
}

double AbsRegressionProblem::loss(std::size_t i, double margin) const {
  return std::abs(margin - targets_[i]);
}

double AbsRegressionProblem::loss_derivative(std::size_t i, double margin) const {
  return sign_of(margin - targets_[i]);
}

std::optional<double> AbsRegressionProblem::grad_bound_inf() const {
  double best = 0.0;
  for (std::size_t i = 0; i < n(); ++i) best = std::max(best, norm(design().row(i), Norm::LInf));
  return best;
}

// ---------------------------------------------------------------------------
// Counterexample

double CounterexampleProblem::component_value(std::size_t i, const DenseVector& x) const {
  check_index(i);
  check_point(x);
  return kOffsets[i] * x[0] + 0.5 * x[0] * x[0];
}

DenseVector CounterexampleProblem::component_gradient(std::size_t i, const DenseVector& x) const {
  check_index(i);
  check_point(x);
  return DenseVector{x[0] + kOffsets[i]};
}

std::optional<Optimum> CounterexampleProblem::optimum() const {
  return Optimum{DenseVector{1.0 / 3.0}, -1.0 / 18.0};
}

// ---------------------------------------------------------------------------
// Generators

namespace {

void require_dims(const ProblemSpec& spec) {
  if (spec.d == 0 || spec.n == 0) throw ContractError("problem spec: d and n must be positive");
}

// Rows i.i.d. N(0, I/d) so that ||a_i||_2 is close to 1.
DenseMatrix gaussian_design(const ProblemSpec& spec, RngStream rng) {
  const double scale = 1.0 / std::sqrt(static_cast<double>(spec.d));
  DenseMatrix a(spec.n, spec.d);
  for (std::size_t r = 0; r < spec.n; ++r) {
    for (std::size_t c = 0; c < spec.d; ++c) a(r, c) = scale * rng.gaussian();
  }
  return a;
}

}  // namespace

LeastSquaresProblem make_least_squares(const ProblemSpec& spec) {
  require_dims(spec);
  const RngStream root(spec.seed);
  DenseMatrix a = gaussian_design(spec, root.child("design"));
  RngStream planted_rng = root.child("planted");
  const DenseVector x0 = sample_gaussian(planted_rng, spec.d);
  RngStream noise_rng = root.child("noise");
  DenseVector b = a.apply(x0);
  for (std::size_t i = 0; i < spec.n; ++i) b[i] += spec.target_noise * noise_rng.gaussian();
  return LeastSquaresProblem(std::move(a), std::move(b));
}

LogisticProblem make_logistic(const ProblemSpec& spec) {
  require_dims(spec);
  if (spec.label_noise < 0.0 || spec.label_noise > 0.5) {
    throw ContractError("logistic: label_noise must lie in [0, 0.5]");
  }
  const RngStream root(spec.seed);
  DenseMatrix a = gaussian_design(spec, root.child("design"));
  RngStream planted_rng = root.child("planted");
  const DenseVector w = sample_gaussian(planted_rng, spec.d);
  RngStream flip_rng = root.child("labels");
  const DenseVector margins = a.apply(w);
  DenseVector y(spec.n);
  for (std::size_t i = 0; i < spec.n; ++i) {
    y[i] = sign_of(margins[i]);
    if (flip_rng.uniform01() < spec.label_noise) y[i] = -y[i];
  }
  return LogisticProblem(std::move(a), std::move(y));
}

TrigNonconvexProblem make_trig_nonconvex(const ProblemSpec& spec) {
  require_dims(spec);
  if (!(spec.lambda >= 0.0)) throw ContractError("trig_nonconvex: lambda must be >= 0");
  const RngStream root(spec.seed);
  return TrigNonconvexProblem(gaussian_design(spec, root.child("design")), spec.lambda);
}

AbsRegressionProblem make_abs_regression(const ProblemSpec& spec) {
  require_dims(spec);
  const RngStream root(spec.seed);
  DenseMatrix a = gaussian_design(spec, root.child("design"));
  RngStream planted_rng = root.child("planted");
  DenseVector x0 = sample_gaussian(planted_rng, spec.d);
  DenseVector b = a.apply(x0);
  return AbsRegressionProblem(std::move(a), std::move(b), std::move(x0));
}

LeastSquaresProblem make_sphere_quadratic(const ProblemSpec& spec) {
  if (spec.d == 0) throw ContractError("sphere_quadratic: d must be positive");
  RngStream rng(spec.seed);
  const DenseVector zeta = sample_unit_sphere(rng, spec.d);
  return LeastSquaresProblem(DenseMatrix::from_rows({zeta}), DenseVector{0.0}, "sphere_quadratic");
}

CounterexampleProblem make_counterexample() { return {}; }

std::shared_ptr<const FiniteSumProblem> make_problem(const ProblemSpec& spec) {
  switch (spec.kind) {
    case ProblemKind::LeastSquares:
      return std::make_shared<LeastSquaresProblem>(make_least_squares(spec));
    case ProblemKind::Logistic: return std::make_shared<LogisticProblem>(make_logistic(spec));
    case ProblemKind::TrigNonconvex:
      return std::make_shared<TrigNonconvexProblem>(make_trig_nonconvex(spec));
    case ProblemKind::AbsRegression:
      return std::make_shared<AbsRegressionProblem>(make_abs_regression(spec));
    case ProblemKind::SphereQuadratic:
      return std::make_shared<LeastSquaresProblem>(make_sphere_quadratic(spec));
    case ProblemKind::Counterexample:
      return std::make_shared<CounterexampleProblem>(make_counterexample());
  }
  throw ContractError("make_problem: unknown kind");
}

// ---------------------------------------------------------------------------

double lipschitz_ratio(const FiniteSumProblem& problem, std::size_t i, const DenseVector& x,
                       const DenseVector& y, Norm q) {
  const double dx = norm(x - y, q);
  if (dx == 0.0) throw ContractError("lipschitz_ratio: x and y coincide");
  const DenseVector dg = problem.component_gradient(i, x) - problem.component_gradient(i, y);
  return norm(dg, ConjugatePair(q).p()) / dx;
}

double estimate_lipschitz_empirical(const FiniteSumProblem& problem, Norm q, RngStream& rng,
                                    std::size_t trials) {
  if (trials == 0) throw ContractError("estimate_lipschitz_empirical: trials must be >= 1");
  if (!problem.smooth()) throw ContractError("estimate_lipschitz_empirical: problem not smooth");
  double best = 0.0;
  for (std::size_t k = 0; k < trials; ++k) {
    const std::size_t i = rng.index(problem.n());
    const DenseVector x = sample_gaussian(rng, problem.d());
    const DenseVector y = sample_gaussian(rng, problem.d());
    if (x == y) continue;
    best = std::max(best, lipschitz_ratio(problem, i, x, y, q));
  }
  return best;
}

}  // namespace signvr
