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

#include "signvr/analysis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <utility>

namespace signvr {

BoundReport make_bound_report(std::string name, double lhs, double rhs, double tol,
                              std::size_t n_seeds, std::string note) {
  BoundReport r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.tol = tol;
  r.holds = lhs <= rhs + tol;
  r.n_seeds = n_seeds;
  r.note = std::move(note);
  return r;
}

double monte_carlo_tolerance(std::span<const double> diffs) {
  constexpr double kFloor = 1e-12;
  const std::size_t n = diffs.size();
  if (n < 2) return kFloor;
  double mean = 0.0;
  for (double v : diffs) mean += v;
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (double v : diffs) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));
  return std::max(kFloor, 3.0 * sd / std::sqrt(static_cast<double>(n)));
}

namespace {

double mean_of(std::span<const double> v) {
  double acc = 0.0;
  for (double x : v) acc += x;
  return v.empty() ? 0.0 : acc / static_cast<double>(v.size());
}

bool close(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)); }

void require_traces(std::span<const Trace> traces, const char* who) {
  if (traces.empty()) throw ContractError(std::string(who) + ": at least one trace required");
  for (const Trace& t : traces) {
    if (t.rows.empty()) throw ContractError(std::string(who) + ": empty trace");
  }
}

void require_hyperparameters(std::span<const Trace> traces, const char* who,
                             std::optional<Algorithm> algo, double gamma,
                             std::optional<double> radius, std::optional<double> smoothness,
                             std::optional<Norm> q) {
  require_traces(traces, who);
  const std::size_t T = traces.front().T();
  for (const Trace& t : traces) {
    const AlgoConfig& c = t.config;
    bool ok = close(c.gamma, gamma) && t.T() == T;
    if (algo) ok = ok && c.algo == *algo;
    if (radius) ok = ok && close(c.radius, *radius);
    if (smoothness) ok = ok && close(c.smoothness, *smoothness);
    if (q) ok = ok && c.q == *q;
    if (!ok) throw ContractError(std::string(who) + ": trace hyperparameters do not match");
  }
}

// Seed-averaged lhs/rhs with the 3-standard-error band on lhs - rhs.
BoundReport seed_average(std::string name, const std::vector<double>& lhs,
                         const std::vector<double>& rhs) {
  std::vector<double> diffs(lhs.size());
  for (std::size_t s = 0; s < lhs.size(); ++s) diffs[s] = lhs[s] - rhs[s];
  return make_bound_report(std::move(name), mean_of(lhs), mean_of(rhs),
                           monte_carlo_tolerance(diffs), lhs.size());
}

double nonconvex_rhs(const Trace& t, double smoothness, ConjugatePair pair, double gamma) {
  const double T = static_cast<double>(t.T());
  const double dq = pair.dim_factor(t.d);
  return (t.rows.front().f - t.f_final) / (T * gamma) + smoothness * gamma * dq * dq / 2.0;
}

}  // namespace

BoundReport theorem2_var1(std::span<const Trace> traces, double smoothness, double radius,
                          ConjugatePair pair, double gamma) {
  require_hyperparameters(traces, "theorem2_var1", Algorithm::SignSVRG1, gamma, radius,
                          smoothness, pair.q());
  std::vector<double> lhs, rhs;
  for (const Trace& t : traces) {
    double acc = 0.0;
    for (const TraceRow& row : t.rows) {
      const double denom = 2.0 * smoothness * radius + row.gnorm(pair.p());
      if (denom > 0.0) acc += row.gnorm2 * row.gnorm2 / denom;
    }
    lhs.push_back(acc / static_cast<double>(t.T()));
    rhs.push_back(nonconvex_rhs(t, smoothness, pair, gamma));
  }
  return seed_average("theorem2_var1", lhs, rhs);
}

BoundReport theorem2_var2(std::span<const Trace> traces, double smoothness, double radius,
                          ConjugatePair pair, double gamma, std::size_t d) {
  require_hyperparameters(traces, "theorem2_var2", Algorithm::SignSVRG2, gamma, radius,
                          smoothness, pair.q());
  std::vector<double> lhs, rhs;
  const double shift = 2.0 * smoothness * static_cast<double>(d) * radius;
  for (const Trace& t : traces) {
    double acc = 0.0;
    for (const TraceRow& row : t.rows) {
      const double denom = shift + row.gnorm1;
      if (denom > 0.0) acc += row.gnorm1 * row.gnorm1 / denom;
    }
    lhs.push_back(acc / static_cast<double>(t.T()));
    rhs.push_back(nonconvex_rhs(t, smoothness, pair, gamma));
  }
  return seed_average("theorem2_var2", lhs, rhs);
}

BoundReport theorem3(std::span<const Trace> traces, double smoothness, double radius,
                     ConjugatePair pair, double gamma, std::size_t d, double f_star,
                     const DenseVector& x_star) {
  require_hyperparameters(traces, "theorem3", Algorithm::SignSVRG1, gamma, radius, smoothness,
                          pair.q());
  std::vector<double> lhs, rhs;
  for (const Trace& t : traces) {
    double acc = 0.0;
    for (const TraceRow& row : t.rows) {
      const double gap = row.f - f_star;
      if (gap < -1e-9) {
        throw TraceDataError("theorem3: f(x_t) below f* at row " + std::to_string(row.t));
      }
      const double g = std::max(0.0, gap);
      const double denom = 2.0 * smoothness * radius + std::sqrt(2.0 * smoothness * g);
      if (denom > 0.0) acc += g / denom;
    }
    const double T = static_cast<double>(t.T());
    const double dist = norm(t.config.x1 - x_star, Norm::L2);
    lhs.push_back(acc / T);
    rhs.push_back(dist * dist / (2.0 * T * gamma) + gamma * static_cast<double>(d) / 2.0);
  }
  return seed_average("theorem3", lhs, rhs);
}

BoundReport regret_sec2(std::span<const Trace> traces, double grad_bound_inf, double gamma,
                        std::size_t d, double f_star, const DenseVector& x_star) {
  require_hyperparameters(traces, "regret_sec2", std::nullopt, gamma, std::nullopt, std::nullopt,
                          std::nullopt);
  std::vector<double> lhs, rhs;
  for (const Trace& t : traces) {
    double acc = 0.0;
    for (const TraceRow& row : t.rows) acc += row.f - f_star;
    const double T = static_cast<double>(t.T());
    const double dist = norm(t.config.x1 - x_star, Norm::L2);
    lhs.push_back(acc);
    rhs.push_back(grad_bound_inf / 2.0 *
                  (dist * dist / gamma + gamma * static_cast<double>(d) * T));
  }
  return seed_average("regret_sec2", lhs, rhs);
}

BoundReport sec2_final_bound(std::span<const Trace> traces, const FiniteSumProblem& problem,
                             double grad_bound_inf, double f_star, const DenseVector& x_star) {
  require_traces(traces, "sec2_final_bound");
  std::vector<double> lhs, rhs;
  for (const Trace& t : traces) {
    const double T = static_cast<double>(t.T());
    const double gamma = t.config.gamma;
    const double dist = norm(t.config.x1 - x_star, Norm::L2);
    lhs.push_back(problem.value(average_iterates(t)) - f_star);
    rhs.push_back(grad_bound_inf / 2.0 *
                  (dist * dist / (gamma * T) + gamma * static_cast<double>(t.d)));
  }
  return seed_average("sec2_final", lhs, rhs);
}

BoundReport signgd_bound(const Trace& trace, double smoothness, ConjugatePair pair, double gamma,
                         std::size_t d, double f_star) {
  if (trace.rows.empty()) throw ContractError("signgd_bound: empty trace");
  const double T = static_cast<double>(trace.T());
  double acc = 0.0;
  for (const TraceRow& row : trace.rows) acc += row.gnorm1;
  const double dq = pair.dim_factor(d);
  const double rhs =
      (trace.rows.front().f - f_star) / (T * gamma) + smoothness * gamma * dq * dq / 2.0;
  return make_bound_report("signgd_bound", acc / T, rhs, 1e-8 * std::max(1.0, std::abs(rhs)), 1);
}

BoundReport signgd_descent_accounting(const Trace& trace, double smoothness, ConjugatePair pair,
                                      double gamma, std::size_t d) {
  if (trace.rows.empty()) throw ContractError("signgd_descent_accounting: empty trace");
  const double T = static_cast<double>(trace.T());
  double acc = 0.0;
  for (const TraceRow& row : trace.rows) acc += row.gnorm1;
  const double dq = pair.dim_factor(d);
  const double lhs = gamma * acc;
  const double rhs =
      trace.rows.front().f - trace.f_final + T * gamma * gamma * smoothness * dq * dq / 2.0;
  return make_bound_report("signgd_descent_accounting", lhs, rhs,
                           1e-8 * std::max(1.0, std::abs(rhs)), 1);
}

Corollary1Report corollary1_metrics(std::span<const Trace> traces, ConjugatePair pair,
                                    double radius, double smoothness, std::size_t d,
                                    double f_star, RngStream* selector) {
  require_traces(traces, "corollary1_metrics");
  const std::size_t T = traces.front().T();
  Corollary1Report r;
  r.n_seeds = traces.size();
  double f1 = 0.0;
  for (const Trace& t : traces) {
    if (t.T() != T) throw ContractError("corollary1_metrics: traces differ in length");
    f1 += t.rows.front().f;
    if (selector != nullptr) {
      const TraceRow& row = t.rows[select_uniform_iterate(t, *selector)];
      r.mean_gnorm_p += row.gnorm(pair.p());
      r.mean_gnorm_2 += row.gnorm2;
      r.mean_gnorm_1 += row.gnorm1;
    } else {
      double sp = 0.0, s2 = 0.0, s1 = 0.0;
      for (const TraceRow& row : t.rows) {
        sp += row.gnorm(pair.p());
        s2 += row.gnorm2;
        s1 += row.gnorm1;
      }
      const double inv_t = 1.0 / static_cast<double>(T);
      r.mean_gnorm_p += sp * inv_t;
      r.mean_gnorm_2 += s2 * inv_t;
      r.mean_gnorm_1 += s1 * inv_t;
    }
  }
  const double inv_s = 1.0 / static_cast<double>(traces.size());
  f1 *= inv_s;
  r.mean_gnorm_p *= inv_s;
  r.mean_gnorm_2 *= inv_s;
  r.mean_gnorm_1 *= inv_s;
  r.ratio = r.mean_gnorm_p > 0.0 ? r.mean_gnorm_2 * r.mean_gnorm_2 / r.mean_gnorm_p : 0.0;

  const double rate = std::sqrt(2.0 * smoothness / static_cast<double>(T));
  const double start = pair.dim_factor(d) * (f1 - f_star + 1.0);
  r.rhs_radius_branch = 2.0 * smoothness * radius;
  r.rhs_ratio_branch = start * rate;
  r.rhs_l1 = std::max(start * rate, 2.0 * static_cast<double>(d) * smoothness * radius);
  r.radius_branch_holds = r.mean_gnorm_p <= r.rhs_radius_branch;
  r.ratio_branch_holds = r.ratio <= r.rhs_ratio_branch;
  r.var1_holds = r.radius_branch_holds || r.ratio_branch_holds;
  r.var2_holds = r.mean_gnorm_1 <= r.rhs_l1;
  return r;
}

BoundReport update_count_bound(const Trace& trace, double period) {
  if (!(period > 0.0)) throw ContractError("update_count_bound: period must be > 0");
  if (trace.rows.empty()) throw ContractError("update_count_bound: empty trace");
  const double rhs = std::ceil(static_cast<double>(trace.T()) / period);
  return make_bound_report("update_count_bound", static_cast<double>(trace.last().k), rhs, 0.0, 1);
}

double comm_bits_bound(std::size_t d, std::uint64_t float_bits, std::size_t n, double period,
                       std::size_t T) {
  if (!(period > 0.0)) throw ContractError("comm_bits_bound: period must be > 0");
  const double periods = std::ceil(static_cast<double>(T) / period);
  return static_cast<double>(d) *
         (static_cast<double>(float_bits) * static_cast<double>(n) + period - 1.0) * periods;
}

BoundReport comm_bits(const Trace& trace, std::uint64_t float_bits, std::size_t n, std::size_t d,
                      double period) {
  if (trace.rows.empty()) throw ContractError("comm_bits: empty trace");
  return make_bound_report("comm_bits", static_cast<double>(trace.last().bits_cum),
                           comm_bits_bound(d, float_bits, n, period, trace.T()), 0.0, 1);
}

// ---------------------------------------------------------------------------

double opnorm_1_to_inf(const DenseMatrix& m) {
  double best = 0.0;
  for (double v : m.data()) best = std::max(best, std::abs(v));
  return best;
}

double opnorm_2_to_2(const DenseMatrix& m, double rel_tol, std::size_t max_iterations) {
  const std::size_t cols = m.cols();
  if (cols == 0 || m.rows() == 0) return 0.0;
  DenseVector v(cols);
  for (std::size_t j = 0; j < cols; ++j) v[j] = 1.0 / static_cast<double>(j + 1);
  v *= 1.0 / norm(v, Norm::L2);

  double lambda_prev = -1.0;
  double residual = 0.0;
  for (std::size_t it = 0; it < max_iterations; ++it) {
    DenseVector w = m.apply_transpose(m.apply(v));
    const double lambda = dot(v, w);
    const double wn = norm(w, Norm::L2);
    if (wn == 0.0) return 0.0;
    DenseVector r = w;
    r -= lambda * v;
    residual = norm(r, Norm::L2);
    if (it > 0 && std::abs(lambda - lambda_prev) <= rel_tol * 1e-3 * lambda &&
        residual <= std::sqrt(rel_tol) * lambda) {
      return norm(m.apply(v), Norm::L2);
    }
    lambda_prev = lambda;
    v = std::move(w);
    v *= 1.0 / wn;
  }
  throw OpNormError("opnorm_2_to_2: power iteration did not converge", residual);
}

double opnorm_2_to_2_rank_one(const DenseVector& u, const DenseVector& v) {
  return norm(u, Norm::L2) * norm(v, Norm::L2);
}

namespace {

// Factor m = u v^T when it is rank one (relative tolerance 1e-12).
std::optional<std::pair<DenseVector, DenseVector>> rank_one_factors(const DenseMatrix& m) {
  std::size_t pr = 0, pc = 0;
  double pivot = 0.0;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (std::abs(m(r, c)) > std::abs(pivot)) {
        pivot = m(r, c);
        pr = r;
        pc = c;
      }
    }
  }
  if (pivot == 0.0) return std::nullopt;
  DenseVector u(m.rows()), v(m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) u[r] = m(r, pc);
  for (std::size_t c = 0; c < m.cols(); ++c) v[c] = m(pr, c) / pivot;
  const double tol = 1e-12 * std::abs(pivot);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (std::abs(m(r, c) - u[r] * v[c]) > tol) return std::nullopt;
    }
  }
  return std::make_pair(std::move(u), std::move(v));
}

// Gray-code walk over sign vertices with s_0 fixed to +1 (s and -s agree).
double vertex_enumeration_inf_to_1(const DenseMatrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::vector<double> ms(rows, 0.0);
  std::vector<double> s(cols, 1.0);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) ms[r] += m(r, c);
  }
  auto l1 = [&] {
    double acc = 0.0;
    for (double v : ms) acc += std::abs(v);
    return acc;
  };
  double best = l1();
  const std::uint64_t count = cols > 1 ? (std::uint64_t{1} << (cols - 1)) : 1;
  for (std::uint64_t k = 1; k < count; ++k) {
    // Flip the coordinate given by the lowest set bit of k (offset by one).
    const std::size_t j = 1 + static_cast<std::size_t>(std::countr_zero(k));
    s[j] = -s[j];
    for (std::size_t r = 0; r < rows; ++r) ms[r] += 2.0 * s[j] * m(r, j);
    best = std::max(best, l1());
  }
  return best;
}

}  // namespace

std::optional<double> opnorm_inf_to_1(const DenseMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  if (opnorm_1_to_inf(m) == 0.0) return 0.0;
  if (auto factors = rank_one_factors(m)) {
    return norm(factors->first, Norm::L1) * norm(factors->second, Norm::L1);
  }
  if (m.cols() > 20) return std::nullopt;
  return vertex_enumeration_inf_to_1(m);
}

// ---------------------------------------------------------------------------

double example1_linf_expectation(std::size_t d) {
  return (1.0 - 2.0 / std::numbers::pi) + 2.0 / std::numbers::pi * static_cast<double>(d);
}

Example1Stats example1_stats(std::size_t d, std::size_t n_samples, RngStream& rng) {
  if (d == 0 || n_samples == 0) throw ContractError("example1_stats: d and n_samples must be >= 1");
  Example1Stats stats;
  stats.l2.reserve(n_samples);
  double s1 = 0.0, ss1 = 0.0, sinf = 0.0, ssinf = 0.0;
  for (std::size_t k = 0; k < n_samples; ++k) {
    const DenseVector zeta = sample_unit_sphere(rng, d);
    const DenseMatrix h = DenseMatrix::outer(zeta, zeta);
    const double l1 = opnorm_1_to_inf(h);
    const double linf = *opnorm_inf_to_1(h);
    stats.l2.push_back(opnorm_2_to_2(h));
    s1 += l1;
    ss1 += l1 * l1;
    sinf += linf;
    ssinf += linf * linf;
  }
  const double n = static_cast<double>(n_samples);
  stats.mean_l1 = s1 / n;
  stats.mean_linf = sinf / n;
  if (n_samples > 1) {
    const double var1 = std::max(0.0, (ss1 - n * stats.mean_l1 * stats.mean_l1) / (n - 1.0));
    const double varinf =
        std::max(0.0, (ssinf - n * stats.mean_linf * stats.mean_linf) / (n - 1.0));
    stats.stderr_l1 = std::sqrt(var1 / n);
    stats.stderr_linf = std::sqrt(varinf / n);
  }
  return stats;
}

DenseVector finite_diff_gradient(const FiniteSumProblem& problem, std::size_t i,
                                 const DenseVector& x, double h) {
  if (!(h > 0.0)) throw ContractError("finite_diff_gradient: h must be > 0");
  DenseVector g(x.size());
  DenseVector probe = x;
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double step = h * (1.0 + std::abs(x[j]));
    probe[j] = x[j] + step;
    const double up = problem.component_value(i, probe);
    probe[j] = x[j] - step;
    const double down = problem.component_value(i, probe);
    probe[j] = x[j];
    g[j] = (up - down) / (2.0 * step);
  }
  return g;
}

}  // namespace signvr
