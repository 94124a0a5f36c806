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

#include "signvr/harness.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <ostream>

#include "signvr/oracles.hpp"

namespace signvr {

using nlohmann::json;

bool ExperimentResult::all_hold() const {
  return std::all_of(reports.begin(), reports.end(), [](const BoundReport& r) { return r.holds; });
}

namespace {

bool needs_check(const ExperimentConfig& c, std::initializer_list<const char*> names) {
  for (const char* name : names) {
    if (std::find(c.checks.begin(), c.checks.end(), name) != c.checks.end()) return true;
  }
  return false;
}

}  // namespace

Optimum numerical_optimum(const FiniteSumProblem& problem, std::size_t iterations) {
  const auto smoothness = problem.lipschitz_constant(Norm::L2);
  if (!smoothness || !(*smoothness > 0.0)) {
    throw ContractError("numerical_optimum: problem has no L_2 constant");
  }
  const double step = 1.0 / *smoothness;
  DenseVector x(problem.d());
  for (std::size_t it = 0; it < iterations; ++it) {
    DenseVector g = problem.full_gradient(x);
    g *= step;
    x -= g;
  }
  const double f = problem.value(x);
  return {std::move(x), f};
}

ResolvedRun resolve_run(const ExperimentConfig& c, const FiniteSumProblem& problem) {
  ResolvedRun r;
  const std::size_t d = problem.d();
  const bool ref = uses_reference_point(c.algo);
  r.period = c.resolved_period();

  r.smoothness = problem.lipschitz_constant(c.q);
  const bool needs_smoothness =
      ref || c.schedule == ScheduleRule::Cor1 ||
      needs_check(c, {"signgd_bound", "signgd_descent_accounting"});
  if (needs_smoothness && !r.smoothness) {
    throw ConfigError("problem", std::string(problem.name()) + " has no L_" + to_string(c.q) +
                                     " constant for " + to_string(c.algo));
  }

  const bool needs_x_star = c.schedule == ScheduleRule::Sec2 ||
                            (c.schedule == ScheduleRule::Cor2 && !c.alpha) ||
                            needs_check(c, {"theorem3", "regret_sec2", "sec2_final"});
  const bool needs_f_star =
      needs_x_star || needs_check(c, {"signgd_bound", "corollary1"});
  if (auto opt = problem.optimum()) {
    r.x_star = opt->x;
    r.f_star = opt->f;
    r.f_star_source = "optimum";
  } else if (needs_f_star && problem.convex() && problem.smooth() &&
             problem.lipschitz_constant(Norm::L2)) {
    Optimum opt_num = numerical_optimum(problem);
    r.x_star = std::move(opt_num.x);
    r.f_star = opt_num.f;
    r.f_star_source = "numerical";
  } else if (auto lb = problem.lower_bound(); lb && !needs_x_star) {
    r.f_star = *lb;
    r.f_star_source = "lower_bound";
  }
  if (needs_x_star && !r.x_star) {
    throw ConfigError("problem", std::string(problem.name()) + " has no known minimiser");
  }
  if (needs_f_star && !r.f_star) {
    throw ConfigError("problem", std::string(problem.name()) + " has no optimal value");
  }

  AlgoConfig& a = r.algo;
  a.algo = c.algo;
  a.q = c.q;
  a.x1 = resolve_x1(c, d);
  a.float_bits = c.float_bits;
  a.keep_iterates = c.keep_iterates;
  a.smoothness = r.smoothness.value_or(0.0);

  switch (c.schedule) {
    case ScheduleRule::Cor1: {
      const Schedule s = schedule_cor1(d, c.q, *r.smoothness, c.T);
      a.gamma = s.gamma;
      a.radius = s.radius(r.period);
      break;
    }
    case ScheduleRule::Cor2: {
      const double alpha = c.alpha ? *c.alpha : norm(a.x1 - *r.x_star, Norm::L2);
      if (!(alpha > 0.0)) throw ConfigError("alpha", "x1 equals x*; give alpha explicitly");
      const Schedule s = schedule_cor2(alpha, d, c.T);
      a.gamma = s.gamma;
      a.radius = s.radius(r.period);
      break;
    }
    case ScheduleRule::Sec2: {
      const double dist = norm(a.x1 - *r.x_star, Norm::L2);
      if (!(dist > 0.0)) throw ConfigError("x1", "x1 equals x*, so the sec2 step size is zero");
      a.gamma = schedule_sec2(dist, d, c.T);
      break;
    }
    case ScheduleRule::Manual:
      a.gamma = c.gamma;
      a.radius = c.radius;
      break;
  }
  if (!ref) a.radius = 0.0;

  const auto g_inf = c.grad_bound_inf ? c.grad_bound_inf : problem.grad_bound_inf();
  if (g_inf) a.grad_bound_inf = *g_inf;
  const bool needs_g_inf =
      c.algo == Algorithm::SignSGDPlus || needs_check(c, {"regret_sec2", "sec2_final"});
  if (needs_g_inf && !g_inf) {
    throw ConfigError("G_inf", std::string(problem.name()) + " has no G_inf; set G_inf");
  }
  return r;
}

BoundReport evaluate_check(const std::string& name, const ExperimentResult& res) {
  const ResolvedRun& r = res.resolved;
  const AlgoConfig& a = r.algo;
  const ConjugatePair pair(a.q);
  const std::size_t d = res.problem->d();
  const std::span<const Trace> traces(res.traces);

  if (name == "theorem2_var1") return theorem2_var1(traces, a.smoothness, a.radius, pair, a.gamma);
  if (name == "theorem2_var2") {
    return theorem2_var2(traces, a.smoothness, a.radius, pair, a.gamma, d);
  }
  if (name == "theorem3") {
    return theorem3(traces, a.smoothness, a.radius, pair, a.gamma, d, *r.f_star, *r.x_star);
  }
  if (name == "regret_sec2") {
    return regret_sec2(traces, a.grad_bound_inf, a.gamma, d, *r.f_star, *r.x_star);
  }
  if (name == "sec2_final") {
    return sec2_final_bound(traces, *res.problem, a.grad_bound_inf, *r.f_star, *r.x_star);
  }
  if (name == "signgd_bound") {
    return signgd_bound(traces.front(), a.smoothness, pair, a.gamma, d, *r.f_star);
  }
  if (name == "signgd_descent_accounting") {
    return signgd_descent_accounting(traces.front(), a.smoothness, pair, a.gamma, d);
  }
  if (name == "corollary1") {
    const Corollary1Report c =
        corollary1_metrics(traces, pair, a.radius, a.smoothness, d, *r.f_star);
    if (a.algo == Algorithm::SignSVRG2) {
      return make_bound_report("corollary1", c.mean_gnorm_1, c.rhs_l1, 0.0, c.n_seeds,
                               "E||grad f||_1 from Monte Carlo means");
    }
    if (c.radius_branch_holds) {
      return make_bound_report("corollary1", c.mean_gnorm_p, c.rhs_radius_branch, 0.0, c.n_seeds,
                               "branch E||grad f||_p <= 2LD");
    }
    return make_bound_report("corollary1", c.ratio, c.rhs_ratio_branch, 0.0, c.n_seeds,
                             "ratio branch; ratio of Monte Carlo means, not debiased");
  }
  if (name == "update_count_bound" || name == "comm_bits") {
    BoundReport worst;
    bool first = true;
    for (const Trace& t : res.traces) {
      BoundReport one = name == "comm_bits" ? comm_bits(t, a.float_bits, t.n, t.d, r.period)
                                            : update_count_bound(t, r.period);
      if (first || one.lhs - one.rhs > worst.lhs - worst.rhs) worst = one;
      first = false;
    }
    worst.n_seeds = res.traces.size();
    return worst;
  }
  throw ConfigError("checks", "unknown check '" + name + "'");
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  validate(config);
  const auto start = std::chrono::steady_clock::now();
  ExperimentResult res;
  res.config = config;
  try {
    res.problem = make_problem(config.problem);
  } catch (const ContractError& e) {
    throw ConfigError("problem", e.what());
  }
  res.resolved = resolve_run(config, *res.problem);

  std::vector<std::future<Trace>> jobs;
  jobs.reserve(config.seeds.size());
  for (std::uint64_t seed : config.seeds) {
    jobs.push_back(std::async(std::launch::async, [&res, &config, seed] {
      return run(res.resolved.algo, *res.problem, config.T, seed);
    }));
  }
  for (auto& job : jobs) res.traces.push_back(job.get());

  for (const std::string& check : config.checks) res.reports.push_back(evaluate_check(check, res));
  res.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return res;
}

// ---------------------------------------------------------------------------
// Output

std::string format_double(double v) {
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, result.ptr);
}

void write_trace_csv(std::ostream& out, const Trace& trace) {
  out << kTraceHeader << '\n';
  for (const TraceRow& row : trace.rows) {
    out << row.t << ',' << format_double(row.f) << ',' << format_double(row.gnorm1) << ','
        << format_double(row.gnorm2) << ',' << format_double(row.gnorm_inf) << ',' << row.k << ','
        << format_double(row.dist_to_ref) << ',' << row.bits_cum << ',' << row.grad_evals_cum
        << ',' << row.flags << '\n';
  }
}

std::string trace_file_name(std::uint64_t seed) {
  return "trace_seed" + std::to_string(seed) + ".csv";
}

json to_json(const BoundReport& report) {
  json j{{"name", report.name}, {"lhs", report.lhs},         {"rhs", report.rhs},
         {"tol", report.tol},   {"holds", report.holds},     {"n_seeds", report.n_seeds}};
  if (!report.note.empty()) j["note"] = report.note;
  return j;
}

json summary_json(const ExperimentResult& res) {
  json traces = json::array();
  for (const Trace& t : res.traces) traces.push_back(trace_file_name(t.seed));
  json reports = json::array();
  for (const BoundReport& r : res.reports) reports.push_back(to_json(r));

  const ResolvedRun& r = res.resolved;
  json resolved{{"gamma", r.algo.gamma}, {"P", r.period}, {"x1", r.algo.x1.raw()}};
  if (uses_reference_point(r.algo.algo)) resolved["D"] = r.algo.radius;
  if (r.smoothness) resolved["L_q"] = *r.smoothness;
  if (r.algo.grad_bound_inf > 0.0) resolved["G_inf"] = r.algo.grad_bound_inf;
  if (r.f_star) {
    resolved["f_star"] = *r.f_star;
    resolved["f_star_source"] = r.f_star_source;
  }

  json meta{{"version", kVersion}, {"problem", std::string(res.problem->name())},
            {"wall_time_seconds", res.wall_time_seconds}};
  if (r.f_star_source == "numerical") meta["numerical_f_star"] = *r.f_star;
  return json{{"config", to_json(res.config)},
              {"resolved", resolved},
              {"traces", traces},
              {"reports", reports},
              {"metadata", meta}};
}

// ---------------------------------------------------------------------------
// Subcommands

namespace {

void print_report(std::ostream& out, const BoundReport& r) {
  out << (r.holds ? "PASS " : "FAIL ") << r.name << " lhs=" << format_double(r.lhs)
      << " rhs=" << format_double(r.rhs) << " tol=" << format_double(r.tol)
      << " n_seeds=" << r.n_seeds;
  if (!r.note.empty()) out << " (" << r.note << ")";
  out << '\n';
}

}  // namespace

int cmd_run(const std::string& config_path, const std::string& out_dir, std::ostream& out,
            std::ostream& err) {
  namespace fs = std::filesystem;
  try {
    const ExperimentConfig config = load_config(config_path);
    const ExperimentResult res = run_experiment(config);
    fs::create_directories(out_dir);
    for (const Trace& t : res.traces) {
      std::ofstream csv(fs::path(out_dir) / trace_file_name(t.seed));
      if (!csv) throw std::runtime_error("cannot write trace file in '" + out_dir + "'");
      write_trace_csv(csv, t);
    }
    std::ofstream summary(fs::path(out_dir) / "summary.json");
    if (!summary) throw std::runtime_error("cannot write summary.json in '" + out_dir + "'");
    summary << summary_json(res).dump(2) << '\n';
    for (const BoundReport& r : res.reports) print_report(out, r);
    out << res.traces.size() << " trace(s) written to " << out_dir << '\n';
    return res.all_hold() ? kExitOk : kExitCheckFailed;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
  } catch (const ContractError& e) {
    err << "config error: " << e.what() << '\n';
  } catch (const RunAborted& e) {
    err << "run aborted at row " << e.row() << ": " << e.what() << '\n';
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return kExitConfigError;
}

int cmd_verify_key_identity(const KeyIdentityOptions& opt, std::ostream& out, std::ostream& err) {
  if (opt.N == 0) {
    err << "config error: N must be >= 1\n";
    return kExitConfigError;
  }
  for (double G : opt.scales) {
    if (!(G > 0.0)) {
      err << "config error: G must be > 0 (got " << format_double(G) << ")\n";
      return kExitConfigError;
    }
  }
  const RngStream root(opt.seed);
  bool all_ok = true;
  std::uint64_t point = 0;
  for (double G : opt.scales) {
    for (double ratio : opt.ratios) {
      const double g = ratio * G;
      RngStream rng = root.child(point++);
      const auto est = oracles::monte_carlo_expected_sign(g, G, opt.N, rng);
      const double expected = oracles::expected_sign_analytic(g, G);
      const bool ok = std::abs(est.mean - expected) <= 4.0 * est.stderr_;
      all_ok = all_ok && ok;
      out << (ok ? "ok   " : "FAIL ") << "G=" << format_double(G) << " g=" << format_double(g)
          << " mean=" << format_double(est.mean) << " expected=" << format_double(expected)
          << " stderr=" << format_double(est.stderr_) << '\n';
    }
  }
  return all_ok ? kExitOk : kExitCheckFailed;
}

int cmd_example1(std::size_t d, std::size_t samples, std::uint64_t seed, std::ostream& out,
                 std::ostream& err) {
  if (d == 0 || samples == 0) {
    err << "config error: d and samples must be >= 1\n";
    return kExitConfigError;
  }
  RngStream rng(seed);
  const Example1Stats s = example1_stats(d, samples, rng);
  const auto [lo, hi] = std::minmax_element(s.l2.begin(), s.l2.end());
  const double expected = example1_linf_expectation(d);
  const double dd = static_cast<double>(d);
  const bool l2_ok = *lo >= 1.0 - 1e-9 && *hi <= 1.0 + 1e-9;
  const bool linf_ok = std::abs(s.mean_linf - expected) <= std::max(3.0 * s.stderr_linf, 1e-12);
  out << "d=" << d << " samples=" << samples << '\n'
      << "mean_L1=" << format_double(s.mean_l1) << " stderr=" << format_double(s.stderr_l1)
      << " mean_L1*d/log(e*d)=" << format_double(s.mean_l1 * dd / std::log(std::exp(1.0) * dd))
      << '\n'
      << "L2 in [" << format_double(*lo) << ", " << format_double(*hi) << "]\n"
      << "mean_Linf=" << format_double(s.mean_linf) << " stderr=" << format_double(s.stderr_linf)
      << " formula=" << format_double(expected) << '\n'
      << (l2_ok && linf_ok ? "ok" : "FAIL") << '\n';
  return l2_ok && linf_ok ? kExitOk : kExitCheckFailed;
}

NonconvergenceResult nonconvergence_demo(std::size_t T, double gamma, std::uint64_t seed,
                                         std::ostream& out, std::ostream& err) {
  NonconvergenceResult res;
  if (!(gamma > 0.0) || !std::isfinite(gamma) || T < 2) {
    err << "config error: need gamma > 0 and T >= 2\n";
    res.exit_code = kExitConfigError;
    return res;
  }
  constexpr double kBox = 4.0;
  const CounterexampleProblem problem;
  const Optimum opt = *problem.optimum();
  // Largest |a_i + x| over the box [-4, 4].
  const double g_inf = 7.0;
  const RngStream root(seed);

  AlgoConfig plain;
  plain.algo = Algorithm::SignSGD;
  plain.gamma = gamma;
  plain.x1 = DenseVector{1.0 / 3.0};
  plain.keep_iterates = true;
  const Trace a = run(plain, problem, T, root.child("signsgd").seed());
  const std::size_t tail = T / 2;
  double acc = 0.0;
  for (std::size_t t = T - tail; t < T; ++t) acc += a.iterates[t][0];
  res.signsgd_tail_mean = acc / static_cast<double>(tail);

  AlgoConfig plus = plain;
  plus.algo = Algorithm::SignSGDPlus;
  plus.grad_bound_inf = g_inf;
  const Trace b = run(plus, problem, T, root.child("signsgd_plus").seed());
  for (const DenseVector& x : b.iterates) {
    if (std::abs(x[0]) > kBox) res.stayed_in_box = false;
  }
  const std::vector<Trace> runs{b};
  const BoundReport bound = sec2_final_bound(runs, problem, g_inf, opt.f, opt.x);
  res.signsgd_plus_gap = bound.lhs;
  res.signsgd_plus_bound = bound.rhs;

  out << "signsgd tail mean over last " << tail << " iterates: "
      << format_double(res.signsgd_tail_mean) << " (x* = 1/3)\n"
      << "signsgd_plus f(xbar) - f*: " << format_double(bound.lhs)
      << " bound: " << format_double(bound.rhs) << '\n';
  if (!res.stayed_in_box) {
    err << "signsgd_plus left the box [-4, 4]; G_inf = 7 no longer bounds the gradients\n";
    res.exit_code = kExitCheckFailed;
    return res;
  }
  const bool ok = res.signsgd_tail_mean <= -0.5 && bound.holds;
  out << (ok ? "ok" : "FAIL") << '\n';
  res.exit_code = ok ? kExitOk : kExitCheckFailed;
  return res;
}

int cmd_nonconvergence_demo(std::size_t T, double gamma, std::uint64_t seed, std::ostream& out,
                            std::ostream& err) {
  return nonconvergence_demo(T, gamma, seed, out, err).exit_code;
}

}  // namespace signvr
