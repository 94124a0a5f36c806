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

#include <gtest/gtest.h>

#include <array>
#include <cmath>

#include "signvr/optimizers.hpp"

using namespace signvr;

namespace {

// f(x) = x^2 / 2 as a one-row least-squares problem.
LeastSquaresProblem half_square() { return {DenseMatrix(1, 1, {1.0}), DenseVector{0.0}}; }

std::shared_ptr<const FiniteSumProblem> least_squares(std::size_t d, std::size_t n) {
  ProblemSpec s;
  s.kind = ProblemKind::LeastSquares;
  s.d = d;
  s.n = n;
  s.seed = 5;
  return make_problem(s);
}

AlgoConfig svrg_config(Algorithm algo, const FiniteSumProblem& p, Norm q, std::size_t T,
                       double period) {
  const double l = *p.lipschitz_constant(q);
  const Schedule s = schedule_cor1(p.d(), q, l, T);
  AlgoConfig c;
  c.algo = algo;
  c.gamma = s.gamma;
  c.radius = s.radius(period);
  c.smoothness = l;
  c.q = q;
  c.x1 = DenseVector(p.d());
  return c;
}

}  // namespace

TEST(SignSGD, HalfSquareStep) {
  const auto p = half_square();
  RngStream rng(1);
  const SimpleState s = step_signsgd(make_simple_state(DenseVector{2.0}, 0.5), p, rng);
  EXPECT_DOUBLE_EQ(s.x[0], 1.5);
  EXPECT_EQ(s.t, 2u);
}

TEST(SignSGD, CounterexampleDirectionDependsOnComponent) {
  const CounterexampleProblem p;
  const double gamma = 0.1;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    RngStream probe(seed);
    const std::size_t i = sample_index(probe, 3);
    RngStream rng(seed);
    const SimpleState s = step_signsgd(make_simple_state(DenseVector{0.0}, gamma), p, rng);
    EXPECT_DOUBLE_EQ(s.x[0], i == 0 ? gamma : -gamma);
  }
}

TEST(SignSGDPlus, RejectsNonPositiveBound) {
  const auto p = half_square();
  RngStream rng(1);
  EXPECT_THROW(step_signsgd_plus(make_simple_state(DenseVector{0.0}, 0.1), p, rng, 0.0),
               ContractError);
}

TEST(SignSGDPlus, ExpectedDirectionIsScaledGradient) {
  const auto p = half_square();
  RngStream rng(2);
  const int n = 100000;
  for (const auto& [x, tol] : {std::pair{0.0, 0.011}, std::pair{0.5, 0.010}}) {
    double acc = 0.0;
    for (int k = 0; k < n; ++k) {
      const SimpleState s = step_signsgd_plus(make_simple_state(DenseVector{x}, 1.0), p, rng, 1.0);
      acc += x - s.x[0];
    }
    EXPECT_NEAR(acc / n, x, tol);
  }
}

TEST(SignGD, OneDimensionalSteps) {
  const auto p = half_square();
  EXPECT_DOUBLE_EQ(step_signgd(make_simple_state(DenseVector{1.0}, 0.3), p).x[0], 0.7);
  EXPECT_NEAR(step_signgd(make_simple_state(DenseVector{0.1}, 0.3), p).x[0], -0.2, 1e-15);
}

TEST(SignGD, ZeroGradientMovesAlongMinusOnes) {
  const LeastSquaresProblem p(DenseMatrix(1, 3, {1, 2, 3}), DenseVector{0});
  const SimpleState s = step_signgd(make_simple_state(DenseVector(3), 0.25), p);
  EXPECT_EQ(s.x, (DenseVector{-0.25, -0.25, -0.25}));
}

TEST(SignSVRG, ConstructionContracts) {
  const auto p = half_square();
  const ConjugatePair pair(Norm::L2);
  EXPECT_THROW(make_signsvrg_state(p, DenseVector{0.0}, 0.0, 1.0, 1.0, pair), ContractError);
  EXPECT_THROW(make_signsvrg_state(p, DenseVector{0.0}, 0.1, 0.0, 1.0, pair), ContractError);
  EXPECT_THROW(make_signsvrg_state(p, DenseVector{0.0}, 0.1, -1.0, 1.0, pair), ContractError);
}

TEST(SignSVRG, FirstStepAmplitudeIsReferenceGradientNorm) {
  const auto p = least_squares(4, 6);
  const DenseVector x1{0.3, -0.2, 0.5, 1.0};
  for (Norm q : {Norm::L1, Norm::L2, Norm::LInf}) {
    const ConjugatePair pair(q);
    SignSVRGState s = make_signsvrg_state(*p, x1, 0.01, 1.0, *p->lipschitz_constant(q), pair);
    RngStream rng(3);
    StepReport report;
    s = step_signsvrg(std::move(s), *p, rng, &report);
    const double expected = norm(p->full_gradient(x1), pair.p());
    for (double g : report.noise_scale) EXPECT_DOUBLE_EQ(g, expected);
    EXPECT_FALSE(report.bound_violation);
  }
}

TEST(SignSVRG, DegenerateAmplitudeAtStationaryReference) {
  const LeastSquaresProblem p(DenseMatrix(2, 2, {1, 0, 0, 1}), DenseVector{0, 0});
  SignSVRGState s = make_signsvrg_state(p, DenseVector(2), 0.1, 1.0, 1.0,
                                        ConjugatePair(Norm::L2), SignSVRGVariant::VarII);
  RngStream rng(4);
  StepReport report;
  s = step_signsvrg(std::move(s), p, rng, &report);
  EXPECT_TRUE(report.degenerate);
  EXPECT_EQ(report.noise_scale, DenseVector(2));
  EXPECT_EQ(s.x, (DenseVector{-0.1, -0.1}));
  EXPECT_TRUE(report.moved);
}

TEST(SignSVRG, RadiusBelowStepAlwaysRefreshes) {
  const auto p = half_square();
  SignSVRGState s = make_signsvrg_state(p, DenseVector{0.0}, 0.5, 0.25, 1.0,
                                        ConjugatePair(Norm::L1));
  RngStream rng(5);
  for (int k = 0; k < 20; ++k) {
    StepReport report;
    s = step_signsvrg(std::move(s), p, rng, &report);
    EXPECT_TRUE(report.ref_updated);
    EXPECT_FALSE(report.moved);
    EXPECT_EQ(report.bits_sent, 32u);
  }
  EXPECT_EQ(s.x[0], 0.0);
  EXPECT_EQ(s.k, 21u);
  AlgoConfig c;
  c.algo = Algorithm::SignSVRG1;
  c.gamma = 0.5;
  c.radius = 0.25;
  c.smoothness = 1.0;
  c.x1 = DenseVector{0.0};
  EXPECT_THROW(run(c, p, 10, 1), ContractError);
}

TEST(SignSVRG, UnitPeriodStillMakesProgress) {
  const auto p = least_squares(10, 20);
  const AlgoConfig c = svrg_config(Algorithm::SignSVRG1, *p, Norm::L1, 2000, 1.0);
  const Trace t = run(c, *p, 2000, 9);
  EXPECT_LT(t.f_final, t.rows.front().f);
  EXPECT_LE(t.last().k, 2000u);
}

TEST(SignSVRG, StateInvariantsAlongARun) {
  const auto p = least_squares(6, 15);
  for (auto variant : {SignSVRGVariant::VarI, SignSVRGVariant::VarII}) {
    for (Norm q : {Norm::L1, Norm::L2, Norm::LInf}) {
      const double l = *p->lipschitz_constant(q);
      const Schedule sched = schedule_cor1(6, q, l, 3000);
      SignSVRGState s = make_signsvrg_state(*p, DenseVector(6), sched.gamma, sched.radius(20.0),
                                            l, ConjugatePair(q), variant);
      RngStream rng(11);
      std::size_t k_prev = s.k;
      for (int step = 0; step < 3000; ++step) {
        ASSERT_LE(norm(s.x - s.ref, q), s.radius * (1 + 1e-12));
        StepReport report;
        s = step_signsvrg(std::move(s), *p, rng, &report);
        ASSERT_FALSE(report.bound_violation);
        ASSERT_GE(s.k, k_prev);
        k_prev = s.k;
        const DenseVector g = p->full_gradient(s.ref);
        for (std::size_t j = 0; j < 6; ++j) ASSERT_NEAR(s.ref_grad[j], g[j], 1e-10);
      }
      EXPECT_GT(s.k, 1u);
    }
  }
}

TEST(SVRG, ReferenceStepIsFullGradientStep) {
  const auto p = least_squares(3, 5);
  const DenseVector x1{0.4, -0.1, 0.2};
  SignSVRGState s = make_signsvrg_state(*p, x1, 0.01, 10.0, 1.0, ConjugatePair(Norm::L2));
  RngStream rng(6);
  s = step_svrg(std::move(s), *p, rng);
  const DenseVector expected = x1 - 0.01 * p->full_gradient(x1);
  for (std::size_t j = 0; j < 3; ++j) EXPECT_DOUBLE_EQ(s.x[j], expected[j]);
}

TEST(SVRG, UnbiasedAwayFromReference) {
  const auto p = least_squares(3, 5);
  const DenseVector ref{0.4, -0.1, 0.2};
  const DenseVector x{-0.3, 0.5, 0.9};
  const double gamma = 1e-3;
  RngStream rng(7);
  const int n = 20000;
  DenseVector mean(3);
  std::vector<DenseVector> draws;
  for (int k = 0; k < n; ++k) {
    SignSVRGState s = make_signsvrg_state(*p, ref, gamma, 100.0, 1.0, ConjugatePair(Norm::L2));
    s.x = x;
    s = step_svrg(std::move(s), *p, rng);
    DenseVector v = x - s.x;
    v *= 1.0 / gamma;
    mean += v;
    draws.push_back(std::move(v));
  }
  mean *= 1.0 / n;
  const DenseVector g = p->full_gradient(x);
  for (std::size_t j = 0; j < 3; ++j) {
    double var = 0.0;
    for (const DenseVector& v : draws) var += (v[j] - mean[j]) * (v[j] - mean[j]);
    const double se = std::sqrt(var / (n - 1) / n);
    EXPECT_NEAR(mean[j], g[j], 3.0 * se + 1e-9);
  }
}

TEST(Schedules, Corollary1) {
  const Schedule s = schedule_cor1(4, Norm::L1, 2.0, 50);
  EXPECT_NEAR(s.gamma, 0.25 * std::sqrt(1.0 / 50.0), 1e-15);
  EXPECT_NEAR(s.radius(10.0), 10.0 * std::sqrt(0.02), 1e-14);
  EXPECT_NEAR(schedule_cor1(4, Norm::LInf, 2.0, 50).gamma, std::sqrt(2.0 / 100.0), 1e-15);
  EXPECT_NEAR(schedule_cor1(4, Norm::L2, 2.0, 50).gamma, 0.5 * std::sqrt(0.02), 1e-15);
  EXPECT_THROW(schedule_cor1(4, Norm::L1, 0.0, 50), ContractError);
}

TEST(Schedules, Corollary2) {
  EXPECT_NEAR(schedule_cor2(1.0, 4, 100).gamma, 0.05, 1e-15);
  EXPECT_NEAR(schedule_cor2(1.0, 4, 25).radius(5.0), 1.0, 1e-15);
  // alpha = ||x1 - x*|| minimizes ||x1 - x*||^2 / alpha + alpha.
  const double dist = 1.7;
  EXPECT_NEAR(dist * dist / dist + dist, 2.0 * dist, 1e-15);
  for (double alpha : {0.5, 1.0, 3.0}) EXPECT_GE(dist * dist / alpha + alpha, 2.0 * dist);
}

TEST(Schedules, SignSGDPlusStep) {
  EXPECT_NEAR(schedule_sec2(2.0, 4, 100), 0.1, 1e-15);
  EXPECT_DOUBLE_EQ(schedule_sec2(1.0, 1, 1), 1.0);
  EXPECT_NEAR(schedule_sec2(1.3, 3, 400), schedule_sec2(1.3, 3, 100) / 2.0, 1e-15);
  EXPECT_THROW(schedule_sec2(0.0, 3, 100), ContractError);
}

TEST(Run, DeterministicAndSized) {
  const auto p = least_squares(5, 8);
  for (Algorithm algo : {Algorithm::SignSGD, Algorithm::SignSGDPlus, Algorithm::SignSVRG1,
                         Algorithm::SignSVRG2, Algorithm::SignGD, Algorithm::SGD,
                         Algorithm::SVRG}) {
    AlgoConfig c = svrg_config(algo, *p, Norm::L2, 200, 8.0);
    c.grad_bound_inf = 5.0;
    const Trace a = run(c, *p, 200, 42);
    const Trace b = run(c, *p, 200, 42);
    EXPECT_EQ(a.rows, b.rows) << to_string(algo);
    EXPECT_EQ(a.x_final, b.x_final);
    EXPECT_EQ(a.T(), 200u);
    EXPECT_EQ(run(c, *p, 1, 42).T(), 1u);
    for (std::size_t t = 1; t < a.rows.size(); ++t) {
      EXPECT_GE(a.rows[t].bits_cum, a.rows[t - 1].bits_cum);
      EXPECT_GE(a.rows[t].grad_evals_cum, a.rows[t - 1].grad_evals_cum);
      EXPECT_GE(a.rows[t].k, a.rows[t - 1].k);
      EXPECT_EQ(a.rows[t].t, t + 1);
    }
  }
}

TEST(Run, DifferentSeedsDiffer) {
  const auto p = least_squares(5, 8);
  const AlgoConfig c = svrg_config(Algorithm::SignSVRG1, *p, Norm::L2, 100, 8.0);
  EXPECT_NE(run(c, *p, 100, 1).x_final, run(c, *p, 100, 2).x_final);
}

TEST(Run, BitsAccountingIdentity) {
  const auto p = least_squares(6, 10);
  for (Algorithm algo : {Algorithm::SignSVRG1, Algorithm::SignSVRG2}) {
    const AlgoConfig c = svrg_config(algo, *p, Norm::L1, 3000, 5.0);
    const Trace t = run(c, *p, 3000, 3);
    std::uint64_t sign_steps = 0, refreshes = 1;
    for (std::size_t r = 0; r + 1 < t.rows.size(); ++r) {
      if (t.rows[r].flags & kFlagRefUpdate) {
        ++refreshes;
      } else {
        ++sign_steps;
      }
      EXPECT_EQ(t.rows[r].flags & kFlagBoundViolation, 0u);
    }
    EXPECT_EQ(t.last().bits_cum, 6 * sign_steps + 10 * 6 * 32 * refreshes);
    EXPECT_EQ(t.last().k, refreshes);
    EXPECT_GT(refreshes, 1u);
    const double period = 5.0;
    EXPECT_LE(static_cast<double>(t.last().k), std::ceil(3000.0 / period));
  }
}

TEST(Run, ReferenceCountWithinLemmaForEveryGeometry) {
  const auto p = least_squares(8, 12);
  for (Norm q : {Norm::L1, Norm::L2, Norm::LInf}) {
    for (double period : {2.0, 7.5, 40.0}) {
      const AlgoConfig c = svrg_config(Algorithm::SignSVRG1, *p, q, 2000, period);
      const Trace t = run(c, *p, 2000, 8);
      EXPECT_LE(static_cast<double>(t.last().k), std::ceil(2000.0 / period));
    }
  }
}

TEST(Run, AbortsOnNonFiniteIterate) {
  const auto p = half_square();
  AlgoConfig c;
  c.algo = Algorithm::SGD;
  c.gamma = 1e200;
  c.x1 = DenseVector{1e150};
  EXPECT_THROW(run(c, p, 10, 1), RunAborted);
}

TEST(Run, IterateMeanAndKeptIterates) {
  const auto p = least_squares(3, 4);
  AlgoConfig c;
  c.algo = Algorithm::SignSGD;
  c.gamma = 0.01;
  c.x1 = DenseVector{1, 2, 3};
  c.keep_iterates = true;
  const Trace t = run(c, *p, 50, 4);
  ASSERT_EQ(t.iterates.size(), 51u);
  DenseVector mean(3);
  for (std::size_t k = 0; k < 50; ++k) mean += t.iterates[k];
  mean *= 1.0 / 50.0;
  for (std::size_t j = 0; j < 3; ++j) EXPECT_NEAR(average_iterates(t)[j], mean[j], 1e-12);
  EXPECT_EQ(t.iterates.back(), t.x_final);
}

TEST(SelectUniformIterate, Frequencies) {
  const auto p = half_square();
  AlgoConfig c;
  c.algo = Algorithm::SignGD;
  c.gamma = 0.1;
  c.x1 = DenseVector{1.0};
  RngStream rng(13);
  EXPECT_EQ(select_uniform_iterate(run(c, p, 1, 0), rng), 0u);
  const Trace t = run(c, p, 4, 0);
  std::array<int, 4> counts{};
  const int n = 100000;
  for (int k = 0; k < n; ++k) ++counts[select_uniform_iterate(t, rng)];
  for (int count : counts) EXPECT_NEAR(static_cast<double>(count) / n, 0.25, 0.005);
}

TEST(Algorithm, NamesRoundTrip) {
  for (Algorithm algo : {Algorithm::SignSGD, Algorithm::SignSGDPlus, Algorithm::SignSVRG1,
                         Algorithm::SignSVRG2, Algorithm::SignGD, Algorithm::SGD,
                         Algorithm::SVRG}) {
    EXPECT_EQ(parse_algorithm(to_string(algo)), algo);
  }
  EXPECT_THROW(parse_algorithm("adam"), ContractError);
}
