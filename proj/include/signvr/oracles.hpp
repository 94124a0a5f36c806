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
#include <vector>

#include "signvr/rng.hpp"
#include "signvr/vecmath.hpp"

// Reference implementations for tests. Nothing here depends on the problem,
// optimizer or analysis code.
namespace signvr::oracles {

/// E[sign(g + G U)] for U uniform on [-1, 1]: clamp(g / G, -1, 1).
double expected_sign_analytic(double g, double G);

struct MonteCarloEstimate {
  double mean = 0.0;
  double stderr_ = 0.0;
};

/// Empirical mean of sign(g + G U) over N draws, with sample-std / sqrt(N).
MonteCarloEstimate monte_carlo_expected_sign(double g, double G, std::size_t N, RngStream& rng);

/// (1/3) sum_i sign(x + a_i) with a = (-3, 1, 1).
double counterexample_drift(double x);

/// Largest matrix dimension brute_force_opnorm accepts.
inline constexpr std::size_t kBruteForceMaxDim = 12;

/// (q -> p) operator norm of M with p the conjugate of q:
///   L1   -> max |M_jk|
///   L2   -> largest singular value (one-sided Jacobi)
///   LInf -> max over all s in {-1, 1}^d of ||M s||_1
double brute_force_opnorm(const DenseMatrix& m, Norm q);

/// Singular values by one-sided Jacobi rotations, unordered.
std::vector<double> jacobi_singular_values(const DenseMatrix& m);

/// |x_t| for t = 1..T+1 under SignGD on f(x) = x^2 / 2:
/// |x_{t+1}| = | |x_t| - gamma |.
std::vector<double> signgd_1d_closed_form(double x1, double gamma, std::size_t T);

}  // namespace signvr::oracles
