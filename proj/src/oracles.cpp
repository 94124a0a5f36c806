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

#include "signvr/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

namespace signvr::oracles {

double expected_sign_analytic(double g, double G) {
  if (!(G > 0.0)) throw ContractError("expected_sign_analytic: G must be > 0");
  return std::clamp(g / G, -1.0, 1.0);
}

MonteCarloEstimate monte_carlo_expected_sign(double g, double G, std::size_t N, RngStream& rng) {
  if (N == 0) throw ContractError("monte_carlo_expected_sign: N must be >= 1");
  if (!(G >= 0.0)) throw ContractError("monte_carlo_expected_sign: G must be >= 0");
  std::int64_t plus = 0;
  for (std::size_t k = 0; k < N; ++k) {
    if (sign_of(g + G * rng.uniform_symmetric()) > 0.0) ++plus;
  }
  // Samples are +-1, so the sample variance has a closed form in the mean.
  const double n = static_cast<double>(N);
  const double mean = (2.0 * static_cast<double>(plus) - n) / n;
  MonteCarloEstimate est;
  est.mean = mean;
  if (N > 1) {
    const double var = std::max(0.0, (1.0 - mean * mean) * n / (n - 1.0));
    est.stderr_ = std::sqrt(var / n);
  }
  return est;
}

double counterexample_drift(double x) {
  constexpr double a[3] = {-3.0, 1.0, 1.0};
  double acc = 0.0;
  for (double ai : a) acc += sign_of(x + ai);
  return acc / 3.0;
}

std::vector<double> jacobi_singular_values(const DenseMatrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  // Column-major working copy.
  std::vector<std::vector<double>> a(cols, std::vector<double>(rows));
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) a[c][r] = m(r, c);
  }
  constexpr double kEps = 1e-15;
  for (int sweep = 0; sweep < 100; ++sweep) {
    bool rotated = false;
    for (std::size_t j = 0; j + 1 < cols; ++j) {
      for (std::size_t k = j + 1; k < cols; ++k) {
        double alpha = 0.0, beta = 0.0, gamma = 0.0;
        for (std::size_t r = 0; r < rows; ++r) {
          alpha += a[j][r] * a[j][r];
          beta += a[k][r] * a[k][r];
          gamma += a[j][r] * a[k][r];
        }
        if (gamma == 0.0 || std::abs(gamma) <= kEps * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t r = 0; r < rows; ++r) {
          const double aj = a[j][r];
          const double ak = a[k][r];
          a[j][r] = c * aj - s * ak;
          a[k][r] = s * aj + c * ak;
        }
      }
    }
    if (!rotated) break;
  }
  std::vector<double> sv(cols);
  for (std::size_t c = 0; c < cols; ++c) {
    double ss = 0.0;
    for (double v : a[c]) ss += v * v;
    sv[c] = std::sqrt(ss);
  }
  return sv;
}

namespace {

double max_abs_entry(const DenseMatrix& m) {
  double best = 0.0;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) best = std::max(best, std::abs(m(r, c)));
  }
  return best;
}

double all_vertices_inf_to_1(const DenseMatrix& m) {
  const std::size_t cols = m.cols();
  double best = 0.0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << cols); ++mask) {
    double total = 0.0;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      double acc = 0.0;
      for (std::size_t c = 0; c < cols; ++c) {
        acc += ((mask >> c) & 1u) ? -m(r, c) : m(r, c);
      }
      total += std::abs(acc);
    }
    best = std::max(best, total);
  }
  return best;
}

}  // namespace

double brute_force_opnorm(const DenseMatrix& m, Norm q) {
  if (m.rows() > kBruteForceMaxDim || m.cols() > kBruteForceMaxDim) {
    throw ContractError("brute_force_opnorm: dimension above 12 refused");
  }
  switch (q) {
    case Norm::L1: return max_abs_entry(m);
    case Norm::L2: {
      const std::vector<double> sv = jacobi_singular_values(m);
      return sv.empty() ? 0.0 : *std::max_element(sv.begin(), sv.end());
    }
    case Norm::LInf: return all_vertices_inf_to_1(m);
  }
  return 0.0;
}

std::vector<double> signgd_1d_closed_form(double x1, double gamma, std::size_t T) {
  std::vector<double> out;
  out.reserve(T + 1);
  double mag = std::abs(x1);
  out.push_back(mag);
  for (std::size_t t = 0; t < T; ++t) {
    mag = std::abs(mag - gamma);
    out.push_back(mag);
  }
  return out;
}

}  // namespace signvr::oracles
