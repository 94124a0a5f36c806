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
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace signvr {

/// Raised when a caller breaks a documented precondition.
class ContractError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Dense real vector of fixed length. Every entry is finite on construction.
class DenseVector {
 public:
  DenseVector() = default;
  explicit DenseVector(std::size_t d, double fill = 0.0);
  explicit DenseVector(std::vector<double> values);
  DenseVector(std::initializer_list<double> values);

  std::size_t size() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }

  double operator[](std::size_t j) const noexcept { return values_[j]; }
  double& operator[](std::size_t j) noexcept { return values_[j]; }

  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }
  const std::vector<double>& raw() const noexcept { return values_; }

  auto begin() const noexcept { return values_.begin(); }
  auto end() const noexcept { return values_.end(); }
  auto begin() noexcept { return values_.begin(); }
  auto end() noexcept { return values_.end(); }

  bool all_finite() const noexcept;

  DenseVector& operator+=(const DenseVector& other);
  DenseVector& operator-=(const DenseVector& other);
  DenseVector& operator*=(double alpha) noexcept;

  friend bool operator==(const DenseVector&, const DenseVector&) = default;

 private:
  std::vector<double> values_;
};

DenseVector operator+(DenseVector lhs, const DenseVector& rhs);
DenseVector operator-(DenseVector lhs, const DenseVector& rhs);
DenseVector operator*(double alpha, DenseVector v);

/// The three supported lp geometries.
enum class Norm { L1, L2, LInf };

/// Parses "1", "2", "inf" (also "infinity"). Throws ContractError otherwise.
Norm parse_norm(std::string_view text);
std::string to_string(Norm norm);

/// Hölder pair (q, p) with 1/p + 1/q = 1. Only q in {1, 2, inf} exists.
class ConjugatePair {
 public:
  explicit constexpr ConjugatePair(Norm q) noexcept : q_(q) {}

  constexpr Norm q() const noexcept { return q_; }
  constexpr Norm p() const noexcept {
    switch (q_) {
      case Norm::L1: return Norm::LInf;
      case Norm::L2: return Norm::L2;
      case Norm::LInf: return Norm::L1;
    }
    return Norm::L2;
  }
  /// 1/q with 1/inf = 0.
  constexpr double inv_q() const noexcept {
    switch (q_) {
      case Norm::L1: return 1.0;
      case Norm::L2: return 0.5;
      case Norm::LInf: return 0.0;
    }
    return 0.5;
  }
  constexpr double inv_p() const noexcept { return 1.0 - inv_q(); }

  /// d^{1/q}, the lq-norm of the all-ones vector in R^d.
  double dim_factor(std::size_t d) const noexcept;

  friend constexpr bool operator==(ConjugatePair, ConjugatePair) = default;

 private:
  Norm q_;
};

/// Coordinate-wise sign with sign(0) = +1.
DenseVector sign_vec(const DenseVector& v);
double sign_of(double x) noexcept;

double norm(std::span<const double> v, Norm p) noexcept;
inline double norm(const DenseVector& v, Norm p) noexcept { return norm(v.values(), p); }

double dot(const DenseVector& u, const DenseVector& v);
DenseVector hadamard(const DenseVector& u, const DenseVector& v);

/// Throws ContractError when the lengths differ.
void require_same_size(const DenseVector& u, const DenseVector& v, std::string_view what);

/// Row-major dense matrix, used for operator norms and problem designs.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> row_major);

  static DenseMatrix identity(std::size_t d);
  /// u v^T
  static DenseMatrix outer(const DenseVector& u, const DenseVector& v);
  static DenseMatrix from_rows(const std::vector<DenseVector>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }
  double& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }

  std::span<const double> row(std::size_t r) const noexcept {
    return {data_.data() + r * cols_, cols_};
  }
  DenseVector row_vector(std::size_t r) const;

  DenseVector apply(const DenseVector& x) const;
  DenseVector apply_transpose(const DenseVector& y) const;

  const std::vector<double>& data() const noexcept { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

}  // namespace signvr
