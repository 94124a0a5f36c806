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

#include "signvr/vecmath.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace signvr {

namespace {

void require_finite(std::span<const double> values) {
  for (double v : values) {
    if (!std::isfinite(v)) throw ContractError("DenseVector: non-finite entry");
  }
}

}  // namespace

DenseVector::DenseVector(std::size_t d, double fill) : values_(d, fill) {
  if (!std::isfinite(fill)) throw ContractError("DenseVector: non-finite fill value");
}

DenseVector::DenseVector(std::vector<double> values) : values_(std::move(values)) {
  require_finite(values_);
}

DenseVector::DenseVector(std::initializer_list<double> values) : values_(values) {
  require_finite(values_);
}

bool DenseVector::all_finite() const noexcept {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

DenseVector& DenseVector::operator+=(const DenseVector& other) {
  require_same_size(*this, other, "operator+=");
  for (std::size_t j = 0; j < values_.size(); ++j) values_[j] += other.values_[j];
  return *this;
}

DenseVector& DenseVector::operator-=(const DenseVector& other) {
  require_same_size(*this, other, "operator-=");
  for (std::size_t j = 0; j < values_.size(); ++j) values_[j] -= other.values_[j];
  return *this;
}

DenseVector& DenseVector::operator*=(double alpha) noexcept {
  for (double& v : values_) v *= alpha;
  return *this;
}

DenseVector operator+(DenseVector lhs, const DenseVector& rhs) {
  lhs += rhs;
  return lhs;
}

DenseVector operator-(DenseVector lhs, const DenseVector& rhs) {
  lhs -= rhs;
  return lhs;
}

DenseVector operator*(double alpha, DenseVector v) {
  v *= alpha;
  return v;
}

Norm parse_norm(std::string_view text) {
  if (text == "1") return Norm::L1;
  if (text == "2") return Norm::L2;
  if (text == "inf" || text == "infinity" || text == "Inf") return Norm::LInf;
  throw ContractError("unsupported norm '" + std::string(text) + "' (expected 1, 2 or inf)");
}

std::string to_string(Norm norm) {
  switch (norm) {
    case Norm::L1: return "1";
    case Norm::L2: return "2";
    case Norm::LInf: return "inf";
  }
  return "?";
}

double ConjugatePair::dim_factor(std::size_t d) const noexcept {
  switch (q_) {
    case Norm::L1: return static_cast<double>(d);
    case Norm::L2: return std::sqrt(static_cast<double>(d));
    case Norm::LInf: return 1.0;
  }
  return 1.0;
}

double sign_of(double x) noexcept { return x < 0.0 ? -1.0 : 1.0; }

DenseVector sign_vec(const DenseVector& v) {
  DenseVector out(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) out[j] = sign_of(v[j]);
  return out;
}

double norm(std::span<const double> v, Norm p) noexcept {
  double acc = 0.0;
  switch (p) {
    case Norm::L1:
      for (double x : v) acc += std::abs(x);
      return acc;
    case Norm::L2:
      for (double x : v) acc += x * x;
      return std::sqrt(acc);
    case Norm::LInf:
      for (double x : v) acc = std::max(acc, std::abs(x));
      return acc;
  }
  return acc;
}

double dot(const DenseVector& u, const DenseVector& v) {
  require_same_size(u, v, "dot");
  double acc = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) acc += u[j] * v[j];
  return acc;
}

DenseVector hadamard(const DenseVector& u, const DenseVector& v) {
  require_same_size(u, v, "hadamard");
  DenseVector out(u.size());
  for (std::size_t j = 0; j < u.size(); ++j) out[j] = u[j] * v[j];
  return out;
}

void require_same_size(const DenseVector& u, const DenseVector& v, std::string_view what) {
  if (u.size() != v.size()) {
    throw ContractError(std::string(what) + ": length mismatch (" + std::to_string(u.size()) +
                        " vs " + std::to_string(v.size()) + ")");
  }
}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> row_major)
    : rows_(rows), cols_(cols), data_(std::move(row_major)) {
  if (data_.size() != rows * cols) throw ContractError("DenseMatrix: data size mismatch");
  require_finite(data_);
}

DenseMatrix DenseMatrix::identity(std::size_t d) {
  DenseMatrix m(d, d);
  for (std::size_t j = 0; j < d; ++j) m(j, j) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::outer(const DenseVector& u, const DenseVector& v) {
  DenseMatrix m(u.size(), v.size());
  for (std::size_t r = 0; r < u.size(); ++r) {
    for (std::size_t c = 0; c < v.size(); ++c) m(r, c) = u[r] * v[c];
  }
  return m;
}

DenseMatrix DenseMatrix::from_rows(const std::vector<DenseVector>& rows) {
  if (rows.empty()) return {};
  const std::size_t d = rows.front().size();
  DenseMatrix m(rows.size(), d);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != d) throw ContractError("DenseMatrix::from_rows: ragged rows");
    for (std::size_t c = 0; c < d; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

DenseVector DenseMatrix::row_vector(std::size_t r) const {
  auto span = row(r);
  return DenseVector(std::vector<double>(span.begin(), span.end()));
}

DenseVector DenseMatrix::apply(const DenseVector& x) const {
  if (x.size() != cols_) throw ContractError("DenseMatrix::apply: dimension mismatch");
  DenseVector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    double acc = 0.0;
    for (std::size_t c = 0; c < cols_; ++c) acc += data_[r * cols_ + c] * x[c];
    out[r] = acc;
  }
  return out;
}

DenseVector DenseMatrix::apply_transpose(const DenseVector& y) const {
  if (y.size() != rows_) throw ContractError("DenseMatrix::apply_transpose: dimension mismatch");
  DenseVector out(cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out[c] += data_[r * cols_ + c] * y[r];
  }
  return out;
}

}  // namespace signvr
