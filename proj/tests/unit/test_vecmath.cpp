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

#include <cmath>

#include "signvr/rng.hpp"
#include "signvr/vecmath.hpp"

using namespace signvr;

TEST(DenseVector, RejectsNonFiniteEntries) {
  EXPECT_THROW(DenseVector({1.0, std::nan("")}), ContractError);
  EXPECT_THROW(DenseVector(std::vector<double>{INFINITY}), ContractError);
  EXPECT_THROW(DenseVector(3, -INFINITY), ContractError);
}

TEST(DenseVector, BinaryOpsRequireEqualLength) {
  DenseVector a{1.0, 2.0};
  const DenseVector b{1.0, 2.0, 3.0};
  EXPECT_THROW(a += b, ContractError);
  EXPECT_THROW(a - b, ContractError);
  EXPECT_THROW(dot(a, b), ContractError);
  EXPECT_THROW(hadamard(a, b), ContractError);
}

TEST(DenseVector, Arithmetic) {
  const DenseVector a{1.0, -2.0};
  const DenseVector b{0.5, 4.0};
  EXPECT_EQ(a + b, (DenseVector{1.5, 2.0}));
  EXPECT_EQ(a - b, (DenseVector{0.5, -6.0}));
  EXPECT_EQ(2.0 * a, (DenseVector{2.0, -4.0}));
  EXPECT_DOUBLE_EQ(dot(a, b), -7.5);
}

TEST(SignVec, Examples) {
  EXPECT_EQ(sign_vec(DenseVector{3.2, -0.1, 0.0}), (DenseVector{1, -1, 1}));
  EXPECT_EQ(sign_vec(DenseVector{0, 0}), (DenseVector{1, 1}));
  EXPECT_EQ(sign_vec(DenseVector{-5, 7, -1e-12}), (DenseVector{-1, 1, -1}));
  EXPECT_TRUE(sign_vec(DenseVector{}).empty());
}

TEST(SignVec, Idempotent) {
  RngStream rng(5);
  for (int k = 0; k < 50; ++k) {
    const DenseVector v = sample_gaussian(rng, 6);
    EXPECT_EQ(sign_vec(sign_vec(v)), sign_vec(v));
  }
}

TEST(Norm, Examples) {
  const DenseVector v{3, -4};
  EXPECT_DOUBLE_EQ(norm(v, Norm::L2), 5.0);
  EXPECT_DOUBLE_EQ(norm(v, Norm::L1), 7.0);
  EXPECT_DOUBLE_EQ(norm(v, Norm::LInf), 4.0);
  EXPECT_EQ(norm(DenseVector{}, Norm::L2), 0.0);
}

TEST(Norm, OrderingHomogeneityHolder) {
  RngStream rng(9);
  for (int k = 0; k < 500; ++k) {
    const DenseVector u = sample_gaussian(rng, 8, 3.0);
    const DenseVector v = sample_gaussian(rng, 8);
    const double alpha = 4.0 * rng.uniform_symmetric();
    EXPECT_LE(norm(u, Norm::LInf), norm(u, Norm::L2));
    EXPECT_LE(norm(u, Norm::L2), norm(u, Norm::L1));
    for (Norm p : {Norm::L1, Norm::L2, Norm::LInf}) {
      EXPECT_NEAR(norm(alpha * u, p), std::abs(alpha) * norm(u, p), 1e-12 * (1 + norm(u, p)));
      const ConjugatePair pair(p);
      EXPECT_LE(std::abs(dot(u, v)), norm(u, pair.q()) * norm(v, pair.p()) * (1 + 1e-12));
    }
  }
}

TEST(Hadamard, Examples) {
  EXPECT_EQ(hadamard(DenseVector{1, 2}, DenseVector{3, -1}), (DenseVector{3, -2}));
  EXPECT_EQ(hadamard(DenseVector{0, 5}, DenseVector{7, 0}), (DenseVector{0, 0}));
  EXPECT_EQ(hadamard(DenseVector{1, 1, 1}, DenseVector{2, -3, 4}), (DenseVector{2, -3, 4}));
}

TEST(ConjugatePair, Duals) {
  EXPECT_EQ(ConjugatePair(Norm::L1).p(), Norm::LInf);
  EXPECT_EQ(ConjugatePair(Norm::L2).p(), Norm::L2);
  EXPECT_EQ(ConjugatePair(Norm::LInf).p(), Norm::L1);
  EXPECT_DOUBLE_EQ(ConjugatePair(Norm::L1).dim_factor(9), 9.0);
  EXPECT_DOUBLE_EQ(ConjugatePair(Norm::L2).dim_factor(9), 3.0);
  EXPECT_DOUBLE_EQ(ConjugatePair(Norm::LInf).dim_factor(9), 1.0);
  for (Norm q : {Norm::L1, Norm::L2, Norm::LInf}) {
    const ConjugatePair pair(q);
    EXPECT_DOUBLE_EQ(pair.inv_p() + pair.inv_q(), 1.0);
    // d^{1/q} is the lq norm of the all-ones vector.
    EXPECT_NEAR(pair.dim_factor(7), norm(DenseVector(7, 1.0), q), 1e-12);
  }
}

TEST(Norm, ParseAndPrint) {
  EXPECT_EQ(parse_norm("1"), Norm::L1);
  EXPECT_EQ(parse_norm("2"), Norm::L2);
  EXPECT_EQ(parse_norm("inf"), Norm::LInf);
  EXPECT_THROW(parse_norm("3"), ContractError);
  for (Norm p : {Norm::L1, Norm::L2, Norm::LInf}) EXPECT_EQ(parse_norm(to_string(p)), p);
}

TEST(DenseMatrix, ApplyAndTranspose) {
  const DenseMatrix m(2, 3, {1, 2, 3, 4, 5, 6});
  EXPECT_EQ(m.apply(DenseVector{1, 0, -1}), (DenseVector{-2, -2}));
  EXPECT_EQ(m.apply_transpose(DenseVector{1, 1}), (DenseVector{5, 7, 9}));
  EXPECT_THROW(m.apply(DenseVector{1, 2}), ContractError);
  const DenseMatrix o = DenseMatrix::outer(DenseVector{1, 2}, DenseVector{3, 4});
  EXPECT_EQ(o(1, 0), 6.0);
  EXPECT_EQ(DenseMatrix::identity(3)(2, 2), 1.0);
  EXPECT_EQ(DenseMatrix::identity(3)(0, 2), 0.0);
}
