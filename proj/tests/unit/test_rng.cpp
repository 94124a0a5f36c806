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
#include <set>

#include "signvr/rng.hpp"

using namespace signvr;

// Reference values computed independently from the SplitMix64 definition.
TEST(RngStream, GoldenSequences) {
  RngStream zero(0);
  EXPECT_EQ(zero.next_u64(), 0xe220a8397b1dcdafULL);
  EXPECT_EQ(zero.next_u64(), 0x6e789e6aa1b965f4ULL);
  EXPECT_EQ(zero.next_u64(), 0x06c45d188009454fULL);
  RngStream s42(42);
  EXPECT_EQ(s42.next_u64(), 0xbdd732262feb6e95ULL);
  EXPECT_EQ(s42.next_u64(), 0x28efe333b266f103ULL);
  EXPECT_EQ(s42.next_u64(), 0x47526757130f9f52ULL);
}

TEST(RngStream, SameSeedSameSequence) {
  RngStream a(123), b(123);
  for (int k = 0; k < 1000; ++k) ASSERT_EQ(a.next_u64(), b.next_u64());
  RngStream c(123), d(123);
  EXPECT_EQ(sample_uniform_cube(c, 3), sample_uniform_cube(d, 3));
  EXPECT_EQ(sample_unit_sphere(c, 4), sample_unit_sphere(d, 4));
}

TEST(RngStream, ChildrenAreReproducibleAndDistinct) {
  const RngStream root(77);
  RngStream a = root.child("design");
  RngStream b = root.child("design");
  RngStream c = root.child("noise");
  RngStream e = root.child(std::uint64_t{3});
  EXPECT_EQ(a.next_u64(), b.next_u64());
  EXPECT_NE(root.child("design").next_u64(), c.next_u64());
  EXPECT_NE(root.child("design").next_u64(), e.next_u64());
  // The parent is not advanced.
  EXPECT_EQ(root.draws(), 0u);
}

TEST(RngStream, ChildStreamsLookUncorrelated) {
  const RngStream root(1);
  RngStream a = root.child("a");
  RngStream b = root.child("b");
  const int n = 100000;
  double sab = 0.0;
  for (int k = 0; k < n; ++k) sab += a.uniform_symmetric() * b.uniform_symmetric();
  // Var of a product of two U[-1,1] is 1/9; 4 sigma band.
  EXPECT_LT(std::abs(sab / n), 4.0 * (1.0 / 3.0) / std::sqrt(n));
}

TEST(UniformCube, RangeMeanVariance) {
  RngStream rng(3);
  const int n = 100000;
  double s = 0.0, ss = 0.0;
  for (int k = 0; k < n; ++k) {
    const DenseVector u = sample_uniform_cube(rng, 3);
    for (double v : u) {
      ASSERT_GE(v, -1.0);
      ASSERT_LE(v, 1.0);
    }
    s += u[0];
    ss += u[0] * u[0];
  }
  const double mean = s / n;
  EXPECT_NEAR(mean, 0.0, 0.01);
  EXPECT_NEAR(ss / n - mean * mean, 1.0 / 3.0, 0.01);
}

TEST(UniformCube, ConsumesOneDrawPerCoordinate) {
  RngStream rng(8);
  sample_uniform_cube(rng, 5);
  EXPECT_EQ(rng.draws(), 5u);
}

TEST(SampleIndex, SingletonAndFrequencies) {
  RngStream rng(4);
  for (int k = 0; k < 100; ++k) EXPECT_EQ(sample_index(rng, 1), 0u);
  std::array<int, 4> counts{};
  const int n = 100000;
  for (int k = 0; k < n; ++k) ++counts[sample_index(rng, 4)];
  for (int c : counts) EXPECT_NEAR(static_cast<double>(c) / n, 0.25, 0.005);
  EXPECT_THROW(rng.index(0), ContractError);
}

TEST(SampleIndex, Deterministic) {
  RngStream a(10), b(10);
  for (int k = 0; k < 100; ++k) ASSERT_EQ(sample_index(a, 7), sample_index(b, 7));
}

TEST(UnitSphere, NormalizedAndSymmetric) {
  RngStream rng(6);
  for (int k = 0; k < 100; ++k) {
    EXPECT_NEAR(norm(sample_unit_sphere(rng, 5), Norm::L2), 1.0, 1e-12);
  }
  for (int k = 0; k < 100; ++k) {
    const double z = sample_unit_sphere(rng, 1)[0];
    EXPECT_TRUE(z == 1.0 || z == -1.0);
  }
  const int n = 100000;
  double s = 0.0;
  for (int k = 0; k < n; ++k) s += sample_unit_sphere(rng, 3)[0];
  EXPECT_NEAR(s / n, 0.0, 0.006);
}

TEST(Gaussian, Moments) {
  RngStream rng(12);
  const int n = 200000;
  double s = 0.0, ss = 0.0;
  for (int k = 0; k < n; ++k) {
    const double g = rng.gaussian();
    s += g;
    ss += g * g;
  }
  EXPECT_NEAR(s / n, 0.0, 0.01);
  EXPECT_NEAR(ss / n, 1.0, 0.015);
}

TEST(Uniform01, HalfOpenRange) {
  RngStream rng(2);
  for (int k = 0; k < 10000; ++k) {
    const double u = rng.uniform01();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}
