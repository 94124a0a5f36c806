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
#include <cstdint>
#include <string_view>

#include "signvr/vecmath.hpp"

namespace signvr {

/// SplitMix64 finalizer. Bijective on 64-bit words.
std::uint64_t mix64(std::uint64_t z) noexcept;

/// Deterministic counter-based stream: output k is mix64(seed + k * golden).
///
/// Identical seeds give identical sequences on every platform; only integer
/// arithmetic is involved in producing raw words. Child streams are derived
/// by hashing a label into the parent seed, so the parent is not advanced and
/// a child is reproducible from (seed, label) alone.
///
/// Single owner: a stream must not be shared between concurrent activities.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) noexcept : seed_(seed), counter_(0) {}

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t draws() const noexcept { return counter_; }

  std::uint64_t next_u64() noexcept;

  /// Uniform on [0, 1) with 53 bits of resolution.
  double uniform01() noexcept;
  /// Uniform on [-1, 1).
  double uniform_symmetric() noexcept;
  /// Unbiased uniform integer on {0, ..., n-1}. Throws for n == 0.
  std::size_t index(std::size_t n);
  /// Standard normal via the Marsaglia polar method.
  double gaussian() noexcept;

  RngStream child(std::string_view label) const noexcept;
  RngStream child(std::uint64_t label) const noexcept;

 private:
  std::uint64_t seed_;
  std::uint64_t counter_;
  double spare_gaussian_ = 0.0;
  bool has_spare_ = false;
};

/// i.i.d. uniform coordinates on [-1, 1]; consumes exactly d draws.
DenseVector sample_uniform_cube(RngStream& rng, std::size_t d);

/// Uniform index on {0, ..., n-1} (zero-based; the i-th component).
std::size_t sample_index(RngStream& rng, std::size_t n);

/// Uniform point on the unit sphere of R^d, built as W / ||W||_2 with W
/// standard Gaussian.
DenseVector sample_unit_sphere(RngStream& rng, std::size_t d);

DenseVector sample_gaussian(RngStream& rng, std::size_t d, double scale = 1.0);

}  // namespace signvr
