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

#include "signvr/rng.hpp"

#include <cmath>

namespace signvr {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

// FNV-1a, 64 bit.
std::uint64_t hash_label(std::string_view label) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : label) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t RngStream::next_u64() noexcept {
  ++counter_;
  return mix64(seed_ + counter_ * kGolden);
}

double RngStream::uniform01() noexcept {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::uniform_symmetric() noexcept { return 2.0 * uniform01() - 1.0; }

std::size_t RngStream::index(std::size_t n) {
  if (n == 0) throw ContractError("RngStream::index: n must be positive");
  const auto range = static_cast<std::uint64_t>(n);
  // Reject the low 2^64 mod n words so every residue is equally likely.
  const std::uint64_t threshold = (0 - range) % range;
  for (;;) {
    const std::uint64_t r = next_u64();
    if (r >= threshold) return static_cast<std::size_t>(r % range);
  }
}

double RngStream::gaussian() noexcept {
  if (has_spare_) {
    has_spare_ = false;
    return spare_gaussian_;
  }
  double u = 0.0;
  double v = 0.0;
  double s = 0.0;
  do {
    u = uniform_symmetric();
    v = uniform_symmetric();
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double factor = std::sqrt(-2.0 * std::log(s) / s);
  spare_gaussian_ = v * factor;
  has_spare_ = true;
  return u * factor;
}

RngStream RngStream::child(std::string_view label) const noexcept {
  return child(hash_label(label));
}

RngStream RngStream::child(std::uint64_t label) const noexcept {
  return RngStream(mix64(mix64(seed_ ^ kGolden) ^ mix64(label + kGolden)));
}

DenseVector sample_uniform_cube(RngStream& rng, std::size_t d) {
  DenseVector out(d);
  for (std::size_t j = 0; j < d; ++j) out[j] = rng.uniform_symmetric();
  return out;
}

std::size_t sample_index(RngStream& rng, std::size_t n) { return rng.index(n); }

DenseVector sample_gaussian(RngStream& rng, std::size_t d, double scale) {
  DenseVector out(d);
  for (std::size_t j = 0; j < d; ++j) out[j] = scale * rng.gaussian();
  return out;
}

DenseVector sample_unit_sphere(RngStream& rng, std::size_t d) {
  if (d == 0) throw ContractError("sample_unit_sphere: d must be positive");
  for (;;) {
    DenseVector w = sample_gaussian(rng, d);
    const double r = norm(w, Norm::L2);
    if (r > 0.0) {
      for (double& v : w) v /= r;
      return w;
    }
  }
}

}  // namespace signvr
