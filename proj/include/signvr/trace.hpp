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
#include <string>
#include <vector>

#include "signvr/vecmath.hpp"

namespace signvr {

/// Bits of TraceRow::flags. They describe the step taken from x_t.
enum StepFlag : std::uint32_t {
  kFlagRefUpdate = 1u << 0,     // candidate rejected, reference refreshed
  kFlagDegenerateNoise = 1u << 1,  // some noise amplitude G_t^j was exactly 0
  kFlagBoundViolation = 1u << 2,   // |v_t^j| > G_t^j for some coordinate
};

/// One row per iterate x_t, t = 1..T.
///
/// Counters are cumulative up to (not including) the step taken from x_t, so
/// row 1 carries only the initial synchronisation of variance-reduced methods.
struct TraceRow {
  std::size_t t = 0;
  double f = 0.0;
  double gnorm1 = 0.0;
  double gnorm2 = 0.0;
  double gnorm_inf = 0.0;
  std::size_t k = 0;
  double dist_to_ref = 0.0;
  std::uint64_t bits_cum = 0;
  std::uint64_t grad_evals_cum = 0;
  std::uint32_t flags = 0;

  double gnorm(Norm p) const noexcept {
    switch (p) {
      case Norm::L1: return gnorm1;
      case Norm::L2: return gnorm2;
      case Norm::LInf: return gnorm_inf;
    }
    return gnorm2;
  }

  friend bool operator==(const TraceRow&, const TraceRow&) = default;
};

}  // namespace signvr
