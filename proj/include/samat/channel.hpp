// SPDX-License-Identifier: Apache-2.0
//
// Copyright (C) 2026 The samat authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef SAMAT_CHANNEL_HPP
#define SAMAT_CHANNEL_HPP

#include "samat/types.hpp"

#include <array>
#include <cstdint>
#include <limits>

namespace samat {

/// (master_seed, trial_index) identifies one Monte Carlo trial.
struct SeedSpec {
  std::uint64_t master_seed = 0;
  std::uint64_t trial_index = 0;
};

/// Stream identifiers inside a trial. Slots 1..3 of user A use streams 0..2,
/// user B uses 3..5; anything above is free for auxiliary draws.
namespace stream {
inline constexpr std::uint64_t user_a_slot1 = 0;
inline constexpr std::uint64_t user_b_slot1 = 3;
inline constexpr std::uint64_t auxiliary = 16;
}  // namespace stream

/// Counter-based generator: a SplitMix64 sequence whose starting state is a
/// hash of (master seed, trial, stream). Distinct keys give statistically
/// independent streams, so any trial can be generated without the others.
class StreamRng {
 public:
  using result_type = std::uint64_t;

  StreamRng(const SeedSpec& seed, std::uint64_t stream_id);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()();

  /// Uniform double in (0, 1].
  double uniform();

  /// One CN(0,1) draw by Box-Muller.
  cplx complex_normal();

 private:
  std::uint64_t state_;
};

/// i.i.d. CN(0,1) vector of length `dim` drawn from one stream.
CVector sample_cn01(int dim, const SeedSpec& seed, std::uint64_t stream_id);

/// Channels of both users over the three slots of one transmission block.
struct ChannelTriple {
  std::array<CVector, 3> h;  // user A, slots 1..3
  std::array<CVector, 3> g;  // user B, slots 1..3
};

/// h_j = sqrtA * w_j and g_j = sqrtB * v_j with six disjoint white streams.
ChannelTriple sample_triple(const CMatrix& sqrt_a, const CMatrix& sqrt_b, const SeedSpec& seed);

}  // namespace samat

#endif  // SAMAT_CHANNEL_HPP
