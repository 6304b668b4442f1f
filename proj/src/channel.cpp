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

#include "samat/channel.hpp"

#include <cmath>
#include <numbers>

namespace samat {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

StreamRng::StreamRng(const SeedSpec& seed, std::uint64_t stream_id) {
  std::uint64_t key = mix64(seed.master_seed + kGolden);
  key = mix64(key ^ (seed.trial_index * 0xD1B54A32D192ED03ULL + kGolden));
  key = mix64(key ^ (stream_id * 0x8CB92BA72F3D8DD7ULL + 0x2545F4914F6CDD1DULL));
  state_ = key;
}

StreamRng::result_type StreamRng::operator()() {
  state_ += kGolden;
  return mix64(state_);
}

double StreamRng::uniform() {
  return static_cast<double>(((*this)() >> 11) + 1) * 0x1.0p-53;
}

cplx StreamRng::complex_normal() {
  const double radius = std::sqrt(-std::log(uniform()));
  const double angle = 2.0 * std::numbers::pi * uniform();
  return {radius * std::cos(angle), radius * std::sin(angle)};
}

CVector sample_cn01(int dim, const SeedSpec& seed, std::uint64_t stream_id) {
  if (dim < 0) throw Error(ErrorCode::BadDim, "negative dimension");
  StreamRng rng(seed, stream_id);
  CVector out(dim);
  for (int i = 0; i < dim; ++i) out(i) = rng.complex_normal();
  return out;
}

ChannelTriple sample_triple(const CMatrix& sqrt_a, const CMatrix& sqrt_b, const SeedSpec& seed) {
  if (sqrt_a.rows() != sqrt_a.cols() || sqrt_b.rows() != sqrt_b.cols() ||
      sqrt_a.rows() != sqrt_b.rows())
    throw Error(ErrorCode::DimMismatch, "square roots must be square and of equal size");

  const int dim = static_cast<int>(sqrt_a.rows());
  ChannelTriple out;
  for (std::uint64_t j = 0; j < 3; ++j) {
    out.h[j] = sqrt_a * sample_cn01(dim, seed, stream::user_a_slot1 + j);
    out.g[j] = sqrt_b * sample_cn01(dim, seed, stream::user_b_slot1 + j);
  }
  return out;
}

}  // namespace samat
