// Copyright 2026 The mnlrank Authors
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

#ifndef MNLRANK_RANDOM_H_
#define MNLRANK_RANDOM_H_

#include <cstdint>

namespace mnlrank {

// PCG32 (XSH-RR output over a 64-bit LCG), O'Neill's reference
// parameterization. Self-contained so that trial seeds reproduce bit-for-bit
// on every platform; std:: engines and distributions do not.
class Pcg32 {
 public:
  using result_type = uint32_t;

  Pcg32() : Pcg32(0x853c49e6748fea9bULL, 0xda3e39cb94b95bdbULL) {}
  Pcg32(uint64_t seed, uint64_t stream) { Seed(seed, stream); }

  void Seed(uint64_t seed, uint64_t stream) {
    state_ = 0;
    inc_ = (stream << 1u) | 1u;
    Next();
    state_ += seed;
    Next();
  }

  uint32_t Next() {
    const uint64_t old = state_;
    state_ = old * 6364136223846793005ULL + inc_;
    const auto xorshifted = static_cast<uint32_t>(((old >> 18u) ^ old) >> 27u);
    const auto rot = static_cast<uint32_t>(old >> 59u);
    return (xorshifted >> rot) | (xorshifted << ((-rot) & 31u));
  }

  uint64_t Next64() {
    const uint64_t hi = Next();
    return (hi << 32u) | Next();
  }

  // Unbiased integer in [0, bound). bound must be positive. Lemire's
  // multiply-shift with rejection; divides only on the rare slow path.
  uint32_t Bounded(uint32_t bound) {
    uint64_t m = uint64_t{Next()} * bound;
    auto low = static_cast<uint32_t>(m);
    if (low < bound) {
      const uint32_t threshold = (-bound) % bound;
      while (low < threshold) {
        m = uint64_t{Next()} * bound;
        low = static_cast<uint32_t>(m);
      }
    }
    return static_cast<uint32_t>(m >> 32);
  }

  // Uniform double in [0, 1) with 53 random bits.
  double Uniform() { return static_cast<double>(Next64() >> 11) * 0x1.0p-53; }

  // UniformRandomBitGenerator surface.
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return UINT32_MAX; }
  result_type operator()() { return Next(); }

  bool operator==(const Pcg32&) const = default;

 private:
  uint64_t state_ = 0;
  uint64_t inc_ = 1;
};

// Stream ids used to derive independent generators from one trial seed.
inline constexpr uint64_t kInstanceStream = 1;
inline constexpr uint64_t kAlgorithmStream = 2;
inline constexpr uint64_t kOracleStream = 3;

}  // namespace mnlrank

#endif  // MNLRANK_RANDOM_H_
