// Copyright 2026 The nsat-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NSAT_FXP_HPP_
#define NSAT_FXP_HPP_

// Fixed-point kernel: power-of-two shifts, saturation, clipping and
// randomized rounding. Everything here is multiplier-free integer code.

#include <cstdint>
#include <limits>
#include <span>

#include "nsat/error.hpp"

namespace nsat {

using StateWord = std::int16_t;
using WeightWord = std::int8_t;

inline constexpr std::int32_t kStateMin = std::numeric_limits<StateWord>::min();
inline constexpr std::int32_t kStateMax = std::numeric_limits<StateWord>::max();
inline constexpr std::int32_t kWeightMin = std::numeric_limits<WeightWord>::min();
inline constexpr std::int32_t kWeightMax = std::numeric_limits<WeightWord>::max();

// Log2 scale factor stored in five bits. -16 is the OFF code.
struct ShiftExponent {
  std::int8_t value = -16;

  static constexpr std::int8_t kMin = -16;
  static constexpr std::int8_t kMax = 15;
  static constexpr std::int8_t kOff = -16;

  constexpr ShiftExponent() = default;
  constexpr explicit ShiftExponent(int v) : value(static_cast<std::int8_t>(v)) {}

  constexpr bool off() const { return value == kOff; }
  friend constexpr bool operator==(ShiftExponent, ShiftExponent) = default;
};

inline constexpr ShiftExponent kShiftOff{ShiftExponent::kOff};

constexpr std::int32_t saturate16(std::int64_t x) {
  if (x < kStateMin) return kStateMin;
  if (x > kStateMax) return kStateMax;
  return static_cast<std::int32_t>(x);
}

constexpr std::int32_t sign(std::int32_t x) { return (x > 0) - (x < 0); }

// a >= 0: x << a, saturated to 16 bits.
// a <  0: sign(x) * (|x| >> -a), i.e. division rounding toward zero.
constexpr std::int32_t diamond(std::int32_t a, std::int32_t x) {
  if (a >= 0) {
    return saturate16(static_cast<std::int64_t>(x) * (std::int64_t{1} << a));
  }
  const std::int32_t mag = (x < 0 ? -x : x) >> (-a);
  return x < 0 ? -mag : mag;
}

constexpr std::int32_t diamond(ShiftExponent a, std::int32_t x) { return diamond(a.value, x); }

// diamond() whose underflow to zero is replaced by a unit step carrying the
// sign of x. Combined with a negative coupling sign this guarantees that a
// leaking component reaches its resting value of 0.
constexpr std::int32_t diamonddiamond(std::int32_t a, std::int32_t x) {
  const std::int32_t y = diamond(a, x);
  if (y == 0 && x != 0) return sign(x);
  return y;
}

constexpr std::int32_t diamonddiamond(ShiftExponent a, std::int32_t x) {
  return diamonddiamond(a.value, x);
}

inline std::int32_t clip(std::int32_t x, std::int32_t lo, std::int32_t hi) {
  if (lo > hi) throw ConfigError("clip: lower bound exceeds upper bound");
  return x < lo ? lo : (x > hi ? hi : x);
}

// Unchecked variant for hot loops whose bounds were validated up front.
constexpr std::int32_t clamp_unchecked(std::int32_t x, std::int32_t lo, std::int32_t hi) {
  return x < lo ? lo : (x > hi ? hi : x);
}

// out_i = sat16( sum_j sA_ij * (A_ij <><> x_j) ), A and sA row-major k x k.
// Entries equal to the OFF code contribute exactly zero.
void shift_matvec(std::span<const ShiftExponent> a, std::span<const std::int8_t> sa,
                  std::span<const StateWord> x, std::span<StateWord> out);

// Interprets the r low bits of dw as the probability (in 1/2^r units) of
// rounding the arithmetic shift dw >> r up by one. `draw` is a uniform
// 32-bit random word; only its top r bits are consumed.
constexpr std::int32_t randomized_round(std::int32_t dw, int r, std::uint32_t draw) {
  if (r <= 0) return dw;
  const std::int32_t base = dw >> r;  // arithmetic: floor division
  const std::uint32_t p = static_cast<std::uint32_t>(dw) & ((1u << r) - 1u);
  const std::uint32_t u = draw >> (32 - r);
  return base + (u < p ? 1 : 0);
}

}  // namespace nsat

#endif  // NSAT_FXP_HPP_
