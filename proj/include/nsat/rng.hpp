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

#ifndef NSAT_RNG_HPP_
#define NSAT_RNG_HPP_

#include <cstdint>
#include <string>
#include <string_view>

#include "nsat/fxp.hpp"

namespace nsat {

enum class RngBackend : std::uint8_t { kSoftware, kHardware };

std::string_view to_string(RngBackend backend);
RngBackend rng_backend_from_string(std::string_view name);

// Register layout of the hardware backend. The LFSR is a Fibonacci register
// whose feedback bit is the XOR of the tap bits; the CASR is a null-boundary
// rule 90 automaton with a single rule 150 cell.
namespace hw {
inline constexpr int kLfsrBits = 43;
inline constexpr std::uint64_t kLfsrMask = (std::uint64_t{1} << kLfsrBits) - 1;
// x^43 + x^41 + x^20 + x + 1
inline constexpr int kLfsrTaps[4] = {42, 40, 19, 0};
inline constexpr int kCasrBits = 37;
inline constexpr std::uint64_t kCasrMask = (std::uint64_t{1} << kCasrBits) - 1;
inline constexpr int kCasrRule150Cell = 28;

std::uint64_t lfsr_step(std::uint64_t state);
std::uint64_t casr_step(std::uint64_t state);
// 32-bit output word formed from the two (already stepped) registers.
std::uint32_t combine(std::uint64_t lfsr, std::uint64_t casr);
}  // namespace hw

// A deterministic random stream. Identical (backend, seed, sequence) triples
// produce identical sequences; streams are owned by a single core.
class RngStream {
 public:
  RngStream() : RngStream(RngBackend::kSoftware, 0x853c49e6748fea9bULL, 0) {}
  RngStream(RngBackend backend, std::uint64_t seed, std::uint64_t sequence);

  RngBackend backend() const { return backend_; }
  std::uint64_t seed() const { return seed_; }
  std::uint64_t sequence() const { return sequence_; }

  std::uint32_t next_uniform();

  // Zero-mean draw with standard deviation 2^sigma counts, rounded to an
  // integer and saturated to 16 bits. OFF returns 0 without consuming draws.
  // Software backend: Box-Muller. Hardware backend: sum of the four bytes of
  // one uniform word (central limit approximation), rescaled to unit variance.
  std::int32_t next_normal(ShiftExponent sigma);

  // Bernoulli keep decision with probability (prob + 1) / 16. prob >= 15
  // never drops and consumes no draw.
  bool blankout_keep(int prob);

  // Lossless text form of the full stream state.
  std::string serialize() const;
  static RngStream deserialize(std::string_view text);

  friend bool operator==(const RngStream&, const RngStream&) = default;

 private:
  double next_unit_open();  // uniform in (0, 1]

  RngBackend backend_;
  std::uint64_t seed_;
  std::uint64_t sequence_;
  // software: PCG32 state and increment; hardware: LFSR and CASR registers.
  std::uint64_t s0_ = 0;
  std::uint64_t s1_ = 0;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace nsat

#endif  // NSAT_RNG_HPP_
