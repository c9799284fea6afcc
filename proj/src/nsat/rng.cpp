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

#include "nsat/rng.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "nsat/error.hpp"

namespace nsat {

namespace {

constexpr std::uint64_t kPcgMultiplier = 6364136223846793005ULL;

std::uint64_t splitmix64(std::uint64_t& x) {
  std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint32_t pcg32_next(std::uint64_t& state, std::uint64_t inc) {
  const std::uint64_t old = state;
  state = old * kPcgMultiplier + inc;
  const auto xorshifted = static_cast<std::uint32_t>(((old >> 18u) ^ old) >> 27u);
  const auto rot = static_cast<std::uint32_t>(old >> 59u);
  return std::rotr(xorshifted, static_cast<int>(rot));
}

// 1/sqrt(Var(sum of four uniform bytes)) in Q16: sqrt(4 * (256^2 - 1) / 12)
// = 147.80, 65536 / 147.80 = 443.4.
constexpr std::int64_t kByteSumScaleQ16 = 443;

std::int32_t round_shift(std::int64_t v, int shift) {
  // Rounds v * 2^-shift half away from zero.
  if (shift <= 0) return saturate16(v << (-shift));
  const std::int64_t half = std::int64_t{1} << (shift - 1);
  const std::int64_t mag = ((v < 0 ? -v : v) + half) >> shift;
  return saturate16(v < 0 ? -mag : mag);
}

}  // namespace

std::string_view to_string(RngBackend backend) {
  return backend == RngBackend::kSoftware ? "software" : "hardware";
}

RngBackend rng_backend_from_string(std::string_view name) {
  if (name == "software") return RngBackend::kSoftware;
  if (name == "hardware") return RngBackend::kHardware;
  throw ConfigError("unknown rng backend '" + std::string(name) +
                    "' (expected software or hardware)");
}

namespace hw {

std::uint64_t lfsr_step(std::uint64_t state) {
  const std::uint64_t fb = ((state >> kLfsrTaps[0]) ^ (state >> kLfsrTaps[1]) ^
                            (state >> kLfsrTaps[2]) ^ (state >> kLfsrTaps[3])) &
                           1u;
  return ((state << 1) | fb) & kLfsrMask;
}

std::uint64_t casr_step(std::uint64_t state) {
  const std::uint64_t rule150 = std::uint64_t{1} << kCasrRule150Cell;
  return ((state << 1) ^ (state >> 1) ^ (state & rule150)) & kCasrMask;
}

std::uint32_t combine(std::uint64_t lfsr, std::uint64_t casr) {
  return static_cast<std::uint32_t>(lfsr) ^ static_cast<std::uint32_t>(casr >> 5);
}

}  // namespace hw

RngStream::RngStream(RngBackend backend, std::uint64_t seed, std::uint64_t sequence)
    : backend_(backend), seed_(seed), sequence_(sequence) {
  if (backend_ == RngBackend::kSoftware) {
    // pcg32_srandom_r
    s0_ = 0;
    s1_ = (sequence << 1u) | 1u;
    pcg32_next(s0_, s1_);
    s0_ += seed;
    pcg32_next(s0_, s1_);
  } else {
    std::uint64_t sm = seed ^ (sequence * 0xd1342543de82ef95ULL);
    do {
      s0_ = splitmix64(sm) & hw::kLfsrMask;
    } while (s0_ == 0);
    do {
      s1_ = splitmix64(sm) & hw::kCasrMask;
    } while (s1_ == 0);
  }
}

std::uint32_t RngStream::next_uniform() {
  if (backend_ == RngBackend::kSoftware) return pcg32_next(s0_, s1_);
  s0_ = hw::lfsr_step(s0_);
  s1_ = hw::casr_step(s1_);
  return hw::combine(s0_, s1_);
}

double RngStream::next_unit_open() {
  return (static_cast<double>(next_uniform()) + 1.0) * 0x1.0p-32;
}

std::int32_t RngStream::next_normal(ShiftExponent sigma) {
  if (sigma.off()) return 0;
  if (backend_ == RngBackend::kHardware) {
    const std::uint32_t u = next_uniform();
    const std::int64_t sum = static_cast<std::int64_t>(u & 0xffu) + ((u >> 8) & 0xffu) +
                             ((u >> 16) & 0xffu) + (u >> 24) - 510;
    return round_shift(sum * kByteSumScaleQ16, 16 - sigma.value);
  }
  double z;
  if (has_spare_) {
    z = spare_;
    has_spare_ = false;
  } else {
    const double u1 = next_unit_open();
    const double u2 = next_unit_open();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    z = radius * std::cos(angle);
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
  }
  return saturate16(std::llround(std::ldexp(z, sigma.value)));
}

bool RngStream::blankout_keep(int prob) {
  if (prob >= 15) return true;
  return static_cast<int>(next_uniform() >> 28) <= prob;
}

std::string RngStream::serialize() const {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%s %016llx %016llx %016llx %016llx %d %016llx",
                std::string(to_string(backend_)).c_str(),
                static_cast<unsigned long long>(seed_), static_cast<unsigned long long>(sequence_),
                static_cast<unsigned long long>(s0_), static_cast<unsigned long long>(s1_),
                has_spare_ ? 1 : 0,
                static_cast<unsigned long long>(std::bit_cast<std::uint64_t>(spare_)));
  return buf;
}

RngStream RngStream::deserialize(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string backend;
  unsigned long long seed, sequence, s0, s1, spare;
  int has_spare;
  in >> backend >> std::hex >> seed >> sequence >> s0 >> s1 >> std::dec >> has_spare >>
      std::hex >> spare;
  if (!in) throw ConfigError("malformed rng state '" + std::string(text) + "'");
  RngStream r(rng_backend_from_string(backend), seed, sequence);
  r.s0_ = s0;
  r.s1_ = s1;
  r.has_spare_ = has_spare != 0;
  r.spare_ = std::bit_cast<double>(static_cast<std::uint64_t>(spare));
  return r;
}

}  // namespace nsat
