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

#include <doctest.h>

#include <bitset>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "nsat/error.hpp"
#include "nsat/rng.hpp"

using namespace nsat;

namespace {

// Cell-by-cell model of the hardware registers.
struct RegisterModel {
  std::bitset<43> lfsr;
  std::bitset<37> casr;

  void step() {
    std::bitset<43> l;
    for (int i = 1; i < 43; ++i) l[i] = lfsr[i - 1];
    l[0] = lfsr[42] ^ lfsr[40] ^ lfsr[19] ^ lfsr[0];
    lfsr = l;
    std::bitset<37> c;
    for (int i = 0; i < 37; ++i) {
      const bool left = i > 0 && casr[i - 1];
      const bool right = i < 36 && casr[i + 1];
      c[i] = left ^ right ^ (i == 28 && casr[i]);
    }
    casr = c;
  }
  std::uint32_t output() const {
    std::uint32_t out = 0;
    for (int i = 0; i < 32; ++i) {
      if (lfsr[i] ^ casr[i + 5]) out |= 1u << i;
    }
    return out;
  }
};

RegisterModel model_of(const RngStream& s) {
  std::istringstream in(s.serialize());
  std::string backend;
  unsigned long long seed, seq, s0, s1;
  in >> backend >> std::hex >> seed >> seq >> s0 >> s1;
  return {std::bitset<43>(s0), std::bitset<37>(s1)};
}

double sample_std(RngStream& rng, ShiftExponent sigma, int n, double* mean) {
  double sum = 0, sq = 0;
  for (int i = 0; i < n; ++i) {
    const double v = rng.next_normal(sigma);
    sum += v;
    sq += v * v;
  }
  *mean = sum / n;
  return std::sqrt(sq / n - *mean * *mean);
}

}  // namespace

TEST_CASE("streams are reproducible and sequence ids separate them") {
  for (RngBackend b : {RngBackend::kSoftware, RngBackend::kHardware}) {
    RngStream a(b, 42, 3), c(b, 42, 3), d(b, 42, 4);
    bool differs = false;
    for (int i = 0; i < 1000; ++i) {
      const std::uint32_t u = a.next_uniform();
      REQUIRE(u == c.next_uniform());
      const std::uint32_t v = d.next_uniform();
      if (i < 16 && u != v) differs = true;
    }
    CHECK(differs);
  }
}

TEST_CASE("serialized state continues identically") {
  for (RngBackend b : {RngBackend::kSoftware, RngBackend::kHardware}) {
    RngStream a(b, 7, 1);
    for (int i = 0; i < 123; ++i) a.next_normal(ShiftExponent(3));
    RngStream c = RngStream::deserialize(a.serialize());
    CHECK(c == a);
    for (int i = 0; i < 1000; ++i) {
      REQUIRE(a.next_normal(ShiftExponent(5)) == c.next_normal(ShiftExponent(5)));
      REQUIRE(a.next_uniform() == c.next_uniform());
    }
  }
  CHECK_THROWS_AS(RngStream::deserialize("software zz"), ConfigError);
}

TEST_CASE("hardware registers follow the documented feedback") {
  RngStream s(RngBackend::kHardware, 99, 0);
  RegisterModel m = model_of(s);
  for (int i = 0; i < 10000; ++i) {
    m.step();
    REQUIRE(s.next_uniform() == m.output());
  }
  std::uint64_t l = 1, c = 1;
  std::bitset<43> lb(1);
  for (int i = 0; i < 200; ++i) {
    l = hw::lfsr_step(l);
    c = hw::casr_step(c);
  }
  RegisterModel r{lb, std::bitset<37>(1)};
  for (int i = 0; i < 200; ++i) r.step();
  CHECK(l == r.lfsr.to_ullong());
  CHECK(c == r.casr.to_ullong());
}

TEST_CASE("normal draws") {
  RngStream rng(RngBackend::kSoftware, 5, 0);
  for (int i = 0; i < 100; ++i) REQUIRE(rng.next_normal(kShiftOff) == 0);
  for (RngBackend b : {RngBackend::kSoftware, RngBackend::kHardware}) {
    RngStream r(b, 5, 2);
    const int n = 1000000;
    double mean = 0;
    const double sd = sample_std(r, ShiftExponent(6), n, &mean);
    CHECK(std::abs(mean) < 4 * 64.0 / std::sqrt(n));
    CHECK(std::abs(sd / 64.0 - 1) < 0.02);
  }
}

TEST_CASE("blank-out keep rate is (prob + 1) / 16") {
  RngStream rng(RngBackend::kSoftware, 3, 0);
  for (int i = 0; i < 1000; ++i) REQUIRE(rng.blankout_keep(15));
  for (RngBackend b : {RngBackend::kSoftware, RngBackend::kHardware}) {
    RngStream r(b, 3, 1);
    for (int prob = 0; prob < 15; ++prob) {
      const int n = 100000;
      int kept = 0;
      for (int i = 0; i < n; ++i) kept += r.blankout_keep(prob) ? 1 : 0;
      const double p = (prob + 1) / 16.0;
      CHECK(std::abs(kept / static_cast<double>(n) - p) <= 4 * std::sqrt(p * (1 - p) / n));
    }
  }
}

TEST_CASE("backend names") {
  CHECK(rng_backend_from_string("software") == RngBackend::kSoftware);
  CHECK(rng_backend_from_string("hardware") == RngBackend::kHardware);
  CHECK(to_string(RngBackend::kHardware) == "hardware");
  CHECK_THROWS_AS(rng_backend_from_string("quantum"), ConfigError);
}
