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

#ifndef NSAT_ZOO_ERBM_HPP_
#define NSAT_ZOO_ERBM_HPP_

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "nsat/config.hpp"
#include "nsat/zoo/reference.hpp"

namespace nsat::zoo {

// 4x4 bars (vertical lines) and stripes (horizontal lines): 16 pixels
// followed by two class units (bars, stripes). All 32 line combinations are
// returned, so the blank and the full image each appear once per class.
inline constexpr int kBarsPixels = 16;
std::vector<std::array<std::uint8_t, 18>> bars_and_stripes();

// Event-driven restricted Boltzmann machine sampled through blank-out
// synapses and trained with a symmetric, modulated STDP window: the
// modulator is +1 while the visible units are clamped to data and -1 while
// the network runs free.
struct ErbmOptions {
  int visible = 18;
  int hidden = 100;
  int epochs = 50;
  Tick data_ticks = 400;
  Tick model_ticks = 400;
  Tick test_ticks = 2000;
  int refractory = 40;  // must exceed the STDP window
  int window = 35;
  int rounding_bits = 0;   // eCD steps of one weight unit
  int noise_exp = 12;      // membrane noise, 2^noise_exp counts
  int init_scale = 4;      // max |w| of the initial weights
  int drive_on = 8;        // data unit weights for the logit(0.98) and
  int drive_off = -12;     // logit(1e-5) ends, tuned on bars and stripes
  std::uint64_t seed = kDefaultSeed;
};

struct ErbmLayout {
  std::uint32_t visible = 18;
  std::uint32_t hidden = 100;
  std::uint32_t n_internal() const { return visible + hidden; }
  std::uint32_t on_base() const { return n_internal(); }        // excitatory data units
  std::uint32_t off_base() const { return on_base() + visible; }  // inhibitory data units
  std::uint32_t mod_plus() const { return off_base() + visible; }
  std::uint32_t mod_minus() const { return mod_plus() + 1; }
  std::uint32_t n_external() const { return 2 * visible + 2; }
};

struct ErbmNetwork {
  SimulationConfig config;
  ErbmLayout layout;
  // Record index pairs (visible -> hidden, hidden -> visible) sharing one
  // weight.
  std::vector<std::pair<std::size_t, std::size_t>> shared;
};

// Throws ConfigError unless refractory > window.
ErbmNetwork build_erbm(const ErbmOptions& options);

// Drive (clamp) events for one phase over [t0, t1): every listed visible
// unit gets its excitatory or inhibitory data unit firing each tick.
std::vector<EventRecord> erbm_clamp_events(const ErbmLayout& layout,
                                           const std::array<std::uint8_t, 18>& pattern,
                                           int clamped_units, Tick t0, Tick t1);

struct ErbmEpoch {
  int epoch = 0;
  int errors = 0;  // misclassified patterns out of 32
  bool symmetric = true;
  std::uint64_t synops = 0;
};

struct ErbmResult {
  std::vector<ErbmEpoch> epochs;
  std::vector<TracePoint> trace;
  bool symmetric_every_epoch = true;
};

ErbmResult run_erbm(const ErbmOptions& options,
                    const std::function<void(const ErbmEpoch&)>& progress = {});

}  // namespace nsat::zoo

#endif  // NSAT_ZOO_ERBM_HPP_
