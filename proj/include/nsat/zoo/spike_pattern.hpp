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

#ifndef NSAT_ZOO_SPIKE_PATTERN_HPP_
#define NSAT_ZOO_SPIKE_PATTERN_HPP_

#include <cstdint>
#include <vector>

#include "nsat/config.hpp"

namespace nsat::zoo {

// Membrane-gated plasticity on every input spike:
//   x0 membrane, x1 = clip(x0 - V_lth, -2, 8) (LTD/LTP level),
//   x2 calcium (+1024 per output spike), x3 = x1 + eta_h - x2 / 512,
// and each input spike changes its weight by x3 (x3 is the modulator).
struct SpikePatternOptions {
  int inputs = 100;
  int outputs = 5;
  double rate_hz = 10;        // every input, inside and outside the pattern
  Tick pattern_ticks = 50;
  Tick gap_min = 50;          // noise between presentations
  Tick gap_max = 100;
  Tick train_ticks = 100000;
  Tick test_ticks = 10000;
  StateWord theta = 1250;
  int weight_gain = 3;        // Wgain of the membrane
  int init_max = 10;          // initial weights uniform in [0, init_max]
  int learn_shift = 1;        // hiac0
  int rounding_bits = 4;
  int refractory = 5;
  Tick window_tail = 16;      // membrane time constant, counted in the window
  std::uint64_t seed = kDefaultSeed;
};

struct SpikePatternTask {
  SimulationConfig config;          // training and test events, learning gated off at test
  std::vector<Tick> train_onsets;   // pattern start ticks
  std::vector<Tick> test_onsets;
  Tick test_start = 0;
};

ParamGroup spike_pattern_group(const SpikePatternOptions& options);
SpikePatternTask build_spike_pattern(const SpikePatternOptions& options = {});

struct SpikePatternScore {
  std::vector<double> in_window_fraction;   // per output, spikes inside windows
  std::vector<std::uint64_t> spikes;        // per output, test spikes
  std::size_t presentations = 0;
  std::size_t presentations_hit = 0;        // with at least one output spike
};

SpikePatternScore score_spike_pattern(const SpikePatternTask& task,
                                      const SpikePatternOptions& options,
                                      const std::vector<EventRecord>& spikes);

// Builds, trains (learning on until test_start) and scores the test phase.
SpikePatternScore run_spike_pattern(const SpikePatternOptions& options = {});

}  // namespace nsat::zoo

#endif  // NSAT_ZOO_SPIKE_PATTERN_HPP_
