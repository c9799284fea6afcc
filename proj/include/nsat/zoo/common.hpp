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

#ifndef NSAT_ZOO_COMMON_HPP_
#define NSAT_ZOO_COMMON_HPP_

#include <cstdint>
#include <initializer_list>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nsat/config.hpp"
#include "nsat/dynamics.hpp"
#include "nsat/rng.hpp"

namespace nsat::zoo {

// One tick is one millisecond when rates are given in Hz.
inline constexpr double kTicksPerSecond = 1000.0;

// Experiment selector used by the zoo tool: "mnn:tonic", "neural_field:bump",
// "erbp", "erbm", "spike_pattern". Knobs are experiment specific integers
// (for example "hidden", "train", "epochs", "ticks").
struct ExperimentSpec {
  std::string name;
  std::map<std::string, std::int64_t> knobs;
  std::uint64_t seed = kDefaultSeed;

  std::int64_t knob(std::string_view key, std::int64_t fallback) const;
  static ExperimentSpec parse(std::string_view text);  // "name[,key=value...]"
};

// Parameter matrices in the published tables are laid out with the row
// indexing the source component. These helpers return them target-major.
std::vector<ShiftExponent> exps_from_source_major(std::initializer_list<int> a, int k);
std::vector<std::int8_t> signs_from_source_major(std::initializer_list<int> s, int k);

std::vector<StateWord> words(std::initializer_list<int> v);
std::vector<ShiftExponent> exps(std::initializer_list<int> v);

// Bernoulli-per-tick spike train for every (neuron, rate) pair over
// [t0, t1). Events are appended and the result is sorted by tick, then
// neuron. Rates are in Hz.
void poisson_events(std::vector<EventRecord>& out, std::uint16_t core,
                    std::span<const std::uint32_t> neurons, std::span<const double> rates_hz,
                    Tick t0, Tick t1, RngStream& rng);

// Spikes every `period` ticks in [t0, t1) starting at t0 + phase.
void regular_events(std::vector<EventRecord>& out, std::uint16_t core, std::uint32_t neuron,
                    Tick period, Tick t0, Tick t1, Tick phase = 0);

void sort_events(std::vector<EventRecord>& events);

// Uniform draw in [0, 1) from a stream, portable across platforms.
double uniform01(RngStream& rng);

// Spike ticks of one neuron, ascending.
std::vector<Tick> spike_ticks(std::span<const EventRecord> spikes, std::uint16_t core,
                              std::uint32_t neuron);

}  // namespace nsat::zoo

#endif  // NSAT_ZOO_COMMON_HPP_
