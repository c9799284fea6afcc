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

#ifndef NSAT_CONFIG_HPP_
#define NSAT_CONFIG_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "nsat/dynamics.hpp"
#include "nsat/plasticity.hpp"
#include "nsat/rng.hpp"

namespace nsat {

inline constexpr std::uint64_t kDefaultSeed = 0x5eed;
inline constexpr int kMaxGroups = 8;

// A spike address with a tick. For injected events the event is delivered at
// tick + delay; an internal spike emitted at tick t arrives at t + 1 + delay.
struct EventRecord {
  std::uint32_t tick = 0;
  std::uint16_t core = 0;
  std::uint32_t neuron = 0;
  std::uint16_t delay = 0;
  friend bool operator==(const EventRecord&, const EventRecord&) = default;
};

// Learning runs only on ticks with (t mod period) >= off_ticks.
struct LearningGate {
  Tick period = 0;
  Tick off_ticks = 0;
  bool open(Tick t) const { return period <= 0 || t % period >= off_ticks; }
  friend bool operator==(const LearningGate&, const LearningGate&) = default;
};

struct MonitorSpec {
  enum class Kind : std::uint8_t { kSpikes, kStates, kWeights, kStats };
  Kind what = Kind::kSpikes;
  std::int32_t core = -1;                // -1: every core
  std::vector<std::uint32_t> neurons;    // empty: every internal neuron
  std::vector<std::int32_t> components;  // empty: every component
  Tick every = 1;
  friend bool operator==(const MonitorSpec&, const MonitorSpec&) = default;
};

struct CoreConfig {
  std::uint32_t n_internal = 0;
  std::uint32_t n_external = 0;
  int k = 1;
  std::vector<ParamGroup> param_groups;
  std::vector<LearningGroup> learning_groups;
  std::vector<std::uint8_t> group_of;    // per internal neuron
  std::vector<std::int16_t> lgroup_of;   // per internal neuron, -1 for none
  std::vector<std::uint16_t> delay_of;   // per neuron (internal then external)
  std::vector<SynapseRecord> synapses;   // records whose targets live here
  std::string synapse_file;              // sidecar name used when saving

  std::uint32_t size() const { return n_internal + n_external; }
  friend bool operator==(const CoreConfig&, const CoreConfig&) = default;
};

struct SimulationConfig {
  Tick ticks = 1;
  RngBackend rng = RngBackend::kSoftware;
  std::uint64_t seed = kDefaultSeed;
  bool learning = false;
  LearningGate gate;
  std::int32_t max_delay = 64;
  std::vector<CoreConfig> cores;
  std::vector<EventRecord> external_events;
  std::string events_file;  // sidecar name used when saving
  std::vector<MonitorSpec> monitors;
  std::string output_dir;

  // Checks cross references and dimensions. Throws ConfigError.
  void validate() const;

  friend bool operator==(const SimulationConfig&, const SimulationConfig&) = default;
};

// Fills group_of, lgroup_of and delay_of with defaults for the current
// neuron counts where they are empty.
void fill_defaults(CoreConfig& core);

}  // namespace nsat

#endif  // NSAT_CONFIG_HPP_
