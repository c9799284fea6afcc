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

#ifndef NSAT_FABRIC_HPP_
#define NSAT_FABRIC_HPP_

#include <cstdint>
#include <queue>
#include <span>
#include <vector>

#include "nsat/config.hpp"
#include "nsat/dynamics.hpp"
#include "nsat/plasticity.hpp"
#include "nsat/rng.hpp"

namespace nsat {

// A spike packet waiting in a core's ring buffer.
struct Delivery {
  std::uint32_t source;  // index into the destination core's synapse table
  SourceAddress src;
  std::uint64_t seq;     // global insertion counter
};

// Sorts by (source core, source neuron, insertion index).
void deterministic_order(std::vector<Delivery>& deliveries);

struct CoreStats {
  std::uint64_t synops = 0;
  std::uint64_t blanked = 0;
  std::uint64_t spikes = 0;
  std::uint64_t weight_updates = 0;
  std::uint64_t events_delivered = 0;
  friend bool operator==(const CoreStats&, const CoreStats&) = default;
};

struct RunStats {
  Tick ticks = 0;
  std::vector<CoreStats> cores;
  std::uint64_t events_emitted = 0;   // packets routed to a ring buffer
  std::uint64_t events_injected = 0;  // external events accepted
  std::uint64_t events_pending = 0;   // still buffered
  std::uint64_t events_dropped = 0;   // discarded by clear_pending()
  CoreStats total() const;
};

class Simulator;

// Called once per tick after the last barrier, from a single context.
class TickObserver {
 public:
  virtual ~TickObserver() = default;
  virtual void on_tick_end(const Simulator& sim, Tick t) = 0;
};

struct Core {
  std::uint32_t id = 0;
  CoreConfig cfg;
  std::vector<NeuronState> neurons;  // internal neurons only
  SynapseTable table;
  StdpTimers timers;
  RngStream rng;
  std::vector<std::vector<Delivery>> ring;
  std::vector<std::uint32_t> emitted;  // this tick, ascending
  std::vector<std::uint32_t> expired;  // scratch
  CoreStats stats;
  std::vector<WeightUpdate>* update_log = nullptr;
};

class Simulator {
 public:
  explicit Simulator(SimulationConfig cfg);

  const SimulationConfig& config() const { return cfg_; }
  Tick now() const { return now_; }
  std::size_t num_cores() const { return cores_.size(); }

  // Queues external events; they must be sorted by tick, not in the past and
  // addressed to external neurons. Throws ConfigError with the event echoed.
  void inject(std::span<const EventRecord> events);

  // Advances n ticks. threads <= 1 runs every core on the calling thread.
  void run(Tick n, int threads = 1);

  const NeuronState& state(std::size_t core, std::uint32_t neuron) const {
    return cores_[core].neurons[neuron];
  }
  NeuronState& mutable_state(std::size_t core, std::uint32_t neuron) {
    return cores_[core].neurons[neuron];
  }
  // Resets every internal neuron to Xinit and clears refractory counters.
  void reset_states();
  // Drops all buffered and queued events.
  void clear_pending();

  std::span<const WeightWord> weights(std::size_t core) const {
    return cores_[core].table.weights();
  }
  std::span<WeightWord> mutable_weights(std::size_t core) { return cores_[core].table.weights(); }
  // Current weight of the i-th synapse record of a core.
  WeightWord record_weight(std::size_t core, std::size_t record) const {
    return cores_[core].table.weights()[cores_[core].table.record_slot(record)];
  }

  void set_learning(bool on) { learning_ = on; }
  bool learning() const { return learning_; }
  bool learning_active(Tick t) const { return learning_ && cfg_.gate.open(t); }

  // Internal spikes in emission order, appended every tick.
  const std::vector<EventRecord>& spikes() const { return spikes_; }
  void clear_spikes() { spikes_.clear(); }
  void set_record_spikes(bool on) { record_spikes_ = on; }

  void set_observer(TickObserver* obs) { observer_ = obs; }
  void set_update_log(std::size_t core, std::vector<WeightUpdate>* log) {
    cores_[core].update_log = log;
  }

  RunStats stats() const;
  const Core& core(std::size_t c) const { return cores_[c]; }

 private:
  void stage1(Core& core);
  void route();
  void stage2(Core& core);
  void end_tick();

  struct Pending {
    Tick due;
    std::uint64_t seq;
    std::uint16_t core;
    std::uint32_t neuron;
    bool operator>(const Pending& o) const { return due != o.due ? due > o.due : seq > o.seq; }
  };
  struct Route {
    std::uint32_t core;
    std::uint32_t source;
  };

  void enqueue(SourceAddress src, Tick due);

  SimulationConfig cfg_;
  std::vector<Core> cores_;
  // routes_[c][n]: destination cores (ascending) holding fanout of (c, n).
  std::vector<std::vector<std::vector<Route>>> routes_;
  std::priority_queue<Pending, std::vector<Pending>, std::greater<>> external_;
  std::vector<EventRecord> spikes_;
  bool record_spikes_ = true;
  Tick now_ = 0;
  std::uint64_t seq_ = 0;
  std::uint64_t emitted_ = 0;
  std::uint64_t injected_ = 0;
  std::uint64_t dropped_ = 0;
  bool learning_ = false;
  TickObserver* observer_ = nullptr;
};

}  // namespace nsat

#endif  // NSAT_FABRIC_HPP_
