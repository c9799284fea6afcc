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

#ifndef NSAT_PLASTICITY_HPP_
#define NSAT_PLASTICITY_HPP_

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <vector>

#include "nsat/dynamics.hpp"
#include "nsat/fxp.hpp"
#include "nsat/rng.hpp"

namespace nsat {

enum class KernelMode : std::uint8_t { kLinear, kExponential };

// Piecewise STDP kernel with three segments per side. Causal breakpoints are
// positive tick counts, acausal ones negative.
struct StdpKernel {
  std::array<std::int32_t, 2> tca{16, 36};
  std::array<ShiftExponent, 3> hica{kShiftOff, kShiftOff, kShiftOff};
  std::array<std::int8_t, 3> sica{1, 1, 1};
  std::int32_t slca = 0;
  std::array<std::int32_t, 2> tac{-16, -36};
  std::array<ShiftExponent, 3> hiac{kShiftOff, kShiftOff, kShiftOff};
  std::array<std::int8_t, 3> siac{-1, -1, -1};
  std::int32_t slac = 0;
  KernelMode mode = KernelMode::kLinear;

  std::int32_t window() const { return tca[1] > -tac[1] ? tca[1] : -tac[1]; }
  void validate() const;

  friend bool operator==(const StdpKernel&, const StdpKernel&) = default;
};

struct KernelValue {
  std::int8_t sign = 0;
  ShiftExponent level = kShiftOff;

  bool zero() const { return sign == 0 || level.off(); }
  friend bool operator==(const KernelValue&, const KernelValue&) = default;
};

// dt = t_post - t_pre. Zero for dt == 0 and |dt| beyond the window.
KernelValue kernel_eval(const StdpKernel& kern, Tick dt);

// sign * (x_m <> level); zero when the kernel value is zero.
std::int32_t modulated_eligibility(KernelValue kv, std::int32_t x_m);

enum class LearningRule : std::uint8_t {
  kStdp,   // pair-based, timing dependent
  kState,  // on every pre spike: siac0 * (x_m <> hiac0), no timing
};

struct LearningGroup {
  LearningRule rule = LearningRule::kStdp;
  StdpKernel kernel;
  std::vector<std::uint8_t> plastic;  // per target component
  std::int32_t rounding_bits = 0;
  std::int32_t wmin = kWeightMin;
  std::int32_t wmax = kWeightMax;
  // Updates only pass while gate_lo <= x[gate_component] <= gate_hi.
  bool gate_enabled = false;
  std::int32_t gate_component = 0;
  std::int32_t gate_lo = kStateMin;
  std::int32_t gate_hi = kStateMax;

  static LearningGroup defaults(int k);
  void validate(int k) const;
  // Timer length needed by this group; 0 for rules without timing.
  std::int32_t window() const { return rule == LearningRule::kStdp ? kernel.window() : 0; }

  friend bool operator==(const LearningGroup&, const LearningGroup&) = default;
};

struct SourceAddress {
  std::uint16_t core = 0;
  std::uint32_t neuron = 0;
  friend auto operator<=>(const SourceAddress&, const SourceAddress&) = default;
};

// One connectivity record as stored in config and sidecar files. A tied
// record owns no weight; it reuses the weight slot of record `tie`.
struct SynapseRecord {
  SourceAddress src;
  std::uint32_t dst = 0;
  std::uint8_t component = 0;
  std::int8_t weight = 0;
  bool plastic = false;
  bool tied = false;
  std::uint32_t tie = 0;
  friend bool operator==(const SynapseRecord&, const SynapseRecord&) = default;
};

struct Synapse {
  std::uint32_t target;
  std::uint8_t component;
  bool plastic;
  std::uint32_t slot;
};

// Forward-indexed connectivity of one core: for every source address, the
// ordered list of local targets. There is no reverse map.
class SynapseTable {
 public:
  SynapseTable() = default;

  // core_sizes[c] is the total neuron count of core c, used to size the dense
  // source lookup. Record order is preserved within each source's fanout.
  static SynapseTable build(std::span<const SynapseRecord> records,
                            std::span<const std::uint32_t> core_sizes);

  // Source index or -1 when the address has no fanout on this core.
  std::int32_t find(SourceAddress a) const {
    if (a.core >= lookup_.size() || a.neuron >= lookup_[a.core].size()) return -1;
    return lookup_[a.core][a.neuron];
  }
  std::size_t num_sources() const { return sources_.size(); }
  SourceAddress source(std::size_t i) const { return sources_[i]; }
  std::span<const Synapse> fanout(std::size_t i) const {
    return {synapses_.data() + offsets_[i], synapses_.data() + offsets_[i + 1]};
  }
  bool has_plastic(std::size_t i) const { return has_plastic_[i] != 0; }

  std::span<WeightWord> weights() { return weights_; }
  std::span<const WeightWord> weights() const { return weights_; }
  // Weight slot of the i-th input record.
  std::uint32_t record_slot(std::size_t record) const { return record_slot_[record]; }
  std::size_t num_records() const { return record_slot_.size(); }

 private:
  std::vector<SourceAddress> sources_;
  std::vector<std::uint32_t> offsets_;
  std::vector<Synapse> synapses_;
  std::vector<std::uint8_t> has_plastic_;
  std::vector<WeightWord> weights_;
  std::vector<std::uint32_t> record_slot_;
  std::vector<std::vector<std::int32_t>> lookup_;
};

struct WeightUpdate {
  Tick tick;
  std::uint32_t slot;
  std::uint32_t target;
  std::int32_t dw;  // after rounding, before clipping
  WeightWord w;     // value after the update
  bool causal;
};

// Everything the update rules read or write on one core.
struct PlasticityContext {
  SynapseTable* table = nullptr;
  std::span<const NeuronState> post;
  std::span<const ParamGroup> groups;
  std::span<const std::uint8_t> group_of;
  std::span<const LearningGroup> lgroups;
  std::span<const std::int16_t> lgroup_of;  // -1: not plastic
  RngStream* rng = nullptr;
  std::vector<WeightUpdate>* log = nullptr;  // optional
  std::uint64_t updates = 0;
};

// Acausal pass (STDP groups) and state-rule pass for a pre spike arriving at
// `now` from source index `source`.
void on_pre_spike(PlasticityContext& ctx, std::uint32_t source, Tick now);

// Causal pass for the pre spike of `source` that arrived at `t_pre`, run when
// its timer expires at `now` or a newer pre spike arrives first.
void on_timer_event(PlasticityContext& ctx, std::uint32_t source, Tick t_pre, Tick now);

// Per-source pre-spike bookkeeping: one arrival tick and one timer each.
class StdpTimers {
 public:
  StdpTimers() = default;
  StdpTimers(std::size_t sources, std::int32_t window);

  std::int32_t window() const { return window_; }
  Tick last_arrival(std::uint32_t s) const { return last_[s]; }
  // Timer of s is pending and expires no earlier than now.
  bool pending(std::uint32_t s, Tick now) const { return expiry_[s] != kNever && expiry_[s] >= now; }

  void restart(std::uint32_t s, Tick now);
  void cancel(std::uint32_t s) { expiry_[s] = kNever; }
  // Sources whose timers expire exactly at `now`, in ascending source order.
  // They are cancelled as a side effect.
  void take_expired(Tick now, std::vector<std::uint32_t>& out);

 private:
  std::int32_t window_ = 0;
  std::vector<Tick> last_;
  std::vector<Tick> expiry_;
  std::vector<std::vector<std::uint32_t>> wheel_;
};

}  // namespace nsat

#endif  // NSAT_PLASTICITY_HPP_
