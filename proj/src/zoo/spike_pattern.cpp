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

#include "nsat/zoo/spike_pattern.hpp"

#include <algorithm>

#include "nsat/error.hpp"
#include "nsat/fabric.hpp"
#include "nsat/zoo/common.hpp"

namespace nsat::zoo {

namespace {

constexpr std::uint64_t kPatternStream = 301;
constexpr std::uint64_t kNoiseStream = 302;
constexpr std::uint64_t kWeightStream = 303;

// Events of every input over [t0, t1) at the common rate.
void noise(std::vector<EventRecord>& out, const SpikePatternOptions& o, std::uint32_t base,
           Tick t0, Tick t1, RngStream& rng) {
  std::vector<std::uint32_t> ids(static_cast<std::size_t>(o.inputs));
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = base + static_cast<std::uint32_t>(i);
  const std::vector<double> rates(ids.size(), o.rate_hz);
  poisson_events(out, 0, ids, rates, t0, t1, rng);
}

// Lays out gap, pattern, gap, pattern ... over [t0, t1) and returns onsets.
std::vector<Tick> schedule(std::vector<EventRecord>& out, const SpikePatternOptions& o,
                           const std::vector<EventRecord>& pattern, std::uint32_t base, Tick t0,
                           Tick t1, RngStream& rng) {
  std::vector<Tick> onsets;
  Tick t = t0;
  while (t < t1) {
    const Tick gap = o.gap_min + static_cast<Tick>(rng.next_uniform() %
                                                    static_cast<std::uint32_t>(o.gap_max - o.gap_min + 1));
    const Tick stop = std::min(t + gap, t1);
    noise(out, o, base, t, stop, rng);
    t = stop;
    if (t + o.pattern_ticks > t1) {
      noise(out, o, base, t, t1, rng);
      break;
    }
    onsets.push_back(t);
    for (const EventRecord& e : pattern) {
      out.push_back({static_cast<std::uint32_t>(t + e.tick), 0, e.neuron, 0});
    }
    t += o.pattern_ticks;
  }
  return onsets;
}

}  // namespace

ParamGroup spike_pattern_group(const SpikePatternOptions& o) {
  ParamGroup g = ParamGroup::defaults(4);
  g.A = exps_from_source_major({-4, 0, -16, -16,   //
                                -16, 0, -16, 0,    //
                                -16, -16, -8, -9,  //
                                -16, -16, -16, 0},
                               4);
  g.sA = signs_from_source_major({-1, 1, 1, 1,    //
                                  1, -1, 1, 1,    //
                                  1, 1, -1, -1,   //
                                  1, 1, 1, -1},
                                 4);
  g.b = words({0, -1216, 0, 5});
  g.theta[0] = o.theta;
  g.XspikeIncrVal = words({0, 0, 1024, 0});
  g.XresetOn = {1, 0, 0, 0};
  g.Xreset = words({0, 32767, 32767, 32767});
  g.Xthlo = words({0, -2, -32767, -32767});
  g.Xthup = words({32767, 8, 32767, 32767});
  g.Wgain[0] = ShiftExponent(o.weight_gain);
  g.refractory = o.refractory;
  g.modulator = 3;
  return g;
}

SpikePatternTask build_spike_pattern(const SpikePatternOptions& o) {
  if (o.inputs < 1 || o.outputs < 1 || o.pattern_ticks < 1 || o.gap_min < 1 ||
      o.gap_max < o.gap_min || o.train_ticks < 0 || o.test_ticks < 1) {
    throw ConfigError("spike_pattern: sizes and durations must be positive");
  }
  if (o.init_max < 0 || o.init_max > kWeightMax) {
    throw ConfigError("spike_pattern: init_max must be in [0, 127]");
  }
  const auto n_out = static_cast<std::uint32_t>(o.outputs);
  const auto n_in = static_cast<std::uint32_t>(o.inputs);

  CoreConfig core;
  core.k = 4;
  core.n_internal = n_out;
  core.n_external = n_in;
  core.param_groups = {spike_pattern_group(o)};
  LearningGroup lg = LearningGroup::defaults(4);
  lg.rule = LearningRule::kState;
  lg.kernel.hiac = {ShiftExponent(o.learn_shift), ShiftExponent(4), ShiftExponent(0)};
  lg.kernel.hica = {ShiftExponent(2), ShiftExponent(0), ShiftExponent(-2)};
  lg.kernel.siac = {1, 1, 1};
  lg.plastic = {1, 0, 0, 0};
  lg.rounding_bits = o.rounding_bits;
  lg.wmin = 0;
  core.learning_groups = {lg};
  fill_defaults(core);

  RngStream wrng(RngBackend::kSoftware, o.seed, kWeightStream);
  for (std::uint32_t i = 0; i < n_in; ++i) {
    for (std::uint32_t j = 0; j < n_out; ++j) {
      SynapseRecord r;
      r.src = {0, n_out + i};
      r.dst = j;
      r.weight = static_cast<std::int8_t>(wrng.next_uniform() %
                                          static_cast<std::uint32_t>(o.init_max + 1));
      r.plastic = true;
      core.synapses.push_back(r);
    }
  }

  SpikePatternTask task;
  RngStream prng(RngBackend::kSoftware, o.seed, kPatternStream);
  std::vector<EventRecord> pattern;
  noise(pattern, o, n_out, 0, o.pattern_ticks, prng);

  RngStream nrng(RngBackend::kSoftware, o.seed, kNoiseStream);
  SimulationConfig& cfg = task.config;
  task.test_start = o.train_ticks;
  task.train_onsets = schedule(cfg.external_events, o, pattern, n_out, 0, o.train_ticks, nrng);
  task.test_onsets = schedule(cfg.external_events, o, pattern, n_out, o.train_ticks,
                              o.train_ticks + o.test_ticks, nrng);
  sort_events(cfg.external_events);
  cfg.seed = o.seed;
  cfg.ticks = o.train_ticks + o.test_ticks;
  cfg.learning = true;
  cfg.cores.push_back(std::move(core));
  cfg.validate();
  return task;
}

SpikePatternScore score_spike_pattern(const SpikePatternTask& task,
                                      const SpikePatternOptions& o,
                                      const std::vector<EventRecord>& spikes) {
  SpikePatternScore s;
  const auto n_out = static_cast<std::size_t>(o.outputs);
  std::vector<std::uint64_t> inside(n_out, 0);
  s.spikes.assign(n_out, 0);
  std::vector<std::uint8_t> hit(task.test_onsets.size(), 0);
  for (const EventRecord& e : spikes) {
    const Tick t = e.tick;
    if (t < task.test_start || e.neuron >= n_out) continue;
    ++s.spikes[e.neuron];
    auto it = std::upper_bound(task.test_onsets.begin(), task.test_onsets.end(), t);
    if (it == task.test_onsets.begin()) continue;
    --it;
    if (t < *it + o.pattern_ticks + o.window_tail) {
      ++inside[e.neuron];
      hit[static_cast<std::size_t>(it - task.test_onsets.begin())] = 1;
    }
  }
  for (std::size_t j = 0; j < n_out; ++j) {
    s.in_window_fraction.push_back(
        s.spikes[j] == 0 ? 0.0 : static_cast<double>(inside[j]) / static_cast<double>(s.spikes[j]));
  }
  s.presentations = task.test_onsets.size();
  s.presentations_hit = static_cast<std::size_t>(std::count(hit.begin(), hit.end(), 1));
  return s;
}

SpikePatternScore run_spike_pattern(const SpikePatternOptions& o) {
  const SpikePatternTask task = build_spike_pattern(o);
  Simulator sim(task.config);
  sim.set_learning(true);
  sim.run(task.test_start);
  sim.set_learning(false);
  sim.run(task.config.ticks - task.test_start);
  return score_spike_pattern(task, o, sim.spikes());
}

}  // namespace nsat::zoo
