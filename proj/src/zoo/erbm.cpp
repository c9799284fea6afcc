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

#include "nsat/zoo/erbm.hpp"

#include <numeric>

#include "nsat/error.hpp"
#include "nsat/fabric.hpp"
#include "nsat/zoo/common.hpp"

namespace nsat::zoo {

namespace {

constexpr std::uint64_t kWeightStream = 201;
constexpr std::uint64_t kOrderStream = 202;

ParamGroup unit_group(const ErbmOptions& o, int bias, bool hidden) {
  ParamGroup g = ParamGroup::defaults(4);
  g.A = exps_from_source_major({-3, -16, -16, -16,  //
                                8, -5, -16, -16,    //
                                -16, -16, -16, -16,  //
                                8, -16, -16, -5},
                               4);
  g.sA = signs_from_source_major({-1, 1, 1, 1,  //
                                  1, -1, 1, 1,  //
                                  1, 1, -1, 1,  //
                                  1, 1, 1, -1},
                                 4);
  g.b = words({bias, 0, 0, 0});
  g.sigma = exps({o.noise_exp, -16, -16, -16});
  g.prob = {15, 7, 15, 15};
  g.Wgain = hidden ? exps({2, 1, 0, 5}) : exps({2, 1, 0, 0});
  g.theta[0] = 0;
  g.XresetOn = {1, 0, 0, 0};
  g.Xreset = words({0, 32767, 32767, 32767});
  g.Xthlo = words({-32768, -32768, -1, -32768});
  g.Xthup = words({32767, 32767, 1, 32767});
  g.refractory = o.refractory;
  g.modulator = 2;
  return g;
}

LearningGroup visible_rule(const ErbmOptions& o) {
  LearningGroup lg = LearningGroup::defaults(4);
  lg.kernel.tca = {o.window, o.window};
  lg.kernel.tac = {-o.window, -o.window};
  lg.kernel.hica = {ShiftExponent(0), ShiftExponent(0), ShiftExponent(0)};
  lg.kernel.hiac = {ShiftExponent(0), ShiftExponent(0), ShiftExponent(0)};
  lg.kernel.sica = {1, 1, 1};
  lg.kernel.siac = {1, 1, 1};
  lg.plastic = {0, 1, 0, 0};
  lg.rounding_bits = o.rounding_bits;
  return lg;
}

// Kept for completeness of the published parameter set; the hidden side
// holds no plastic records because the visible rule already updates each
// shared weight once per spike pair.
LearningGroup hidden_rule(const ErbmOptions& o) {
  LearningGroup lg = LearningGroup::defaults(4);
  lg.kernel.tca = {16, 36};
  lg.kernel.tac = {-16, -36};
  lg.kernel.hica = {ShiftExponent(1), ShiftExponent(0), ShiftExponent(-1)};
  lg.kernel.hiac = {ShiftExponent(1), ShiftExponent(0), ShiftExponent(-1)};
  lg.kernel.siac = {-1, -1, -1};
  lg.rounding_bits = o.rounding_bits;
  return lg;
}

SynapseRecord record(std::uint32_t src, std::uint32_t dst, int comp, int w) {
  SynapseRecord r;
  r.src = {0, src};
  r.dst = dst;
  r.component = static_cast<std::uint8_t>(comp);
  r.weight = static_cast<std::int8_t>(w);
  return r;
}

}  // namespace

std::vector<std::array<std::uint8_t, 18>> bars_and_stripes() {
  std::vector<std::array<std::uint8_t, 18>> out;
  for (int cls = 0; cls < 2; ++cls) {
    for (int bits = 0; bits < 16; ++bits) {
      std::array<std::uint8_t, 18> p{};
      for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
          const int line = cls == 0 ? c : r;
          p[static_cast<std::size_t>(r * 4 + c)] = static_cast<std::uint8_t>((bits >> line) & 1);
        }
      }
      p[16 + static_cast<std::size_t>(cls)] = 1;
      out.push_back(p);
    }
  }
  return out;
}

ErbmNetwork build_erbm(const ErbmOptions& o) {
  if (o.refractory <= o.window) {
    throw ConfigError("erbm: refractory period (" + std::to_string(o.refractory) +
                      ") must exceed the STDP window (" + std::to_string(o.window) +
                      ") to keep shared weights symmetric");
  }
  if (o.visible != 18) throw ConfigError("erbm: bars and stripes needs 18 visible units");
  if (o.hidden < 1) throw ConfigError("erbm: hidden must be positive");
  if (o.window < 1 || o.epochs < 0 || o.data_ticks < 1 || o.model_ticks < 1 || o.test_ticks < 1) {
    throw ConfigError("erbm: window, epochs and phase lengths must be positive");
  }
  ErbmNetwork net;
  ErbmLayout& l = net.layout;
  l.visible = static_cast<std::uint32_t>(o.visible);
  l.hidden = static_cast<std::uint32_t>(o.hidden);

  CoreConfig core;
  core.k = 4;
  core.n_internal = l.n_internal();
  core.n_external = l.n_external();
  core.param_groups = {unit_group(o, -6000, false), unit_group(o, -9500, true)};
  core.learning_groups = {visible_rule(o), hidden_rule(o)};
  core.group_of.assign(core.n_internal, 1);
  core.lgroup_of.assign(core.n_internal, 1);
  for (std::uint32_t v = 0; v < l.visible; ++v) {
    core.group_of[v] = 0;
    core.lgroup_of[v] = 0;
  }
  fill_defaults(core);

  RngStream rng(RngBackend::kSoftware, o.seed, kWeightStream);
  auto& syn = core.synapses;
  for (std::uint32_t h = 0; h < l.hidden; ++h) {
    for (std::uint32_t v = 0; v < l.visible; ++v) {
      const int w = static_cast<int>(rng.next_uniform() % (2u * o.init_scale + 1)) - o.init_scale;
      SynapseRecord hv = record(l.visible + h, v, 1, w);
      hv.plastic = true;
      const std::size_t owner = syn.size();
      syn.push_back(hv);
      SynapseRecord vh = record(v, l.visible + h, 1, 0);
      vh.tied = true;
      vh.tie = static_cast<std::uint32_t>(owner);
      net.shared.emplace_back(syn.size(), owner);
      syn.push_back(vh);
    }
  }
  for (std::uint32_t v = 0; v < l.visible; ++v) {
    syn.push_back(record(l.on_base() + v, v, 3, o.drive_on));
    syn.push_back(record(l.off_base() + v, v, 3, o.drive_off));
  }
  for (std::uint32_t n = 0; n < l.n_internal(); ++n) {
    syn.push_back(record(l.mod_plus(), n, 2, kWeightMax));
    syn.push_back(record(l.mod_minus(), n, 2, kWeightMin));
  }

  SimulationConfig& cfg = net.config;
  cfg.seed = o.seed;
  cfg.ticks = o.data_ticks + o.model_ticks;
  cfg.learning = true;
  cfg.cores.push_back(std::move(core));
  cfg.validate();
  return net;
}

std::vector<EventRecord> erbm_clamp_events(const ErbmLayout& l,
                                           const std::array<std::uint8_t, 18>& pattern,
                                           int clamped_units, Tick t0, Tick t1) {
  std::vector<EventRecord> ev;
  for (Tick t = t0; t < t1; ++t) {
    for (int v = 0; v < clamped_units; ++v) {
      const std::uint32_t base = pattern[static_cast<std::size_t>(v)] ? l.on_base() : l.off_base();
      ev.push_back({static_cast<std::uint32_t>(t), 0, base + static_cast<std::uint32_t>(v), 0});
    }
  }
  return ev;
}

ErbmResult run_erbm(const ErbmOptions& o, const std::function<void(const ErbmEpoch&)>& progress) {
  ErbmNetwork net = build_erbm(o);
  const ErbmLayout& l = net.layout;
  Simulator sim(net.config);
  const auto patterns = bars_and_stripes();
  RngStream order_rng(RngBackend::kSoftware, o.seed, kOrderStream);
  std::uint64_t train_synops = 0;

  auto fresh = [&]() {
    sim.clear_pending();
    sim.reset_states();
    sim.clear_spikes();
  };
  auto modulate = [&](std::uint32_t unit) {
    const EventRecord e{static_cast<std::uint32_t>(sim.now()), 0, unit, 0};
    sim.inject(std::span<const EventRecord>(&e, 1));
  };
  auto test = [&]() {
    sim.set_learning(false);
    int errors = 0;
    for (const auto& p : patterns) {
      fresh();
      const auto ev = erbm_clamp_events(l, p, kBarsPixels, sim.now(), sim.now() + o.test_ticks);
      sim.inject(ev);
      sim.run(o.test_ticks);
      int counts[2] = {0, 0};
      for (const EventRecord& e : sim.spikes()) {
        if (e.neuron == 16 || e.neuron == 17) ++counts[e.neuron - 16];
      }
      // Argmax readout; a tie goes to the lower label index.
      const int guess = counts[1] > counts[0] ? 1 : 0;
      const int truth = p[16] ? 0 : 1;
      errors += guess == truth ? 0 : 1;
    }
    return errors;
  };
  auto symmetric = [&]() {
    for (const auto& [vh, hv] : net.shared) {
      if (sim.record_weight(0, vh) != sim.record_weight(0, hv)) return false;
    }
    return true;
  };

  ErbmResult res;
  auto finish_epoch = [&](int epoch) {
    ErbmEpoch e{epoch, test(), symmetric(), train_synops};
    res.symmetric_every_epoch = res.symmetric_every_epoch && e.symmetric;
    res.epochs.push_back(e);
    res.trace.push_back({static_cast<double>(train_synops), e.errors / 32.0});
    if (progress) progress(e);
  };
  finish_epoch(0);
  std::vector<std::size_t> order(patterns.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (int epoch = 1; epoch <= o.epochs; ++epoch) {
    for (std::size_t n = order.size(); n > 1; --n) {
      std::swap(order[n - 1], order[order_rng.next_uniform() % n]);
    }
    for (std::size_t idx : order) {
      fresh();
      sim.set_learning(true);
      const std::uint64_t before = sim.stats().total().synops;
      modulate(l.mod_plus());
      sim.inject(erbm_clamp_events(l, patterns[idx], o.visible, sim.now(),
                                   sim.now() + o.data_ticks));
      sim.run(o.data_ticks);
      modulate(l.mod_minus());
      sim.run(o.model_ticks);
      train_synops += sim.stats().total().synops - before;
    }
    finish_epoch(epoch);
  }
  return res;
}

}  // namespace nsat::zoo
