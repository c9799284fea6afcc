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

#include <algorithm>
#include <cstdint>
#include <vector>

#include "nsat/config.hpp"
#include "nsat/error.hpp"
#include "nsat/fabric.hpp"
#include "nsat/plasticity.hpp"

using namespace nsat;

namespace {

StdpKernel hidden_kernel() {
  StdpKernel k;
  k.tca = {16, 36};
  k.tac = {-16, -36};
  k.hica = {ShiftExponent(1), ShiftExponent(0), ShiftExponent(-1)};
  k.hiac = {ShiftExponent(1), ShiftExponent(0), ShiftExponent(-1)};
  k.siac = {-1, -1, -1};
  return k;
}

// One post neuron (internal 0) with a constant modulator on x1, a plastic
// input from external 1 onto x2 and a strong driver (external 2) onto x0.
struct Bench {
  static constexpr std::uint32_t kPre = 1;
  static constexpr std::uint32_t kDriver = 2;
  static constexpr std::size_t kPlasticRecord = 0;

  SimulationConfig cfg;

  explicit Bench(std::int16_t modulator, bool plastic = true, std::int8_t w0 = 0) {
    CoreConfig core;
    core.k = 3;
    core.n_internal = 1;
    core.n_external = 2;
    ParamGroup g = ParamGroup::defaults(3);
    g.theta = {100, 0, 0};
    g.Xinit = {0, modulator, 0};
    g.modulator = 1;
    core.param_groups = {g};
    LearningGroup lg = LearningGroup::defaults(3);
    lg.kernel = hidden_kernel();
    lg.kernel.hica = {ShiftExponent(-7), ShiftExponent(-7), ShiftExponent(-7)};
    lg.kernel.hiac = {ShiftExponent(-7), ShiftExponent(-7), ShiftExponent(-7)};
    lg.plastic = {0, 0, 1};
    core.learning_groups = {lg};
    core.lgroup_of = {0};
    fill_defaults(core);
    SynapseRecord pre;
    pre.src = {0, kPre};
    pre.dst = 0;
    pre.component = 2;
    pre.weight = w0;
    pre.plastic = plastic;
    SynapseRecord drv;
    drv.src = {0, kDriver};
    drv.dst = 0;
    drv.component = 0;
    drv.weight = 127;
    core.synapses = {pre, drv};
    cfg.cores = {core};
    cfg.learning = true;
    cfg.validate();
  }
};

Tick first_spike(const Simulator& sim) {
  REQUIRE_FALSE(sim.spikes().empty());
  return sim.spikes().front().tick;
}

void inject_one(Simulator& sim, Tick t, std::uint32_t neuron) {
  const EventRecord e{static_cast<std::uint32_t>(t), 0, neuron, 0};
  sim.inject(std::span<const EventRecord>(&e, 1));
}

}  // namespace

TEST_CASE("kernel evaluation") {
  const StdpKernel k = hidden_kernel();
  CHECK(kernel_eval(k, 10) == KernelValue{1, ShiftExponent(1)});
  CHECK(kernel_eval(k, 20) == KernelValue{1, ShiftExponent(0)});
  CHECK(kernel_eval(k, -10) == KernelValue{-1, ShiftExponent(1)});
  CHECK(kernel_eval(k, -36) == KernelValue{-1, ShiftExponent(0)});
  CHECK(kernel_eval(k, 0).zero());
  CHECK(kernel_eval(k, 37).zero());
  CHECK(kernel_eval(k, -37).zero());
  CHECK(k.window() == 36);
}

TEST_CASE("modulated eligibility") {
  CHECK(modulated_eligibility({1, ShiftExponent(-7)}, 256) == 2);
  CHECK(modulated_eligibility({-1, ShiftExponent(-7)}, 256) == -2);
  CHECK(modulated_eligibility({1, ShiftExponent(-7)}, 0) == 0);
  CHECK(modulated_eligibility({0, ShiftExponent(3)}, 256) == 0);
  CHECK(modulated_eligibility({1, kShiftOff}, 256) == 0);
}

TEST_CASE("kernel validation") {
  StdpKernel k = hidden_kernel();
  k.tca = {40, 20};
  CHECK_THROWS_AS(k.validate(), ConfigError);
}

TEST_CASE("acausal update on pre arrival") {
  Bench b(256);
  Simulator sim(b.cfg);
  inject_one(sim, 5, Bench::kDriver);
  while (sim.spikes().empty() && sim.now() < 20) sim.run(1);
  const Tick tp = first_spike(sim);
  inject_one(sim, tp + 5, Bench::kPre);
  sim.run(tp + 5 - sim.now());
  CHECK(sim.record_weight(0, Bench::kPlasticRecord) == 0);
  sim.run(1);
  const std::int32_t expect = modulated_eligibility({-1, ShiftExponent(-7)}, 256);
  CHECK(expect == -2);
  CHECK(sim.record_weight(0, Bench::kPlasticRecord) == expect);
  sim.run(100);
  CHECK(sim.record_weight(0, Bench::kPlasticRecord) == expect);
}

TEST_CASE("causal update lands when the timer expires") {
  Bench b(256);
  Simulator sim(b.cfg);
  const Tick t_pre = 10;
  inject_one(sim, t_pre, Bench::kPre);
  inject_one(sim, t_pre + 1, Bench::kDriver);
  const Tick expiry = t_pre + hidden_kernel().window();
  sim.run(expiry);
  const Tick tp = first_spike(sim);
  REQUIRE(tp > t_pre);
  REQUIRE(tp - t_pre <= 16);
  CHECK(sim.record_weight(0, Bench::kPlasticRecord) == 0);
  sim.run(1);
  CHECK(sim.record_weight(0, Bench::kPlasticRecord) == 2);
}

TEST_CASE("no post spike means no update") {
  Bench b(256);
  Simulator sim(b.cfg);
  inject_one(sim, 3, Bench::kPre);
  sim.run(200);
  CHECK(sim.spikes().empty());
  CHECK(sim.record_weight(0, Bench::kPlasticRecord) == 0);
}

TEST_CASE("unmodulated or fixed synapses never change") {
  for (bool plastic : {true, false}) {
    Bench b(plastic ? 0 : 256, plastic);
    Simulator sim(b.cfg);
    std::vector<EventRecord> ev;
    for (std::uint32_t t = 0; t < 400; t += 7) ev.push_back({t, 0, Bench::kPre, 0});
    for (std::uint32_t t = 2; t < 400; t += 11) ev.push_back({t, 0, Bench::kDriver, 0});
    std::sort(ev.begin(), ev.end(), [](auto& a, auto& c) { return a.tick < c.tick; });
    sim.inject(ev);
    sim.run(450);
    CHECK(sim.spikes().size() > 10);
    CHECK(sim.record_weight(0, Bench::kPlasticRecord) == 0);
  }
}

TEST_CASE("updates clip to the weight range") {
  Bench b(32767, true, 120);
  Simulator sim(b.cfg);
  std::vector<EventRecord> ev;
  for (std::uint32_t t = 0; t < 400; t += 20) {
    ev.push_back({t, 0, Bench::kPre, 0});
    ev.push_back({t + 2, 0, Bench::kDriver, 0});
  }
  sim.inject(ev);
  sim.run(450);
  CHECK(sim.record_weight(0, Bench::kPlasticRecord) == kWeightMax);
}

TEST_CASE("timers expire once, in source order") {
  StdpTimers timers(4, 10);
  timers.restart(2, 5);
  timers.restart(0, 5);
  timers.restart(3, 6);
  CHECK(timers.pending(2, 15));
  CHECK(timers.last_arrival(0) == 5);
  std::vector<std::uint32_t> out;
  timers.take_expired(15, out);
  CHECK(out == std::vector<std::uint32_t>{0, 2});
  CHECK_FALSE(timers.pending(0, 15));
  out.clear();
  timers.take_expired(16, out);
  CHECK(out == std::vector<std::uint32_t>{3});
}
