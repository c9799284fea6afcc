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

#include <cstdint>
#include <vector>

#include "nsat/config.hpp"
#include "nsat/error.hpp"
#include "nsat/fabric.hpp"
#include "nsat/zoo/neural_field.hpp"

using namespace nsat;

namespace {

// Core 0: neuron A (internal 0) fired by external 1. Core 1: neuron B
// (internal 0) integrating A's spikes on x1 without leak.
SimulationConfig two_cores(std::uint16_t delay) {
  SimulationConfig cfg;
  for (int c = 0; c < 2; ++c) {
    CoreConfig core;
    core.k = 2;
    core.n_internal = 1;
    core.n_external = c == 0 ? 1 : 0;
    ParamGroup g = ParamGroup::defaults(2);
    g.theta = {100, 0};
    core.param_groups = {g};
    fill_defaults(core);
    cfg.cores.push_back(core);
  }
  cfg.cores[0].delay_of[0] = delay;
  SynapseRecord drive;
  drive.src = {0, 1};
  drive.dst = 0;
  drive.weight = 127;
  cfg.cores[0].synapses = {drive};
  SynapseRecord link;
  link.src = {0, 0};
  link.dst = 0;
  link.component = 1;
  link.weight = 5;
  cfg.cores[1].synapses = {link};
  cfg.validate();
  return cfg;
}

struct Watch : TickObserver {
  std::vector<int> x1;
  void on_tick_end(const Simulator& sim, Tick) override { x1.push_back(sim.state(1, 0).x[1]); }
};

Tick arrival_tick(std::uint16_t delay, Tick* spike_tick) {
  Simulator sim(two_cores(delay));
  Watch w;
  sim.set_observer(&w);
  const EventRecord e{3, 0, 1, 0};
  sim.inject(std::span<const EventRecord>(&e, 1));
  sim.run(20);
  REQUIRE(sim.spikes().size() == 1);
  *spike_tick = sim.spikes()[0].tick;
  for (std::size_t t = 0; t < w.x1.size(); ++t) {
    if (w.x1[t] != 0) return static_cast<Tick>(t);
  }
  return -1;
}

}  // namespace

TEST_CASE("spikes cross cores on the next tick") {
  Tick t = 0;
  const Tick direct = arrival_tick(0, &t);
  CHECK(direct == t + 1);
  const Tick delayed = arrival_tick(3, &t);
  CHECK(delayed == t + 4);
}

TEST_CASE("external events arrive at tick plus delay") {
  Simulator sim(two_cores(0));
  Watch w;
  sim.set_observer(&w);
  const EventRecord e{2, 0, 1, 4};
  sim.inject(std::span<const EventRecord>(&e, 1));
  sim.run(10);
  REQUIRE(sim.spikes().size() == 1);
  // The drive lands at tick 6, A integrates it and fires on the next tick.
  CHECK(sim.spikes()[0].tick == 7);
}

TEST_CASE("injection errors") {
  Simulator sim(two_cores(0));
  sim.inject({});
  sim.run(5);
  const EventRecord past{4, 0, 1, 0};
  CHECK_THROWS_WITH_AS(sim.inject(std::span<const EventRecord>(&past, 1)),
                       doctest::Contains("in the past"), ConfigError);
  const EventRecord internal{9, 0, 0, 0};
  CHECK_THROWS_AS(sim.inject(std::span<const EventRecord>(&internal, 1)), ConfigError);
  const std::vector<EventRecord> unsorted{{9, 0, 1, 0}, {8, 0, 1, 0}};
  CHECK_THROWS_WITH_AS(sim.inject(unsorted), doctest::Contains("out of order"), ConfigError);
  const EventRecord core{9, 7, 1, 0};
  CHECK_THROWS_AS(sim.inject(std::span<const EventRecord>(&core, 1)), ConfigError);
}

TEST_CASE("deliveries sort by source address then insertion") {
  std::vector<Delivery> d{{0, {1, 0}, 0}, {1, {0, 5}, 1}, {2, {0, 2}, 3}, {3, {0, 2}, 2}};
  deterministic_order(d);
  CHECK(d[0].seq == 2);
  CHECK(d[1].seq == 3);
  CHECK(d[2].seq == 1);
  CHECK(d[3].seq == 0);
}

TEST_CASE("a silent network only keeps time") {
  Simulator sim(two_cores(0));
  sim.run(50);
  CHECK(sim.now() == 50);
  CHECK(sim.spikes().empty());
  CHECK(sim.stats().total().synops == 0);
}

TEST_CASE("thread count does not change results") {
  zoo::NeuralFieldOptions o;
  o.cores = 4;
  o.ticks = 1200;
  const SimulationConfig cfg = zoo::build_neural_field(zoo::FieldVariant::kSelect, o);
  Simulator one(cfg), four(cfg);
  one.run(cfg.ticks, 1);
  four.run(cfg.ticks, 4);
  CHECK(!one.spikes().empty());
  CHECK(one.spikes() == four.spikes());
  CHECK(one.stats().total() == four.stats().total());
  for (std::size_t c = 0; c < one.num_cores(); ++c) {
    for (std::uint32_t n = 0; n < cfg.cores[c].n_internal; ++n) {
      REQUIRE(one.state(c, n) == four.state(c, n));
    }
  }
}

TEST_CASE("clear_pending drops buffered events") {
  Simulator sim(two_cores(0));
  const EventRecord e{3, 0, 1, 0};
  sim.inject(std::span<const EventRecord>(&e, 1));
  sim.clear_pending();
  sim.run(10);
  CHECK(sim.spikes().empty());
  CHECK(sim.stats().events_dropped == 1);
}
