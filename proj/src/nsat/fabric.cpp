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

#include "nsat/fabric.hpp"

#include <algorithm>
#include <atomic>
#include <barrier>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

#include "nsat/error.hpp"

namespace nsat {

void deterministic_order(std::vector<Delivery>& deliveries) {
  std::sort(deliveries.begin(), deliveries.end(), [](const Delivery& a, const Delivery& b) {
    if (a.src != b.src) return a.src < b.src;
    return a.seq < b.seq;
  });
}

CoreStats RunStats::total() const {
  CoreStats t;
  for (const auto& c : cores) {
    t.synops += c.synops;
    t.blanked += c.blanked;
    t.spikes += c.spikes;
    t.weight_updates += c.weight_updates;
    t.events_delivered += c.events_delivered;
  }
  return t;
}

Simulator::Simulator(SimulationConfig cfg) : cfg_(std::move(cfg)) {
  for (auto& c : cfg_.cores) fill_defaults(c);
  cfg_.validate();
  learning_ = cfg_.learning;

  std::vector<std::uint32_t> sizes;
  sizes.reserve(cfg_.cores.size());
  for (const auto& c : cfg_.cores) sizes.push_back(c.size());

  const std::size_t ring_size = static_cast<std::size_t>(cfg_.max_delay) + 2;
  cores_.resize(cfg_.cores.size());
  routes_.resize(cfg_.cores.size());
  for (std::size_t c = 0; c < cfg_.cores.size(); ++c) routes_[c].resize(sizes[c]);

  for (std::size_t c = 0; c < cfg_.cores.size(); ++c) {
    Core& core = cores_[c];
    core.id = static_cast<std::uint32_t>(c);
    core.cfg = cfg_.cores[c];
    core.cfg.synapses.clear();
    core.table = SynapseTable::build(cfg_.cores[c].synapses, sizes);
    std::int32_t window = 0;
    for (const auto& lg : core.cfg.learning_groups) window = std::max(window, lg.window());
    core.timers = StdpTimers(core.table.num_sources(), window);
    core.rng = RngStream(cfg_.rng, cfg_.seed, c);
    core.ring.resize(ring_size);
    core.neurons.resize(core.cfg.n_internal);
    for (std::uint32_t i = 0; i < core.cfg.n_internal; ++i) {
      core.neurons[i] = NeuronState::initial(core.cfg.param_groups[core.cfg.group_of[i]]);
    }
    for (std::size_t s = 0; s < core.table.num_sources(); ++s) {
      const SourceAddress a = core.table.source(s);
      routes_[a.core][a.neuron].push_back({core.id, static_cast<std::uint32_t>(s)});
    }
  }
  if (!cfg_.external_events.empty()) inject(cfg_.external_events);
}

void Simulator::inject(std::span<const EventRecord> events) {
  std::uint32_t prev = 0;
  for (std::size_t i = 0; i < events.size(); ++i) {
    const EventRecord& e = events[i];
    auto reject = [&](const std::string& why) {
      throw ConfigError("external event " + std::to_string(i) + " (tick " +
                        std::to_string(e.tick) + ", core " + std::to_string(e.core) +
                        ", neuron " + std::to_string(e.neuron) + ", delay " +
                        std::to_string(e.delay) + "): " + why);
    };
    if (e.tick < prev) reject("out of order");
    prev = e.tick;
    if (static_cast<Tick>(e.tick) < now_) reject("in the past (now " + std::to_string(now_) + ")");
    if (e.core >= cores_.size()) reject("unknown core");
    const CoreConfig& c = cores_[e.core].cfg;
    if (e.neuron < c.n_internal || e.neuron >= c.size()) reject("not an external neuron");
  }
  for (const EventRecord& e : events) {
    external_.push({static_cast<Tick>(e.tick) + e.delay, seq_++, e.core, e.neuron});
    ++injected_;
  }
}

void Simulator::enqueue(SourceAddress src, Tick due) {
  const std::size_t slot = static_cast<std::size_t>(due % static_cast<Tick>(cores_[0].ring.size()));
  for (const Route& r : routes_[src.core][src.neuron]) {
    cores_[r.core].ring[slot].push_back({r.source, src, seq_++});
    ++emitted_;
  }
}

void Simulator::stage1(Core& core) {
  core.emitted.clear();
  const auto& groups = core.cfg.param_groups;
  for (std::uint32_t i = 0; i < core.cfg.n_internal; ++i) {
    NeuronState& n = core.neurons[i];
    const ParamGroup& g = groups[core.cfg.group_of[i]];
    integrate(n, g, core.rng);
    n.spiked = detect_spike(n, g);
    if (n.spiked) {
      n.last_spike = now_;
      core.emitted.push_back(i);
    }
  }
  core.stats.spikes += core.emitted.size();
}

void Simulator::route() {
  for (Core& core : cores_) {
    for (std::uint32_t n : core.emitted) {
      const std::uint16_t delay = core.cfg.delay_of[n];
      if (record_spikes_) {
        spikes_.push_back({static_cast<std::uint32_t>(now_), static_cast<std::uint16_t>(core.id),
                           n, delay});
      }
      enqueue({static_cast<std::uint16_t>(core.id), n}, now_ + 1 + delay);
    }
  }
  while (!external_.empty() && external_.top().due <= now_) {
    const Pending p = external_.top();
    external_.pop();
    enqueue({p.core, p.neuron}, now_);
  }
}

void Simulator::stage2(Core& core) {
  auto& slot = core.ring[static_cast<std::size_t>(now_ % static_cast<Tick>(core.ring.size()))];
  deterministic_order(slot);
  const auto& groups = core.cfg.param_groups;
  auto weights = core.table.weights();
  for (const Delivery& d : slot) {
    for (const Synapse& syn : core.table.fanout(d.source)) {
      ++core.stats.synops;
      const ParamGroup& g = groups[core.cfg.group_of[syn.target]];
      if (!accumulate(core.neurons[syn.target], syn.component, weights[syn.slot], g, core.rng)) {
        ++core.stats.blanked;
      }
    }
  }
  core.stats.events_delivered += slot.size();

  const bool learn = learning_active(now_);
  PlasticityContext ctx;
  ctx.table = &core.table;
  ctx.post = core.neurons;
  ctx.groups = groups;
  ctx.group_of = core.cfg.group_of;
  ctx.lgroups = core.cfg.learning_groups;
  ctx.lgroup_of = core.cfg.lgroup_of;
  ctx.rng = &core.rng;
  ctx.log = core.update_log;

  core.timers.take_expired(now_, core.expired);
  if (learn) {
    for (std::uint32_t s : core.expired) on_timer_event(ctx, s, core.timers.last_arrival(s), now_);
  }
  for (const Delivery& d : slot) {
    const std::uint32_t s = d.source;
    if (!core.table.has_plastic(s)) continue;
    if (core.timers.pending(s, now_)) {
      if (learn) on_timer_event(ctx, s, core.timers.last_arrival(s), now_);
      core.timers.cancel(s);
    }
    if (learn) on_pre_spike(ctx, s, now_);
    core.timers.restart(s, now_);
  }
  core.stats.weight_updates += ctx.updates;
  slot.clear();

  for (std::uint32_t n : core.emitted) {
    post_spike(core.neurons[n], groups[core.cfg.group_of[n]], now_);
  }
}

void Simulator::end_tick() {
  if (observer_ != nullptr) observer_->on_tick_end(*this, now_);
  ++now_;
}

void Simulator::run(Tick n, int threads) {
  if (n <= 0) return;
  const std::size_t nthreads =
      std::clamp<std::size_t>(threads < 1 ? 1 : static_cast<std::size_t>(threads), 1, cores_.size());
  const Tick start = now_;
  const Tick end = start + n;
  if (nthreads == 1) {
    while (now_ < end) {
      for (Core& c : cores_) stage1(c);
      route();
      for (Core& c : cores_) stage2(c);
      end_tick();
    }
    return;
  }

  std::atomic<bool> abort{false};
  std::exception_ptr error;
  std::mutex error_mu;
  auto record = [&](std::exception_ptr e) {
    std::lock_guard lock(error_mu);
    if (!error) error = e;
    abort.store(true);
  };
  auto guarded = [&](auto&& fn) {
    if (abort.load()) return;
    try {
      fn();
    } catch (...) {
      record(std::current_exception());
    }
  };
  std::barrier routed(static_cast<std::ptrdiff_t>(nthreads),
                      [&]() noexcept { guarded([&] { route(); }); });
  std::barrier finished(static_cast<std::ptrdiff_t>(nthreads),
                        [&]() noexcept { guarded([&] { end_tick(); }); });
  auto worker = [&](std::size_t tid) {
    for (Tick t = start; t < end; ++t) {
      guarded([&] {
        for (std::size_t c = tid; c < cores_.size(); c += nthreads) stage1(cores_[c]);
      });
      routed.arrive_and_wait();
      guarded([&] {
        for (std::size_t c = tid; c < cores_.size(); c += nthreads) stage2(cores_[c]);
      });
      finished.arrive_and_wait();
      if (abort.load()) break;
    }
  };
  {
    std::vector<std::jthread> pool;
    for (std::size_t tid = 1; tid < nthreads; ++tid) pool.emplace_back(worker, tid);
    worker(0);
  }
  if (error) std::rethrow_exception(error);
}

void Simulator::reset_states() {
  for (Core& core : cores_) {
    for (std::uint32_t i = 0; i < core.cfg.n_internal; ++i) {
      core.neurons[i] = NeuronState::initial(core.cfg.param_groups[core.cfg.group_of[i]]);
    }
  }
}

void Simulator::clear_pending() {
  for (Core& core : cores_) {
    for (auto& slot : core.ring) {
      dropped_ += slot.size();
      slot.clear();
    }
  }
  dropped_ += external_.size();
  while (!external_.empty()) external_.pop();
}

RunStats Simulator::stats() const {
  RunStats s;
  s.ticks = now_;
  for (const Core& c : cores_) {
    s.cores.push_back(c.stats);
    for (const auto& slot : c.ring) s.events_pending += slot.size();
  }
  s.events_emitted = emitted_;
  s.events_injected = injected_;
  s.events_dropped = dropped_;
  return s;
}

}  // namespace nsat
