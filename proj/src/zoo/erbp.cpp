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

#include "nsat/zoo/erbp.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "nsat/error.hpp"
#include "nsat/zoo/common.hpp"

namespace nsat::zoo {

namespace {

constexpr std::uint64_t kWeightStream = 101;
constexpr std::uint64_t kScheduleStream = 102;

int uniform_int(RngStream& rng, int lo, int hi) {
  return lo + static_cast<int>(rng.next_uniform() % static_cast<std::uint32_t>(hi - lo + 1));
}

ParamGroup learner_group(const ErbpOptions& o, StateWord theta, bool hidden) {
  ParamGroup g = ParamGroup::defaults(2);
  g.A = exps_from_source_major({-7, -16, -16, -6}, 2);
  g.sA = hidden ? signs_from_source_major({-1, 1, 1, -1}, 2)
                : signs_from_source_major({-1, -1, -1, -1}, 2);
  g.prob = {9, 15};
  g.Wgain = exps({3, 4});
  g.theta = {theta, static_cast<StateWord>(kStateMax)};
  g.XresetOn = {1, 0};
  g.Xreset = words({0, 0});
  g.Xthlo = words({-32767, -32767});
  g.refractory = o.refractory;
  g.modulator = 1;
  return g;
}

ParamGroup error_group() {
  ParamGroup g = ParamGroup::defaults(2);
  g.sA = signs_from_source_major({-1, 1, 1, -1}, 2);
  g.prob = {15, 15};
  g.Wgain = exps({4, 4});
  g.theta = {kErrorTheta, static_cast<StateWord>(kStateMax)};
  g.XresetOn = {0, 0};
  g.XspikeIncrVal = words({-kErrorTheta, 0});
  g.Xthlo = words({0, 0});
  return g;
}

LearningGroup learning_group(const ErbpOptions& o) {
  LearningGroup lg = LearningGroup::defaults(2);
  lg.rule = LearningRule::kState;
  lg.kernel.hiac[0] = ShiftExponent(o.learn_shift);
  lg.kernel.siac[0] = -1;
  lg.plastic = {1, 0};
  lg.rounding_bits = o.rounding_bits;
  lg.gate_enabled = true;
  lg.gate_component = 0;
  lg.gate_lo = o.gate_lo;
  lg.gate_hi = o.gate_hi;
  return lg;
}

void check(const ErbpOptions& o) {
  if (o.hidden < 10) throw ConfigError("erbp: hidden must be at least 10");
  if (o.epochs < 0) throw ConfigError("erbp: epochs must be non-negative");
  if (o.digit_ticks < 1 || o.gate_ticks < 0 || o.gate_ticks >= o.digit_ticks) {
    throw ConfigError("erbp: need 0 <= gate_ticks < digit_ticks");
  }
  if (o.refractory < 0) throw ConfigError("erbp: refractory must be non-negative");
  if (o.label_weight * 16 >= kErrorTheta + 1 || o.label_weight < 1) {
    throw ConfigError("erbp: label_weight must be in [1, 64] so a single event stays below "
                      "the error threshold");
  }
  for (int s : {o.feedback_scale, o.out_feedback, o.init_scale_in, o.init_scale_out}) {
    if (s < 0 || s > kWeightMax) throw ConfigError("erbp: weight scales must be in [0, 127]");
  }
}

SynapseRecord record(std::uint32_t src, std::uint32_t dst, int comp, int w, bool plastic) {
  SynapseRecord r;
  r.src = {0, src};
  r.dst = dst;
  r.component = static_cast<std::uint8_t>(comp);
  r.weight = static_cast<std::int8_t>(w);
  r.plastic = plastic;
  return r;
}

// Random integers in [-s, s] summing to exactly zero.
std::vector<int> zero_sum(RngStream& rng, std::size_t n, int s) {
  std::vector<double> v(n);
  for (auto& x : v) x = (2 * uniform01(rng) - 1) * s;
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(n);
  std::vector<int> out(n);
  int sum = 0;
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = static_cast<int>(std::lround(std::clamp(v[i] - mean, -double(s), double(s))));
    sum += out[i];
  }
  for (std::size_t i = 0; sum != 0; i = (i + 1) % n) {
    const int step = sum > 0 ? -1 : 1;
    if (std::abs(out[i] + step) <= s) {
      out[i] += step;
      sum += step;
    }
  }
  return out;
}

int classify(const Simulator& sim, const ErbpLayout& l) {
  std::array<int, 10> counts{};
  for (const EventRecord& e : sim.spikes()) {
    if (e.neuron >= l.out_base() && e.neuron < l.out_base() + l.outputs) {
      ++counts[e.neuron - l.out_base()];
    }
  }
  const auto best = std::max_element(counts.begin(), counts.end());
  if (*best == 0 || std::count(counts.begin(), counts.end(), *best) > 1) return -1;
  return static_cast<int>(best - counts.begin());
}

}  // namespace

ErbpNetwork build_erbp(const ErbpOptions& o) {
  check(o);
  ErbpNetwork net;
  ErbpLayout& l = net.layout;
  l.hidden = static_cast<std::uint32_t>(o.hidden);

  CoreConfig core;
  core.k = 2;
  core.n_internal = l.n_internal();
  core.n_external = l.inputs + l.outputs;
  core.param_groups = {learner_group(o, o.theta_hidden, true), learner_group(o, o.theta_out, false),
                       error_group()};
  core.learning_groups = {learning_group(o)};
  core.group_of.assign(core.n_internal, 0);
  core.lgroup_of.assign(core.n_internal, -1);
  for (std::uint32_t i = 0; i < l.hidden + l.outputs; ++i) core.lgroup_of[i] = 0;
  for (std::uint32_t k = 0; k < l.outputs; ++k) core.group_of[l.out_base() + k] = 1;
  for (std::uint32_t k = 0; k < 2 * l.outputs; ++k) core.group_of[l.eplus_base() + k] = 2;
  fill_defaults(core);

  RngStream rng(RngBackend::kSoftware, o.seed, kWeightStream);
  auto& syn = core.synapses;
  for (std::uint32_t p = 0; p < l.inputs; ++p) {
    for (std::uint32_t j = 0; j < l.hidden; ++j) {
      syn.push_back(record(l.pixel_base() + p, j, 0,
                           uniform_int(rng, -o.init_scale_in, o.init_scale_in), true));
    }
  }
  for (std::uint32_t j = 0; j < l.hidden; ++j) {
    for (std::uint32_t k = 0; k < l.outputs; ++k) {
      syn.push_back(record(j, l.out_base() + k, 0,
                           uniform_int(rng, -o.init_scale_out, o.init_scale_out), true));
    }
  }
  for (std::uint32_t k = 0; k < l.outputs; ++k) {
    const std::uint32_t ep = l.eplus_base() + k;
    const std::uint32_t em = l.eminus_base() + k;
    syn.push_back(record(l.out_base() + k, ep, 0, o.label_weight, false));
    syn.push_back(record(l.out_base() + k, em, 0, -o.label_weight, false));
    syn.push_back(record(l.label_base() + k, ep, 0, -o.label_weight, false));
    syn.push_back(record(l.label_base() + k, em, 0, o.label_weight, false));
    syn.push_back(record(ep, l.out_base() + k, 1, o.out_feedback, false));
    syn.push_back(record(em, l.out_base() + k, 1, -o.out_feedback, false));
  }
  for (std::uint32_t j = 0; j < l.hidden; ++j) {
    const auto g = zero_sum(rng, l.outputs, o.feedback_scale);
    for (std::uint32_t k = 0; k < l.outputs; ++k) {
      if (g[k] == 0) continue;
      syn.push_back(record(l.eplus_base() + k, j, 1, g[k], false));
      syn.push_back(record(l.eminus_base() + k, j, 1, -g[k], false));
    }
  }

  SimulationConfig& cfg = net.config;
  cfg.seed = o.seed;
  cfg.ticks = o.digit_ticks;
  cfg.learning = true;
  cfg.gate = {o.digit_ticks, o.gate_ticks};
  cfg.cores.push_back(std::move(core));
  cfg.validate();
  return net;
}

std::vector<EventRecord> erbp_digit_events(const ErbpLayout& l, const ErbpOptions& o,
                                           const std::vector<std::uint8_t>& image, int label,
                                           Tick t0, RngStream& rng) {
  if (image.size() != l.inputs) throw ConfigError("erbp: image size does not match the inputs");
  std::vector<std::uint32_t> ids;
  std::vector<double> rates;
  for (std::uint32_t p = 0; p < l.inputs; ++p) {
    if (image[p] == 0) continue;
    ids.push_back(l.pixel_base() + p);
    rates.push_back(o.max_rate_hz * image[p] / 255.0);
  }
  std::vector<EventRecord> ev;
  poisson_events(ev, 0, ids, rates, t0, t0 + o.digit_ticks, rng);
  if (label >= 0) {
    // Spaced by the shortest inter-spike interval a prediction neuron has.
    regular_events(ev, 0, l.label_base() + static_cast<std::uint32_t>(label), o.refractory + 1,
                   t0, t0 + o.digit_ticks);
    sort_events(ev);
  }
  return ev;
}

std::vector<EventRecord> erbp_schedule(const ErbpLayout& layout, const ErbpOptions& options,
                                       const DigitSet& digits) {
  RngStream rng(RngBackend::kSoftware, options.seed, kScheduleStream);
  std::vector<EventRecord> all;
  for (std::size_t n = 0; n < digits.size(); ++n) {
    const auto ev = erbp_digit_events(layout, options, digits.images[n], digits.labels[n],
                                      static_cast<Tick>(n) * options.digit_ticks, rng);
    all.insert(all.end(), ev.begin(), ev.end());
  }
  return all;
}

ErbpResult run_erbp(const ErbpOptions& o, const DigitSet& train, const DigitSet& test,
                    const std::function<void(const ErbpEpoch&)>& progress,
                    std::size_t trace_every) {
  ErbpNetwork net = build_erbp(o);
  const ErbpLayout& l = net.layout;
  if (train.pixels() != l.inputs || (test.size() > 0 && test.pixels() != l.inputs)) {
    throw ConfigError("erbp: digit images must have 784 pixels");
  }
  Simulator sim(net.config);
  RngStream rng(RngBackend::kSoftware, o.seed, kScheduleStream);
  std::uint64_t train_synops = 0;
  std::uint64_t updates = 0;

  auto present = [&](const std::vector<std::uint8_t>& img, int label, bool learn) {
    sim.clear_spikes();
    sim.set_learning(learn);
    const auto ev = erbp_digit_events(l, o, img, label, sim.now(), rng);
    sim.inject(ev);
    const CoreStats before = sim.stats().total();
    sim.run(o.digit_ticks);
    const CoreStats after = sim.stats().total();
    if (learn) {
      train_synops += after.synops - before.synops;
      updates += after.weight_updates - before.weight_updates;
    }
  };
  auto evaluate = [&]() {
    std::size_t wrong = 0;
    for (std::size_t n = 0; n < test.size(); ++n) {
      present(test.images[n], -1, false);
      wrong += classify(sim, l) != static_cast<int>(test.labels[n]);
    }
    return test.size() == 0 ? 1.0 : static_cast<double>(wrong) / static_cast<double>(test.size());
  };

  ErbpResult res;
  auto record_point = [&](int epoch) {
    ErbpEpoch e{epoch, evaluate(), train_synops, updates};
    res.trace.push_back({static_cast<double>(train_synops), e.test_error});
    return e;
  };
  {
    const ErbpEpoch e = record_point(0);
    res.epochs.push_back(e);
    if (progress) progress(e);
  }
  std::vector<std::size_t> order(train.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  RngStream shuffle(RngBackend::kSoftware, o.seed, kScheduleStream + 1);
  std::size_t seen = 0;
  for (int epoch = 1; epoch <= o.epochs; ++epoch) {
    for (std::size_t n = order.size(); n > 1; --n) {
      std::swap(order[n - 1], order[shuffle.next_uniform() % n]);
    }
    for (std::size_t idx : order) {
      present(train.images[idx], train.labels[idx], true);
      ++seen;
      if (trace_every > 0 && seen % trace_every == 0 && seen % train.size() != 0) {
        record_point(epoch);
      }
    }
    const ErbpEpoch e = record_point(epoch);
    res.epochs.push_back(e);
    if (progress) progress(e);
  }
  res.final_error = res.epochs.back().test_error;
  const auto w = sim.weights(0);
  res.final_weights.assign(w.begin(), w.end());
  return res;
}

SimulationConfig build_error_silence(Tick ticks, const ErbpOptions& options) {
  check(options);
  CoreConfig core;
  core.k = 2;
  core.n_internal = 2;
  core.n_external = 2;
  core.param_groups = {error_group()};
  fill_defaults(core);
  core.synapses.push_back(record(2, 0, 0, options.label_weight, false));
  core.synapses.push_back(record(2, 1, 0, -options.label_weight, false));
  core.synapses.push_back(record(3, 0, 0, -options.label_weight, false));
  core.synapses.push_back(record(3, 1, 0, options.label_weight, false));

  SimulationConfig cfg;
  cfg.ticks = ticks;
  cfg.seed = options.seed;
  cfg.cores.push_back(std::move(core));
  std::vector<EventRecord> train;
  RngStream rng(RngBackend::kSoftware, options.seed, kScheduleStream);
  const std::uint32_t pred = 2;
  const std::vector<double> rate{1000.0 / (options.refractory + 1)};
  poisson_events(train, 0, std::span<const std::uint32_t>(&pred, 1), rate, 0, ticks, rng);
  for (const EventRecord& e : train) {
    cfg.external_events.push_back(e);
    cfg.external_events.push_back({e.tick, 0, 3, 0});
  }
  cfg.validate();
  return cfg;
}

}  // namespace nsat::zoo
