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

#include "nsat/zoo/common.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "nsat/error.hpp"

namespace nsat::zoo {

std::int64_t ExperimentSpec::knob(std::string_view key, std::int64_t fallback) const {
  const auto it = knobs.find(std::string(key));
  return it == knobs.end() ? fallback : it->second;
}

ExperimentSpec ExperimentSpec::parse(std::string_view text) {
  ExperimentSpec spec;
  std::size_t pos = text.find(',');
  spec.name = std::string(text.substr(0, pos));
  while (pos != std::string_view::npos) {
    const std::size_t next = text.find(',', pos + 1);
    const auto item = text.substr(pos + 1, next == std::string_view::npos ? next : next - pos - 1);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("experiment '" + std::string(text) + "': expected key=value");
    }
    std::int64_t v = 0;
    const auto val = item.substr(eq + 1);
    const auto [p, ec] = std::from_chars(val.data(), val.data() + val.size(), v);
    if (ec != std::errc() || p != val.data() + val.size()) {
      throw ConfigError("experiment '" + std::string(text) + "': bad value '" + std::string(val) +
                        "'");
    }
    const std::string key(item.substr(0, eq));
    if (key == "seed") {
      spec.seed = static_cast<std::uint64_t>(v);
    } else {
      spec.knobs[key] = v;
    }
    pos = next;
  }
  return spec;
}

std::vector<ShiftExponent> exps_from_source_major(std::initializer_list<int> a, int k) {
  if (a.size() != static_cast<std::size_t>(k * k)) throw ConfigError("matrix must be kxk");
  std::vector<ShiftExponent> out(a.size());
  const int* p = a.begin();
  for (int src = 0; src < k; ++src) {
    for (int dst = 0; dst < k; ++dst) out[static_cast<std::size_t>(dst * k + src)] = ShiftExponent(p[src * k + dst]);
  }
  return out;
}

std::vector<std::int8_t> signs_from_source_major(std::initializer_list<int> s, int k) {
  if (s.size() != static_cast<std::size_t>(k * k)) throw ConfigError("matrix must be kxk");
  std::vector<std::int8_t> out(s.size());
  const int* p = s.begin();
  for (int src = 0; src < k; ++src) {
    for (int dst = 0; dst < k; ++dst) {
      out[static_cast<std::size_t>(dst * k + src)] = static_cast<std::int8_t>(p[src * k + dst]);
    }
  }
  return out;
}

std::vector<StateWord> words(std::initializer_list<int> v) {
  std::vector<StateWord> out;
  for (int x : v) out.push_back(static_cast<StateWord>(x));
  return out;
}

std::vector<ShiftExponent> exps(std::initializer_list<int> v) {
  std::vector<ShiftExponent> out;
  for (int x : v) out.emplace_back(x);
  return out;
}

double uniform01(RngStream& rng) { return rng.next_uniform() * (1.0 / 4294967296.0); }

void poisson_events(std::vector<EventRecord>& out, std::uint16_t core,
                    std::span<const std::uint32_t> neurons, std::span<const double> rates_hz,
                    Tick t0, Tick t1, RngStream& rng) {
  if (neurons.size() != rates_hz.size()) throw ConfigError("poisson_events: size mismatch");
  std::vector<std::uint32_t> thresholds(neurons.size());
  for (std::size_t i = 0; i < neurons.size(); ++i) {
    const double p = std::clamp(rates_hz[i] / kTicksPerSecond, 0.0, 1.0);
    thresholds[i] = static_cast<std::uint32_t>(std::min(p * 4294967296.0, 4294967295.0));
  }
  const std::size_t start = out.size();
  for (Tick t = t0; t < t1; ++t) {
    for (std::size_t i = 0; i < neurons.size(); ++i) {
      if (thresholds[i] == 0) continue;
      if (rng.next_uniform() < thresholds[i]) {
        out.push_back({static_cast<std::uint32_t>(t), core, neurons[i], 0});
      }
    }
  }
  if (start != 0) sort_events(out);
}

void regular_events(std::vector<EventRecord>& out, std::uint16_t core, std::uint32_t neuron,
                    Tick period, Tick t0, Tick t1, Tick phase) {
  if (period <= 0) throw ConfigError("regular_events: period must be positive");
  for (Tick t = t0 + phase; t < t1; t += period) {
    out.push_back({static_cast<std::uint32_t>(t), core, neuron, 0});
  }
}

void sort_events(std::vector<EventRecord>& events) {
  std::stable_sort(events.begin(), events.end(), [](const EventRecord& a, const EventRecord& b) {
    if (a.tick != b.tick) return a.tick < b.tick;
    if (a.core != b.core) return a.core < b.core;
    return a.neuron < b.neuron;
  });
}

std::vector<Tick> spike_ticks(std::span<const EventRecord> spikes, std::uint16_t core,
                              std::uint32_t neuron) {
  std::vector<Tick> out;
  for (const EventRecord& e : spikes) {
    if (e.core == core && e.neuron == neuron) out.push_back(e.tick);
  }
  return out;
}

}  // namespace nsat::zoo
