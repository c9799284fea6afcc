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

#include <algorithm>
#include <charconv>

#include "nsat/error.hpp"
#include "nsat/iolib.hpp"

namespace nsat {

namespace {

std::int64_t to_int(std::string_view s, std::string_view spec) {
  std::int64_t v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) {
    throw ConfigError("monitor '" + std::string(spec) + "': bad number '" + std::string(s) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

// "3", "0-9", "0-9+12+20-22"
template <typename T>
std::vector<T> id_list(std::string_view s, std::string_view spec) {
  std::vector<T> out;
  for (auto part : split(s, '+')) {
    const auto dash = part.find('-');
    if (dash == std::string_view::npos) {
      out.push_back(static_cast<T>(to_int(part, spec)));
      continue;
    }
    const auto lo = to_int(part.substr(0, dash), spec);
    const auto hi = to_int(part.substr(dash + 1), spec);
    if (lo > hi || lo < 0) throw ConfigError("monitor '" + std::string(spec) + "': bad range");
    for (auto v = lo; v <= hi; ++v) out.push_back(static_cast<T>(v));
  }
  return out;
}

bool selected(const MonitorSpec& m, std::size_t core, Tick t) {
  return (m.core < 0 || static_cast<std::size_t>(m.core) == core) && t % m.every == 0;
}

}  // namespace

MonitorSpec parse_monitor_spec(std::string_view text) {
  const auto parts = split(text, ',');
  MonitorSpec m;
  const auto kind = parts[0];
  if (kind == "spikes") {
    m.what = MonitorSpec::Kind::kSpikes;
  } else if (kind == "states") {
    m.what = MonitorSpec::Kind::kStates;
  } else if (kind == "weights") {
    m.what = MonitorSpec::Kind::kWeights;
  } else if (kind == "stats") {
    m.what = MonitorSpec::Kind::kStats;
  } else {
    throw ConfigError("monitor '" + std::string(text) +
                      "': kind must be spikes, states, weights or stats");
  }
  for (std::size_t i = 1; i < parts.size(); ++i) {
    const auto eq = parts[i].find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("monitor '" + std::string(text) + "': expected key=value");
    }
    const auto key = parts[i].substr(0, eq);
    const auto val = parts[i].substr(eq + 1);
    if (key == "core") {
      m.core = static_cast<std::int32_t>(to_int(val, text));
    } else if (key == "neurons") {
      m.neurons = id_list<std::uint32_t>(val, text);
    } else if (key == "components") {
      m.components = id_list<std::int32_t>(val, text);
    } else if (key == "every") {
      m.every = to_int(val, text);
      if (m.every < 1) throw ConfigError("monitor '" + std::string(text) + "': every must be >= 1");
    } else {
      throw ConfigError("monitor '" + std::string(text) + "': unknown key '" + std::string(key) + "'");
    }
  }
  return m;
}

MonitorWriter::MonitorWriter(const std::filesystem::path& dir, std::vector<MonitorSpec> specs)
    : specs_(std::move(specs)) {
  auto open = [&](std::ofstream& f, const char* name, const char* header) {
    if (f.is_open()) return;
    f.open(dir / name, std::ios::binary | std::ios::trunc);
    if (!f) throw RuntimeError("cannot write " + (dir / name).string());
    f << header;
  };
  for (const auto& m : specs_) {
    switch (m.what) {
      case MonitorSpec::Kind::kStates:
        open(states_, "states.tsv", "tick\tcore\tneuron\tcomponent\tvalue\n");
        break;
      case MonitorSpec::Kind::kWeights:
        open(weights_, "weights.tsv", "tick\tcore\trecord\tsrc_core\tsrc\tdst\tcomponent\tweight\n");
        break;
      case MonitorSpec::Kind::kSpikes:
        open(spikes_, "spikes.tsv", "tick\tcore\tneuron\n");
        break;
      case MonitorSpec::Kind::kStats:
        open(stats_, "stats.tsv", "tick\tsynops\tspikes\tweight_updates\tevents_delivered\n");
        break;
    }
  }
}

void MonitorWriter::on_tick_end(const Simulator& sim, Tick t) {
  const auto& cfg = sim.config();
  for (const auto& m : specs_) {
    switch (m.what) {
      case MonitorSpec::Kind::kStates:
        for (std::size_t c = 0; c < sim.num_cores(); ++c) {
          if (!selected(m, c, t)) continue;
          const CoreConfig& core = cfg.cores[c];
          auto emit = [&](std::uint32_t n) {
            const NeuronState& s = sim.state(c, n);
            if (m.components.empty()) {
              for (int i = 0; i < core.k; ++i) {
                states_ << t << '\t' << c << '\t' << n << '\t' << i << '\t'
                        << s.x[static_cast<std::size_t>(i)] << '\n';
              }
            } else {
              for (auto i : m.components) {
                states_ << t << '\t' << c << '\t' << n << '\t' << i << '\t'
                        << s.x[static_cast<std::size_t>(i)] << '\n';
              }
            }
          };
          if (m.neurons.empty()) {
            for (std::uint32_t n = 0; n < core.n_internal; ++n) emit(n);
          } else {
            for (auto n : m.neurons) emit(n);
          }
        }
        break;
      case MonitorSpec::Kind::kWeights:
        for (std::size_t c = 0; c < sim.num_cores(); ++c) {
          if (!selected(m, c, t)) continue;
          const auto& recs = cfg.cores[c].synapses;
          for (std::size_t r = 0; r < recs.size(); ++r) {
            if (!m.neurons.empty() &&
                std::find(m.neurons.begin(), m.neurons.end(), recs[r].dst) == m.neurons.end()) {
              continue;
            }
            weights_ << t << '\t' << c << '\t' << r << '\t' << recs[r].src.core << '\t'
                     << recs[r].src.neuron << '\t' << recs[r].dst << '\t'
                     << static_cast<int>(recs[r].component) << '\t'
                     << static_cast<int>(sim.record_weight(c, r)) << '\n';
          }
        }
        break;
      case MonitorSpec::Kind::kSpikes: {
        const auto& all = sim.spikes();
        for (std::size_t i = spikes_seen_; i < all.size(); ++i) {
          const auto& e = all[i];
          if (m.core >= 0 && e.core != m.core) continue;
          if (!m.neurons.empty() &&
              std::find(m.neurons.begin(), m.neurons.end(), e.neuron) == m.neurons.end()) {
            continue;
          }
          spikes_ << e.tick << '\t' << e.core << '\t' << e.neuron << '\n';
        }
        break;
      }
      case MonitorSpec::Kind::kStats:
        if (t % m.every == 0) {
          const CoreStats s = sim.stats().total();
          stats_ << t << '\t' << s.synops << '\t' << s.spikes << '\t' << s.weight_updates << '\t'
                 << s.events_delivered << '\n';
        }
        break;
    }
  }
  spikes_seen_ = sim.spikes().size();
}

void MonitorWriter::flush() {
  for (auto* f : {&states_, &weights_, &spikes_, &stats_}) {
    if (f->is_open()) {
      f->flush();
      if (!*f) throw RuntimeError("monitor output write failed");
    }
  }
}

}  // namespace nsat
