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

#include "nsat/config.hpp"

#include <string>

#include "nsat/error.hpp"

namespace nsat {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ConfigError(where + ": " + what);
}

std::string at(const std::string& base, std::size_t i) {
  return base + "[" + std::to_string(i) + "]";
}

}  // namespace

void fill_defaults(CoreConfig& core) {
  if (core.group_of.empty()) core.group_of.assign(core.n_internal, 0);
  if (core.lgroup_of.empty()) {
    core.lgroup_of.assign(core.n_internal, core.learning_groups.empty() ? -1 : 0);
  }
  if (core.delay_of.empty()) core.delay_of.assign(core.size(), 0);
}

void SimulationConfig::validate() const {
  if (ticks <= 0) fail("ticks", "must be positive");
  if (max_delay < 0 || max_delay > 65535) fail("max_delay", "must be in [0, 65535]");
  if (cores.empty()) fail("cores", "at least one core is required");
  if (cores.size() > 65536) fail("cores", "at most 65536 cores");
  if (gate.period < 0 || gate.off_ticks < 0) fail("learning.gate", "must be non-negative");

  for (std::size_t c = 0; c < cores.size(); ++c) {
    const CoreConfig& core = cores[c];
    const std::string where = at("cores", c);
    if (core.k < 1 || core.k > kMaxStates) fail(where + ".states", "must be in [1, 8]");
    if (core.param_groups.empty() || core.param_groups.size() > kMaxGroups) {
      fail(where + ".param_groups", "between 1 and 8 groups are required");
    }
    if (core.learning_groups.size() > kMaxGroups) {
      fail(where + ".learning_groups", "at most 8 groups");
    }
    for (std::size_t g = 0; g < core.param_groups.size(); ++g) {
      const ParamGroup& pg = core.param_groups[g];
      try {
        pg.validate();
      } catch (const ConfigError& e) {
        fail(at(where + ".param_groups", g), e.what());
      }
      if (pg.k != core.k) {
        fail(at(where + ".param_groups", g), "has " + std::to_string(pg.k) +
                                                 " components but the core has " +
                                                 std::to_string(core.k));
      }
    }
    for (std::size_t g = 0; g < core.learning_groups.size(); ++g) {
      try {
        core.learning_groups[g].validate(core.k);
      } catch (const ConfigError& e) {
        fail(at(where + ".learning_groups", g), e.what());
      }
    }
    if (core.group_of.size() != core.n_internal) {
      fail(where + ".param_group_of", "expected " + std::to_string(core.n_internal) + " entries");
    }
    for (std::size_t n = 0; n < core.group_of.size(); ++n) {
      if (core.group_of[n] >= core.param_groups.size()) {
        fail(at(where + ".param_group_of", n),
             "references missing param group " + std::to_string(core.group_of[n]));
      }
    }
    if (core.lgroup_of.size() != core.n_internal) {
      fail(where + ".learning_group_of", "expected " + std::to_string(core.n_internal) + " entries");
    }
    for (std::size_t n = 0; n < core.lgroup_of.size(); ++n) {
      const auto l = core.lgroup_of[n];
      if (l < -1 || l >= static_cast<int>(core.learning_groups.size())) {
        fail(at(where + ".learning_group_of", n),
             "references missing learning group " + std::to_string(l));
      }
    }
    if (core.delay_of.size() != core.size()) {
      fail(where + ".delays", "expected " + std::to_string(core.size()) + " entries");
    }
    for (std::size_t n = 0; n < core.delay_of.size(); ++n) {
      if (core.delay_of[n] > max_delay) {
        fail(at(where + ".delays", n), "exceeds max_delay " + std::to_string(max_delay));
      }
    }
    for (std::size_t s = 0; s < core.synapses.size(); ++s) {
      const SynapseRecord& r = core.synapses[s];
      const std::string sw = at(where + ".synapses", s);
      if (r.dst >= core.n_internal) {
        fail(sw, "target " + std::to_string(r.dst) + " is not an internal neuron of this core");
      }
      if (r.component >= core.k) {
        fail(sw, "component " + std::to_string(r.component) + " out of range");
      }
      if (r.src.core >= cores.size()) {
        fail(sw, "source core " + std::to_string(r.src.core) + " does not exist");
      }
      if (r.src.neuron >= cores[r.src.core].size()) {
        fail(sw, "source neuron " + std::to_string(r.src.neuron) + " does not exist on core " +
                     std::to_string(r.src.core));
      }
      if (r.tied && (r.tie >= core.synapses.size() || core.synapses[r.tie].tied)) {
        fail(sw, "tie must reference an untied record of the same core");
      }
    }
  }

  std::uint32_t prev = 0;
  for (std::size_t i = 0; i < external_events.size(); ++i) {
    const EventRecord& e = external_events[i];
    const std::string where = at("external_events", i);
    if (e.tick < prev) fail(where, "tick " + std::to_string(e.tick) + " precedes previous event");
    prev = e.tick;
    if (e.core >= cores.size()) fail(where, "core " + std::to_string(e.core) + " does not exist");
    const CoreConfig& core = cores[e.core];
    if (e.neuron < core.n_internal || e.neuron >= core.size()) {
      fail(where, "neuron " + std::to_string(e.neuron) + " is not an external neuron of core " +
                      std::to_string(e.core));
    }
  }

  for (std::size_t i = 0; i < monitors.size(); ++i) {
    const MonitorSpec& m = monitors[i];
    const std::string where = at("monitors", i);
    if (m.every < 1) fail(where + ".every", "must be at least 1");
    if (m.core >= static_cast<std::int32_t>(cores.size()) || m.core < -1) {
      fail(where + ".core", "does not exist");
    }
    for (std::size_t c = 0; c < cores.size(); ++c) {
      if (m.core != -1 && static_cast<std::size_t>(m.core) != c) continue;
      for (auto n : m.neurons) {
        if (n >= cores[c].n_internal) {
          fail(where + ".neurons", "neuron " + std::to_string(n) + " out of range on core " +
                                       std::to_string(c));
        }
      }
      for (auto comp : m.components) {
        if (comp < 0 || comp >= cores[c].k) {
          fail(where + ".components", "component " + std::to_string(comp) + " out of range");
        }
      }
    }
  }
}

}  // namespace nsat
