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

#include "nsat/zoo/experiments.hpp"

#include <set>

#include "nsat/error.hpp"
#include "nsat/zoo/erbm.hpp"
#include "nsat/zoo/erbp.hpp"
#include "nsat/zoo/mnn.hpp"
#include "nsat/zoo/neural_field.hpp"
#include "nsat/zoo/spike_pattern.hpp"

namespace nsat::zoo {

namespace {

void allow(const ExperimentSpec& spec, std::set<std::string> keys) {
  for (const auto& [k, v] : spec.knobs) {
    if (!keys.count(k)) throw ConfigError("experiment " + spec.name + ": unknown knob '" + k + "'");
  }
}

SimulationConfig erbm_bundle(const ExperimentSpec& spec) {
  ErbmOptions o;
  o.hidden = static_cast<int>(spec.knob("hidden", o.hidden));
  o.seed = spec.seed;
  ErbmNetwork net = build_erbm(o);
  const auto patterns = bars_and_stripes();
  const auto samples = spec.knob("samples", 32);
  if (samples < 1) throw ConfigError("erbm: samples must be positive");
  SimulationConfig cfg = std::move(net.config);
  Tick t = 0;
  for (std::int64_t n = 0; n < samples; ++n) {
    const auto& p = patterns[static_cast<std::size_t>(n) % patterns.size()];
    cfg.external_events.push_back({static_cast<std::uint32_t>(t), 0, net.layout.mod_plus(), 0});
    const auto ev = erbm_clamp_events(net.layout, p, o.visible, t, t + o.data_ticks);
    cfg.external_events.insert(cfg.external_events.end(), ev.begin(), ev.end());
    t += o.data_ticks;
    cfg.external_events.push_back({static_cast<std::uint32_t>(t), 0, net.layout.mod_minus(), 0});
    t += o.model_ticks;
  }
  sort_events(cfg.external_events);
  cfg.ticks = t;
  return cfg;
}

}  // namespace

std::vector<std::string> experiment_names() {
  return {"mnn:tonic",        "mnn:phasic",         "mnn:mixed",           "mnn:class1",
          "mnn:class2",       "mnn:burst",          "neural_field:bump",   "neural_field:track",
          "neural_field:select", "erbp",            "erbm",                "spike_pattern"};
}

SimulationConfig build_experiment(const ExperimentSpec& spec) {
  const std::string& name = spec.name;
  if (name.rfind("mnn:", 0) == 0) {
    allow(spec, {"ticks", "drive"});
    MnnOptions o;
    o.ticks = spec.knob("ticks", o.ticks);
    if (spec.knobs.count("drive")) o.drive = static_cast<int>(spec.knob("drive", 0));
    o.seed = spec.seed;
    return build_mnn(mnn_behavior_from_string(name.substr(4)), o);
  }
  if (name.rfind("neural_field:", 0) == 0) {
    allow(spec, {"ticks", "cores"});
    NeuralFieldOptions o;
    o.ticks = spec.knob("ticks", o.ticks);
    o.cores = static_cast<std::uint32_t>(spec.knob("cores", o.cores));
    o.seed = spec.seed;
    return build_neural_field(field_variant_from_string(name.substr(13)), o);
  }
  if (name == "erbp") {
    allow(spec, {"hidden", "digits"});
    ErbpOptions o;
    o.hidden = static_cast<int>(spec.knob("hidden", o.hidden));
    o.seed = spec.seed;
    ErbpNetwork net = build_erbp(o);
    const DigitSet digits = load_digits("train", static_cast<std::size_t>(spec.knob("digits", 10)));
    net.config.external_events = erbp_schedule(net.layout, o, digits);
    net.config.ticks = static_cast<Tick>(digits.size()) * o.digit_ticks;
    return std::move(net.config);
  }
  if (name == "erbm") {
    allow(spec, {"hidden", "samples"});
    return erbm_bundle(spec);
  }
  if (name == "spike_pattern") {
    allow(spec, {"inputs", "outputs", "train", "test"});
    SpikePatternOptions o;
    o.inputs = static_cast<int>(spec.knob("inputs", o.inputs));
    o.outputs = static_cast<int>(spec.knob("outputs", o.outputs));
    o.train_ticks = spec.knob("train", o.train_ticks);
    o.test_ticks = spec.knob("test", o.test_ticks);
    o.seed = spec.seed;
    return std::move(build_spike_pattern(o).config);
  }
  throw ConfigError("unknown experiment '" + name + "'");
}

}  // namespace nsat::zoo
