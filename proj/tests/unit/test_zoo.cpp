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

#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "nsat/error.hpp"
#include "nsat/zoo/erbm.hpp"
#include "nsat/zoo/erbp.hpp"
#include "nsat/zoo/experiments.hpp"
#include "nsat/zoo/neural_field.hpp"
#include "nsat/zoo/reference.hpp"
#include "nsat/zoo/spike_pattern.hpp"

using namespace nsat;
using namespace nsat::zoo;

TEST_CASE("every named experiment builds a valid config") {
  const std::vector<std::string> small = {
      "mnn:tonic,ticks=100", "mnn:burst,ticks=100", "neural_field:track,cores=5",
      "erbp,hidden=10,digits=2", "erbm,hidden=8,samples=2",
      "spike_pattern,inputs=20,outputs=2,train=2000,test=500"};
  for (const auto& s : small) {
    INFO(s);
    const SimulationConfig cfg = build_experiment(ExperimentSpec::parse(s));
    CHECK_NOTHROW(cfg.validate());
    CHECK(cfg.ticks > 0);
  }
  CHECK(experiment_names().size() == 12);
  CHECK_THROWS_AS(build_experiment(ExperimentSpec::parse("mnn:tonic,color=3")), ConfigError);
  CHECK_THROWS_AS(build_experiment(ExperimentSpec::parse("hopfield")), ConfigError);
}

TEST_CASE("experiment spec parsing") {
  const ExperimentSpec s = ExperimentSpec::parse("erbp,hidden=20,digits=3");
  CHECK(s.name == "erbp");
  CHECK(s.knob("hidden", 0) == 20);
  CHECK(s.knob("epochs", 7) == 7);
  CHECK_THROWS_AS(ExperimentSpec::parse("erbp,hidden"), ConfigError);
}

TEST_CASE("lateral kernels quantize within half a step") {
  for (FieldVariant v : {FieldVariant::kBump, FieldVariant::kTrack, FieldVariant::kSelect}) {
    const FieldKernel k = field_kernel(v);
    CHECK(std::exp2(k.gain()) == k.delta);
    for (int d = -60; d <= 60; ++d) {
      const double w = k.eval(d);
      CHECK(std::abs(k.quantize(w) - w) <= k.delta / 2);
      CHECK(k.weight(d) * k.delta == k.quantize(w));
      CHECK(k.weight(d) >= kWeightMin);
      CHECK(k.weight(d) <= kWeightMax);
    }
  }
}

TEST_CASE("field stimuli") {
  const auto in = field_inputs(FieldVariant::kSelect);
  REQUIRE(in.size() == 1);
  CHECK(in[0].stop == 400);
  for (int i = 0; i < 100; ++i) {
    const bool band = (i >= 20 && i < 40) || (i >= 70 && i < 90);
    CHECK((in[0].rates_hz[static_cast<std::size_t>(i)] == 50.0) == band);
  }
}

TEST_CASE("error-driven learner groups") {
  ErbpOptions o;
  o.hidden = 10;
  const ErbpNetwork net = build_erbp(o);
  const ParamGroup& h = net.config.cores[0].param_groups[0];
  CHECK(h.prob == std::vector<std::uint8_t>{9, 15});
  CHECK(h.Wgain == std::vector<ShiftExponent>{ShiftExponent(3), ShiftExponent(4)});
}

TEST_CASE("bars and stripes") {
  const auto p = bars_and_stripes();
  REQUIRE(p.size() == 32);
  std::set<std::array<std::uint8_t, 18>> distinct(p.begin(), p.end());
  CHECK(distinct.size() == 32);
  std::set<std::vector<std::uint8_t>> images;
  for (const auto& x : p) {
    CHECK(x[16] + x[17] == 1);
    images.insert(std::vector<std::uint8_t>(x.begin(), x.begin() + 16));
  }
  // The blank and the full image carry both labels.
  CHECK(images.size() == 30);
}

TEST_CASE("sampling machine construction") {
  ErbmOptions o;
  o.hidden = 6;
  const ErbmNetwork net = build_erbm(o);
  const CoreConfig& core = net.config.cores[0];
  CHECK(core.param_groups[0].b[0] == -6000);
  CHECK(core.param_groups[1].b[0] == -9500);
  CHECK(core.learning_groups[1].kernel.siac == std::array<std::int8_t, 3>{-1, -1, -1});
  CHECK(net.shared.size() == 6u * 18u);
  for (const auto& [tied, owner] : net.shared) {
    CHECK(core.synapses[tied].tied);
    CHECK(core.synapses[tied].tie == owner);
    CHECK(core.synapses[tied].src.neuron == core.synapses[owner].dst);
    CHECK(core.synapses[tied].dst == core.synapses[owner].src.neuron);
  }
  o.refractory = o.window;
  CHECK_THROWS_WITH_AS(build_erbm(o), doctest::Contains("refractory"), ConfigError);
}

TEST_CASE("sequence learner group") {
  const ParamGroup g = spike_pattern_group(SpikePatternOptions{});
  CHECK(g.b == std::vector<StateWord>{0, -1216, 0, 5});
  CHECK(g.XspikeIncrVal[2] == 1024);
  CHECK(g.Xthup[1] == 8);
}

TEST_CASE("operation report") {
  const std::vector<TracePoint> nsat{{0, 0.9}, {100, 0.4}, {300, 0.2}};
  const std::vector<TracePoint> ref{{0, 0.9}, {50, 0.5}, {1000, 0.2}};
  const std::vector<double> targets{0.5, 0.2, 0.05};
  const auto rows = synop_report(nsat, ref, targets);
  REQUIRE(rows.size() == 3);
  REQUIRE(rows[0].synops.has_value());
  CHECK(*rows[0].synops == doctest::Approx(100 - 100 * 0.1 / 0.5));
  CHECK(rows[0].interpolated);
  CHECK(*rows[0].macs == doctest::Approx(50));
  CHECK(*rows[1].ratio == doctest::Approx(300.0 / 1000.0));
  CHECK_FALSE(rows[2].synops.has_value());
  CHECK_FALSE(rows[2].ratio.has_value());

  const auto solo = synop_report(nsat, {}, targets);
  CHECK(solo[0].synops.has_value());
  CHECK_FALSE(solo[0].macs.has_value());
  CHECK_FALSE(solo[0].ratio.has_value());
  CHECK(format_report(solo).find('\n') != std::string::npos);
}
