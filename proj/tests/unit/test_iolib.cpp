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

#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "nsat/error.hpp"
#include "nsat/iolib.hpp"
#include "nsat/rng.hpp"
#include "nsat/zoo/mnn.hpp"
#include "nsat/zoo/neural_field.hpp"

namespace fs = std::filesystem;
using namespace nsat;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("nsat_unit_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

std::string replace_once(std::string s, const std::string& from, const std::string& to) {
  const auto pos = s.find(from);
  REQUIRE(pos != std::string::npos);
  return s.replace(pos, from.size(), to);
}

int cli(std::vector<std::string> args) {
  args.insert(args.begin(), "nsat");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data());
}

}  // namespace

TEST_CASE("tonic config parses back to the built config") {
  const SimulationConfig built = zoo::build_mnn(zoo::MnnBehavior::kTonic);
  const std::string text = emit_config(built);
  const SimulationConfig parsed = parse_config(text, ".");
  CHECK(parsed.cores.size() == 1);
  CHECK(parsed.cores[0].k == 4);
  CHECK(parsed.cores[0].param_groups.size() == 1);
  CHECK(parsed == built);
}

TEST_CASE("config errors point at the offending field") {
  const std::string text = emit_config(zoo::build_mnn(zoo::MnnBehavior::kTonic));
  const std::string bad = replace_once(text, "- [-16, -7, -16, -16]", "- [-16, -7, -16]");
  CHECK_THROWS_WITH_AS(parse_config(bad, ".", "tonic.yaml"), doctest::Contains("tonic.yaml:"),
                       ConfigError);
  const std::string group = replace_once(text, "param_group_of: 0", "param_group_of: 3");
  CHECK_THROWS_AS(parse_config(group, "."), ConfigError);
  CHECK_THROWS_AS(parse_config("ticks: [", "."), ConfigError);
}

TEST_CASE("a missing seed falls back to the default with a warning") {
  std::string text = emit_config(zoo::build_mnn(zoo::MnnBehavior::kTonic));
  text = replace_once(text, "rng: {backend: software, seed: 24301}", "rng: {backend: software}");
  std::vector<std::string> warnings;
  const SimulationConfig cfg = parse_config(text, ".", "<test>", &warnings);
  CHECK(cfg.seed == kDefaultSeed);
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].find("seed") != std::string::npos);
}

TEST_CASE("event files round-trip") {
  std::stringstream empty;
  write_events(empty, {});
  CHECK(read_events(empty).empty());

  RngStream rng(RngBackend::kSoftware, 77, 0);
  std::vector<EventRecord> ev(1000000);
  std::uint32_t tick = 0;
  for (auto& e : ev) {
    tick += rng.next_uniform() % 3;
    e = {tick, static_cast<std::uint16_t>(rng.next_uniform()), rng.next_uniform(),
         static_cast<std::uint16_t>(rng.next_uniform())};
  }
  const fs::path dir = scratch("events");
  write_events(dir / "a.evt", ev);
  CHECK(fs::file_size(dir / "a.evt") == 16 + ev.size() * kEventRecordBytes);
  CHECK(read_events(dir / "a.evt") == ev);
}

TEST_CASE("a corrupted event record is reported by index") {
  std::vector<EventRecord> ev;
  for (std::uint32_t t = 0; t < 10; ++t) ev.push_back({t * 10, 0, t, 0});
  std::stringstream buf;
  write_events(buf, ev);
  std::string bytes = buf.str();
  bytes[16 + 6 * kEventRecordBytes + 3] = '\x00';
  bytes[16 + 6 * kEventRecordBytes] = '\x01';
  std::stringstream in(bytes);
  CHECK_THROWS_WITH_AS(read_events(in), doctest::Contains("record 6"), RuntimeError);
  std::stringstream cut(bytes.substr(0, 16 + 4 * kEventRecordBytes + 5));
  CHECK_THROWS_WITH_AS(read_events(cut), doctest::Contains("record 4"), RuntimeError);
  std::stringstream magic("XXXX");
  CHECK_THROWS_AS(read_events(magic), RuntimeError);
}

TEST_CASE("synapse sidecars round-trip") {
  std::vector<SynapseRecord> recs;
  for (std::uint32_t i = 0; i < 500; ++i) {
    SynapseRecord r;
    r.src = {static_cast<std::uint16_t>(i % 3), i * 7};
    r.dst = i;
    r.component = static_cast<std::uint8_t>(i % 4);
    r.weight = static_cast<std::int8_t>(i);
    r.plastic = i % 2 == 0;
    r.tied = i % 5 == 1;
    r.tie = r.tied ? i - 1 : 0;
    recs.push_back(r);
  }
  const fs::path dir = scratch("syn");
  write_synapses(dir / "s.syn", recs);
  CHECK(read_synapses(dir / "s.syn") == recs);
}

TEST_CASE("configs with sidecars save and load") {
  zoo::NeuralFieldOptions o;
  o.cores = 2;
  const SimulationConfig cfg = zoo::build_neural_field(zoo::FieldVariant::kBump, o);
  const fs::path dir = scratch("save");
  save_config(cfg, dir / "config.yaml");
  SimulationConfig back = load_config(dir / "config.yaml");
  REQUIRE(back.cores.size() == cfg.cores.size());
  for (std::size_t c = 0; c < cfg.cores.size(); ++c) {
    CHECK(back.cores[c].param_groups == cfg.cores[c].param_groups);
    CHECK(back.cores[c].group_of == cfg.cores[c].group_of);
    CHECK(back.cores[c].lgroup_of == cfg.cores[c].lgroup_of);
    CHECK(back.cores[c].delay_of == cfg.cores[c].delay_of);
    CHECK(back.cores[c].synapses == cfg.cores[c].synapses);
  }
  CHECK(back.external_events == cfg.external_events);
  CHECK(back.seed == cfg.seed);
}

TEST_CASE("monitor specs") {
  const MonitorSpec m = parse_monitor_spec("states,core=1,neurons=0-2+7,components=0+1,every=5");
  CHECK(m.what == MonitorSpec::Kind::kStates);
  CHECK(m.core == 1);
  CHECK(m.neurons == std::vector<std::uint32_t>{0, 1, 2, 7});
  CHECK(m.components == std::vector<std::int32_t>{0, 1});
  CHECK(m.every == 5);
  CHECK(parse_monitor_spec("spikes").neurons.empty());
  CHECK_THROWS_AS(parse_monitor_spec("voltages"), ConfigError);
}

TEST_CASE("command line runner") {
  CHECK(cli({"--bogus"}) == 2);
  CHECK(cli({"--config", "/nonexistent/config.yaml"}) == 2);

  const fs::path dir = scratch("cli");
  save_config(zoo::build_mnn(zoo::MnnBehavior::kTonic), dir / "config.yaml");
  const std::string cfg = (dir / "config.yaml").string();
  REQUIRE(cli({"--config", cfg, "--out", (dir / "one").string(), "--threads", "1"}) == 0);
  REQUIRE(cli({"--config", cfg, "--out", (dir / "four").string(), "--threads", "4"}) == 0);
  const std::string a = slurp(dir / "one" / "spikes.evt");
  CHECK(a.size() > 16);
  CHECK(a == slurp(dir / "four" / "spikes.evt"));
  CHECK(read_events(dir / "one" / "spikes.evt").size() > 100);
}
