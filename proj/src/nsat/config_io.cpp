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

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "nsat/error.hpp"
#include "nsat/iolib.hpp"

namespace nsat {

namespace fs = std::filesystem;

namespace {

std::string idx(const std::string& base, std::size_t i) {
  return base + "[" + std::to_string(i) + "]";
}

class Parser {
 public:
  Parser(std::string name, fs::path base, std::vector<std::string>* warnings)
      : name_(std::move(name)), base_(std::move(base)), warnings_(warnings) {}

  SimulationConfig parse(const YAML::Node& root);

 private:
  [[noreturn]] void fail(const YAML::Node& n, const std::string& path, const std::string& msg) {
    fail_at(n.IsDefined() ? n.Mark() : YAML::Mark::null_mark(), path, msg);
  }

  [[noreturn]] void fail_at(const YAML::Mark& m, const std::string& path, const std::string& msg) {
    std::ostringstream os;
    os << name_;
    if (!m.is_null()) os << ":" << m.line + 1 << ":" << m.column + 1;
    os << ": " << path << ": " << msg;
    throw ConfigError(os.str());
  }

  void note(const YAML::Node& n, const std::string& path) {
    if (n.IsDefined()) marks_[path] = n.Mark();
  }

  void expect_map(const YAML::Node& n, const std::string& path,
                  std::initializer_list<std::string_view> allowed) {
    if (!n.IsMap()) fail(n, path, "expected a mapping");
    note(n, path);
    for (const auto& kv : n) {
      const auto key = kv.first.as<std::string>();
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
        fail(kv.first, path.empty() ? key : path + "." + key, "unknown field");
      }
    }
  }

  std::int64_t integer(const YAML::Node& n, const std::string& path, std::int64_t lo,
                       std::int64_t hi) {
    if (!n.IsScalar()) fail(n, path, "expected an integer");
    std::int64_t v;
    try {
      v = n.as<std::int64_t>();
    } catch (const YAML::Exception&) {
      fail(n, path, "expected an integer, got '" + n.Scalar() + "'");
    }
    if (v < lo || v > hi) {
      fail(n, path, std::to_string(v) + " outside [" + std::to_string(lo) + ", " +
                        std::to_string(hi) + "]");
    }
    note(n, path);
    return v;
  }

  bool boolean(const YAML::Node& n, const std::string& path) {
    if (!n.IsScalar()) fail(n, path, "expected a boolean");
    const std::string& s = n.Scalar();
    if (s == "0") return false;
    if (s == "1") return true;
    try {
      return n.as<bool>();
    } catch (const YAML::Exception&) {
      fail(n, path, "expected a boolean, got '" + s + "'");
    }
  }

  std::string text(const YAML::Node& n, const std::string& path) {
    if (!n.IsScalar()) fail(n, path, "expected a string");
    return n.Scalar();
  }

  template <typename T>
  std::vector<T> ints(const YAML::Node& n, const std::string& path, std::size_t len,
                      std::int64_t lo, std::int64_t hi) {
    if (!n.IsSequence()) fail(n, path, "expected a list");
    if (len != 0 && n.size() != len) {
      fail(n, path, "expected " + std::to_string(len) + " entries, got " + std::to_string(n.size()));
    }
    note(n, path);
    std::vector<T> out;
    for (std::size_t i = 0; i < n.size(); ++i) {
      out.push_back(static_cast<T>(integer(n[i], idx(path, i), lo, hi)));
    }
    return out;
  }

  std::vector<ShiftExponent> exps(const YAML::Node& n, const std::string& path, std::size_t len) {
    std::vector<ShiftExponent> out;
    for (auto v : ints<int>(n, path, len, ShiftExponent::kMin, ShiftExponent::kMax)) {
      out.emplace_back(v);
    }
    return out;
  }

  std::vector<std::uint8_t> bools(const YAML::Node& n, const std::string& path, std::size_t len) {
    if (!n.IsSequence()) fail(n, path, "expected a list");
    if (n.size() != len) {
      fail(n, path, "expected " + std::to_string(len) + " entries, got " + std::to_string(n.size()));
    }
    note(n, path);
    std::vector<std::uint8_t> out;
    for (std::size_t i = 0; i < n.size(); ++i) out.push_back(boolean(n[i], idx(path, i)) ? 1 : 0);
    return out;
  }

  template <typename T>
  std::vector<T> matrix(const YAML::Node& n, const std::string& path, int k, std::int64_t lo,
                        std::int64_t hi) {
    if (!n.IsSequence() || n.size() != static_cast<std::size_t>(k)) {
      fail(n, path, "expected a " + std::to_string(k) + "x" + std::to_string(k) + " matrix, got " +
                        std::to_string(n.IsSequence() ? n.size() : 0) + " rows");
    }
    note(n, path);
    std::vector<T> out;
    for (int i = 0; i < k; ++i) {
      const YAML::Node row = n[static_cast<std::size_t>(i)];
      const std::string rp = idx(path, static_cast<std::size_t>(i));
      if (!row.IsSequence() || row.size() != static_cast<std::size_t>(k)) {
        fail(row, rp, "expected " + std::to_string(k) + " columns, got " +
                          std::to_string(row.IsSequence() ? row.size() : 0) + " (matrix must be " +
                          std::to_string(k) + "x" + std::to_string(k) + ")");
      }
      for (auto v : ints<std::int64_t>(row, rp, 0, lo, hi)) out.push_back(static_cast<T>(v));
    }
    return out;
  }

  // Scalar broadcast or one entry per neuron.
  template <typename T>
  std::vector<T> per_neuron(const YAML::Node& n, const std::string& path, std::size_t count,
                            std::int64_t lo, std::int64_t hi) {
    if (n.IsScalar()) {
      return std::vector<T>(count, static_cast<T>(integer(n, path, lo, hi)));
    }
    return ints<T>(n, path, count, lo, hi);
  }

  ParamGroup param_group(const YAML::Node& n, const std::string& path, int k);
  LearningGroup learning_group(const YAML::Node& n, const std::string& path, int k);
  CoreConfig core(const YAML::Node& n, const std::string& path);
  MonitorSpec monitor(const YAML::Node& n, const std::string& path);
  std::vector<SynapseRecord> synapses(const YAML::Node& n, const std::string& path,
                                      std::string& file);

  void rethrow_with_location(const ConfigError& e);

  std::string name_;
  fs::path base_;
  std::vector<std::string>* warnings_;
  std::map<std::string, YAML::Mark> marks_;
};

ParamGroup Parser::param_group(const YAML::Node& n, const std::string& path, int k) {
  expect_map(n, path,
             {"A", "sA", "b", "sigma", "prob", "theta", "Xreset", "XresetOn", "XspikeIncrVal",
              "Xthlo", "Xthup", "Xinit", "Wgain", "modulator", "spike_enabled", "adaptive_theta",
              "reset_enabled", "refractory"});
  ParamGroup g = ParamGroup::defaults(k);
  const auto kk = static_cast<std::size_t>(k);
  auto p = [&](const char* key) { return path + "." + key; };
  if (n["A"]) {
    g.A.clear();
    for (auto v : matrix<int>(n["A"], p("A"), k, ShiftExponent::kMin, ShiftExponent::kMax)) {
      g.A.emplace_back(v);
    }
  }
  if (n["sA"]) g.sA = matrix<std::int8_t>(n["sA"], p("sA"), k, -1, 1);
  if (n["b"]) g.b = ints<StateWord>(n["b"], p("b"), kk, kStateMin, kStateMax);
  if (n["sigma"]) g.sigma = exps(n["sigma"], p("sigma"), kk);
  if (n["prob"]) g.prob = ints<std::uint8_t>(n["prob"], p("prob"), kk, 0, 15);
  if (n["theta"]) g.theta = ints<StateWord>(n["theta"], p("theta"), kk, kStateMin, kStateMax);
  if (n["Xreset"]) g.Xreset = ints<StateWord>(n["Xreset"], p("Xreset"), kk, kStateMin, kStateMax);
  if (n["XresetOn"]) g.XresetOn = bools(n["XresetOn"], p("XresetOn"), kk);
  if (n["XspikeIncrVal"]) {
    g.XspikeIncrVal =
        ints<StateWord>(n["XspikeIncrVal"], p("XspikeIncrVal"), kk, kStateMin, kStateMax);
  }
  if (n["Xthlo"]) g.Xthlo = ints<StateWord>(n["Xthlo"], p("Xthlo"), kk, kStateMin, kStateMax);
  if (n["Xthup"]) g.Xthup = ints<StateWord>(n["Xthup"], p("Xthup"), kk, kStateMin, kStateMax);
  if (n["Xinit"]) g.Xinit = ints<StateWord>(n["Xinit"], p("Xinit"), kk, kStateMin, kStateMax);
  if (n["Wgain"]) g.Wgain = exps(n["Wgain"], p("Wgain"), kk);
  if (n["modulator"]) g.modulator = static_cast<int>(integer(n["modulator"], p("modulator"), 0, k - 1));
  if (n["spike_enabled"]) g.spike_enabled = boolean(n["spike_enabled"], p("spike_enabled"));
  if (n["adaptive_theta"]) g.adaptive_theta = boolean(n["adaptive_theta"], p("adaptive_theta"));
  if (n["reset_enabled"]) g.reset_enabled = boolean(n["reset_enabled"], p("reset_enabled"));
  if (n["refractory"]) {
    g.refractory = static_cast<int>(integer(n["refractory"], p("refractory"), 0, 1 << 30));
  }
  return g;
}

LearningGroup Parser::learning_group(const YAML::Node& n, const std::string& path, int k) {
  expect_map(n, path,
             {"rule", "plastic", "tca", "hica", "sica", "slca", "tac", "hiac", "siac", "slac",
              "mode", "rounding_bits", "wmin", "wmax", "gate"});
  LearningGroup lg = LearningGroup::defaults(k);
  auto p = [&](const char* key) { return path + "." + key; };
  if (n["rule"]) {
    const std::string r = text(n["rule"], p("rule"));
    if (r == "stdp") {
      lg.rule = LearningRule::kStdp;
    } else if (r == "state") {
      lg.rule = LearningRule::kState;
    } else {
      fail(n["rule"], p("rule"), "unknown rule '" + r + "' (expected stdp or state)");
    }
  }
  if (n["plastic"]) lg.plastic = bools(n["plastic"], p("plastic"), static_cast<std::size_t>(k));
  auto arr2 = [&](const char* key, std::array<std::int32_t, 2>& dst) {
    if (!n[key]) return;
    auto v = ints<std::int32_t>(n[key], p(key), 2, -65535, 65535);
    dst = {v[0], v[1]};
  };
  auto lev3 = [&](const char* key, std::array<ShiftExponent, 3>& dst) {
    if (!n[key]) return;
    auto v = exps(n[key], p(key), 3);
    dst = {v[0], v[1], v[2]};
  };
  auto sgn3 = [&](const char* key, std::array<std::int8_t, 3>& dst) {
    if (!n[key]) return;
    auto v = ints<std::int8_t>(n[key], p(key), 3, -1, 1);
    dst = {v[0], v[1], v[2]};
  };
  arr2("tca", lg.kernel.tca);
  arr2("tac", lg.kernel.tac);
  lev3("hica", lg.kernel.hica);
  lev3("hiac", lg.kernel.hiac);
  sgn3("sica", lg.kernel.sica);
  sgn3("siac", lg.kernel.siac);
  if (n["slca"]) lg.kernel.slca = static_cast<std::int32_t>(integer(n["slca"], p("slca"), 0, 31));
  if (n["slac"]) lg.kernel.slac = static_cast<std::int32_t>(integer(n["slac"], p("slac"), 0, 31));
  if (n["mode"]) {
    const std::string m = text(n["mode"], p("mode"));
    if (m == "linear") {
      lg.kernel.mode = KernelMode::kLinear;
    } else if (m == "exponential") {
      lg.kernel.mode = KernelMode::kExponential;
    } else {
      fail(n["mode"], p("mode"), "unknown mode '" + m + "' (expected linear or exponential)");
    }
  }
  if (n["rounding_bits"]) {
    lg.rounding_bits = static_cast<std::int32_t>(integer(n["rounding_bits"], p("rounding_bits"), 0, 16));
  }
  if (n["wmin"]) lg.wmin = static_cast<std::int32_t>(integer(n["wmin"], p("wmin"), kWeightMin, kWeightMax));
  if (n["wmax"]) lg.wmax = static_cast<std::int32_t>(integer(n["wmax"], p("wmax"), kWeightMin, kWeightMax));
  if (const YAML::Node gate = n["gate"]) {
    const std::string gp = p("gate");
    expect_map(gate, gp, {"component", "lo", "hi"});
    lg.gate_enabled = true;
    if (gate["component"]) {
      lg.gate_component = static_cast<std::int32_t>(integer(gate["component"], gp + ".component", 0, k - 1));
    }
    if (gate["lo"]) lg.gate_lo = static_cast<std::int32_t>(integer(gate["lo"], gp + ".lo", kStateMin, kStateMax));
    if (gate["hi"]) lg.gate_hi = static_cast<std::int32_t>(integer(gate["hi"], gp + ".hi", kStateMin, kStateMax));
  }
  return lg;
}

std::vector<SynapseRecord> Parser::synapses(const YAML::Node& n, const std::string& path,
                                            std::string& file) {
  note(n, path);
  if (n.IsMap()) {
    expect_map(n, path, {"file"});
    if (!n["file"]) fail(n, path, "missing 'file'");
    file = text(n["file"], path + ".file");
    try {
      return read_synapses(base_ / file);
    } catch (const RuntimeError& e) {
      fail(n["file"], path + ".file", e.what());
    }
  }
  if (!n.IsSequence()) fail(n, path, "expected a list of records or {file: NAME}");
  std::vector<SynapseRecord> out;
  out.reserve(n.size());
  for (std::size_t i = 0; i < n.size(); ++i) {
    const YAML::Node r = n[i];
    const std::string rp = idx(path, i);
    if (!r.IsSequence() || r.size() < 5 || r.size() > 7) {
      fail(r, rp, "expected [src_core, src, dst, component, weight, plastic?, tie?]");
    }
    note(r, rp);
    SynapseRecord s;
    s.src.core = static_cast<std::uint16_t>(integer(r[0], rp + "[0]", 0, 65535));
    s.src.neuron = static_cast<std::uint32_t>(integer(r[1], rp + "[1]", 0, 0xffffffffLL));
    s.dst = static_cast<std::uint32_t>(integer(r[2], rp + "[2]", 0, 0xffffffffLL));
    s.component = static_cast<std::uint8_t>(integer(r[3], rp + "[3]", 0, kMaxStates - 1));
    s.weight = static_cast<std::int8_t>(integer(r[4], rp + "[4]", kWeightMin, kWeightMax));
    if (r.size() > 5) s.plastic = boolean(r[5], rp + "[5]");
    if (r.size() > 6) {
      const auto t = integer(r[6], rp + "[6]", -1, 0xffffffffLL);
      s.tied = t >= 0;
      s.tie = t >= 0 ? static_cast<std::uint32_t>(t) : 0;
    }
    out.push_back(s);
  }
  return out;
}

CoreConfig Parser::core(const YAML::Node& n, const std::string& path) {
  expect_map(n, path,
             {"states", "internal", "external", "param_groups", "learning_groups",
              "param_group_of", "learning_group_of", "delays", "synapses"});
  CoreConfig c;
  auto p = [&](const char* key) { return path + "." + key; };
  if (!n["states"]) fail(n, p("states"), "missing");
  c.k = static_cast<int>(integer(n["states"], p("states"), 1, kMaxStates));
  if (!n["internal"]) fail(n, p("internal"), "missing");
  c.n_internal = static_cast<std::uint32_t>(integer(n["internal"], p("internal"), 0, 1 << 24));
  if (n["external"]) {
    c.n_external = static_cast<std::uint32_t>(integer(n["external"], p("external"), 0, 1 << 24));
  }
  const YAML::Node pgs = n["param_groups"];
  if (!pgs || !pgs.IsSequence()) fail(n, p("param_groups"), "expected a list of groups");
  note(pgs, p("param_groups"));
  for (std::size_t i = 0; i < pgs.size(); ++i) {
    c.param_groups.push_back(param_group(pgs[i], idx(p("param_groups"), i), c.k));
  }
  if (const YAML::Node lgs = n["learning_groups"]) {
    if (!lgs.IsSequence()) fail(lgs, p("learning_groups"), "expected a list of groups");
    note(lgs, p("learning_groups"));
    for (std::size_t i = 0; i < lgs.size(); ++i) {
      c.learning_groups.push_back(learning_group(lgs[i], idx(p("learning_groups"), i), c.k));
    }
  }
  if (n["param_group_of"]) {
    c.group_of = per_neuron<std::uint8_t>(n["param_group_of"], p("param_group_of"), c.n_internal,
                                          0, 255);
  }
  if (n["learning_group_of"]) {
    c.lgroup_of = per_neuron<std::int16_t>(n["learning_group_of"], p("learning_group_of"),
                                           c.n_internal, -1, 255);
  }
  if (n["delays"]) c.delay_of = per_neuron<std::uint16_t>(n["delays"], p("delays"), c.size(), 0, 65535);
  if (n["synapses"]) c.synapses = synapses(n["synapses"], p("synapses"), c.synapse_file);
  fill_defaults(c);
  return c;
}

MonitorSpec Parser::monitor(const YAML::Node& n, const std::string& path) {
  expect_map(n, path, {"what", "core", "neurons", "components", "every"});
  MonitorSpec m;
  if (!n["what"]) fail(n, path + ".what", "missing");
  const std::string w = text(n["what"], path + ".what");
  if (w == "spikes") {
    m.what = MonitorSpec::Kind::kSpikes;
  } else if (w == "states") {
    m.what = MonitorSpec::Kind::kStates;
  } else if (w == "weights") {
    m.what = MonitorSpec::Kind::kWeights;
  } else if (w == "stats") {
    m.what = MonitorSpec::Kind::kStats;
  } else {
    fail(n["what"], path + ".what", "unknown monitor kind '" + w + "'");
  }
  if (n["core"]) m.core = static_cast<std::int32_t>(integer(n["core"], path + ".core", -1, 65535));
  if (n["neurons"]) m.neurons = ints<std::uint32_t>(n["neurons"], path + ".neurons", 0, 0, 1 << 24);
  if (n["components"]) {
    m.components = ints<std::int32_t>(n["components"], path + ".components", 0, 0, kMaxStates - 1);
  }
  if (n["every"]) m.every = integer(n["every"], path + ".every", 1, 1LL << 40);
  return m;
}

SimulationConfig Parser::parse(const YAML::Node& root) {
  expect_map(root, "",
             {"schema", "ticks", "rng", "learning", "max_delay", "output_dir", "external_events",
              "monitors", "cores"});
  SimulationConfig cfg;
  if (!root["schema"]) fail(root, "schema", "missing (expected " + std::string(kConfigSchema) + ")");
  const std::string schema = text(root["schema"], "schema");
  if (schema != kConfigSchema) {
    fail(root["schema"], "schema",
         "unsupported schema '" + schema + "' (expected " + std::string(kConfigSchema) + ")");
  }
  if (!root["ticks"]) fail(root, "ticks", "missing");
  cfg.ticks = integer(root["ticks"], "ticks", 1, 0xffffffffLL);

  bool seeded = false;
  if (const YAML::Node rng = root["rng"]) {
    expect_map(rng, "rng", {"backend", "seed"});
    if (rng["backend"]) {
      try {
        cfg.rng = rng_backend_from_string(text(rng["backend"], "rng.backend"));
      } catch (const ConfigError& e) {
        fail(rng["backend"], "rng.backend", e.what());
      }
    }
    if (rng["seed"]) {
      try {
        cfg.seed = rng["seed"].as<std::uint64_t>();
      } catch (const YAML::Exception&) {
        fail(rng["seed"], "rng.seed", "expected an unsigned 64-bit integer");
      }
      seeded = true;
    }
  }
  if (!seeded && warnings_ != nullptr) {
    warnings_->push_back(name_ + ": rng.seed missing, using default seed " +
                         std::to_string(kDefaultSeed));
  }
  if (const YAML::Node l = root["learning"]) {
    expect_map(l, "learning", {"enabled", "gate"});
    if (l["enabled"]) cfg.learning = boolean(l["enabled"], "learning.enabled");
    if (const YAML::Node g = l["gate"]) {
      expect_map(g, "learning.gate", {"period", "off_ticks"});
      if (g["period"]) cfg.gate.period = integer(g["period"], "learning.gate.period", 0, 1LL << 40);
      if (g["off_ticks"]) {
        cfg.gate.off_ticks = integer(g["off_ticks"], "learning.gate.off_ticks", 0, 1LL << 40);
      }
    }
  }
  if (root["max_delay"]) {
    cfg.max_delay = static_cast<std::int32_t>(integer(root["max_delay"], "max_delay", 0, 65535));
  }
  if (root["output_dir"]) cfg.output_dir = text(root["output_dir"], "output_dir");
  if (const YAML::Node ev = root["external_events"]) {
    cfg.events_file = text(ev, "external_events");
    try {
      cfg.external_events = read_events(base_ / cfg.events_file);
    } catch (const RuntimeError& e) {
      fail(ev, "external_events", e.what());
    }
  }
  if (const YAML::Node ms = root["monitors"]) {
    if (!ms.IsSequence()) fail(ms, "monitors", "expected a list");
    note(ms, "monitors");
    for (std::size_t i = 0; i < ms.size(); ++i) cfg.monitors.push_back(monitor(ms[i], idx("monitors", i)));
  }
  const YAML::Node cores = root["cores"];
  if (!cores || !cores.IsSequence()) fail(root, "cores", "expected a list of cores");
  note(cores, "cores");
  for (std::size_t i = 0; i < cores.size(); ++i) cfg.cores.push_back(core(cores[i], idx("cores", i)));

  try {
    cfg.validate();
  } catch (const ConfigError& e) {
    rethrow_with_location(e);
  }
  return cfg;
}

void Parser::rethrow_with_location(const ConfigError& e) {
  const std::string msg = e.what();
  const auto colon = msg.find(": ");
  std::string path = msg.substr(0, colon);
  const std::string rest = colon == std::string::npos ? msg : msg.substr(colon + 2);
  std::string key = path;
  while (!key.empty() && !marks_.count(key)) {
    const auto cut = key.find_last_of(".[");
    key = cut == std::string::npos ? std::string() : key.substr(0, cut);
  }
  fail_at(key.empty() ? YAML::Mark::null_mark() : marks_[key], path, rest);
}

// --- emission --------------------------------------------------------------

template <typename T>
void emit_seq(YAML::Emitter& out, const std::vector<T>& v) {
  out << YAML::Flow << YAML::BeginSeq;
  for (const auto& x : v) out << static_cast<std::int64_t>(x);
  out << YAML::EndSeq;
}

void emit_exps(YAML::Emitter& out, std::span<const ShiftExponent> v) {
  out << YAML::Flow << YAML::BeginSeq;
  for (auto e : v) out << static_cast<int>(e.value);
  out << YAML::EndSeq;
}

template <typename T>
void emit_matrix(YAML::Emitter& out, const std::vector<T>& m, int k) {
  out << YAML::BeginSeq;
  for (int i = 0; i < k; ++i) {
    out << YAML::Flow << YAML::BeginSeq;
    for (int j = 0; j < k; ++j) {
      const auto& x = m[static_cast<std::size_t>(i * k + j)];
      if constexpr (std::is_same_v<T, ShiftExponent>) {
        out << static_cast<int>(x.value);
      } else {
        out << static_cast<int>(x);
      }
    }
    out << YAML::EndSeq;
  }
  out << YAML::EndSeq;
}

template <typename T>
void emit_per_neuron(YAML::Emitter& out, const char* key, const std::vector<T>& v) {
  out << YAML::Key << key << YAML::Value;
  if (!v.empty() && std::all_of(v.begin(), v.end(), [&](T x) { return x == v.front(); })) {
    out << static_cast<std::int64_t>(v.front());
  } else {
    emit_seq(out, v);
  }
}

void emit_group(YAML::Emitter& out, const ParamGroup& g) {
  out << YAML::BeginMap;
  out << YAML::Key << "A" << YAML::Value;
  emit_matrix(out, g.A, g.k);
  out << YAML::Key << "sA" << YAML::Value;
  emit_matrix(out, g.sA, g.k);
  out << YAML::Key << "b" << YAML::Value;
  emit_seq(out, g.b);
  out << YAML::Key << "sigma" << YAML::Value;
  emit_exps(out, g.sigma);
  out << YAML::Key << "prob" << YAML::Value;
  emit_seq(out, g.prob);
  out << YAML::Key << "theta" << YAML::Value;
  emit_seq(out, g.theta);
  out << YAML::Key << "Xreset" << YAML::Value;
  emit_seq(out, g.Xreset);
  out << YAML::Key << "XresetOn" << YAML::Value << YAML::Flow << YAML::BeginSeq;
  for (auto b : g.XresetOn) out << (b != 0);
  out << YAML::EndSeq;
  out << YAML::Key << "XspikeIncrVal" << YAML::Value;
  emit_seq(out, g.XspikeIncrVal);
  out << YAML::Key << "Xthlo" << YAML::Value;
  emit_seq(out, g.Xthlo);
  out << YAML::Key << "Xthup" << YAML::Value;
  emit_seq(out, g.Xthup);
  out << YAML::Key << "Xinit" << YAML::Value;
  emit_seq(out, g.Xinit);
  out << YAML::Key << "Wgain" << YAML::Value;
  emit_exps(out, g.Wgain);
  out << YAML::Key << "modulator" << YAML::Value << g.modulator;
  out << YAML::Key << "spike_enabled" << YAML::Value << g.spike_enabled;
  out << YAML::Key << "adaptive_theta" << YAML::Value << g.adaptive_theta;
  out << YAML::Key << "reset_enabled" << YAML::Value << g.reset_enabled;
  out << YAML::Key << "refractory" << YAML::Value << g.refractory;
  out << YAML::EndMap;
}

void emit_learning(YAML::Emitter& out, const LearningGroup& lg) {
  auto arr = [&](const char* key, auto const& a) {
    out << YAML::Key << key << YAML::Value << YAML::Flow << YAML::BeginSeq;
    for (auto x : a) {
      if constexpr (std::is_same_v<std::decay_t<decltype(x)>, ShiftExponent>) {
        out << static_cast<int>(x.value);
      } else {
        out << static_cast<int>(x);
      }
    }
    out << YAML::EndSeq;
  };
  out << YAML::BeginMap;
  out << YAML::Key << "rule" << YAML::Value
      << (lg.rule == LearningRule::kStdp ? "stdp" : "state");
  out << YAML::Key << "plastic" << YAML::Value << YAML::Flow << YAML::BeginSeq;
  for (auto b : lg.plastic) out << (b != 0);
  out << YAML::EndSeq;
  arr("tca", lg.kernel.tca);
  arr("hica", lg.kernel.hica);
  arr("sica", lg.kernel.sica);
  out << YAML::Key << "slca" << YAML::Value << lg.kernel.slca;
  arr("tac", lg.kernel.tac);
  arr("hiac", lg.kernel.hiac);
  arr("siac", lg.kernel.siac);
  out << YAML::Key << "slac" << YAML::Value << lg.kernel.slac;
  out << YAML::Key << "mode" << YAML::Value
      << (lg.kernel.mode == KernelMode::kLinear ? "linear" : "exponential");
  out << YAML::Key << "rounding_bits" << YAML::Value << lg.rounding_bits;
  out << YAML::Key << "wmin" << YAML::Value << lg.wmin;
  out << YAML::Key << "wmax" << YAML::Value << lg.wmax;
  if (lg.gate_enabled) {
    out << YAML::Key << "gate" << YAML::Value << YAML::Flow << YAML::BeginMap;
    out << YAML::Key << "component" << YAML::Value << lg.gate_component;
    out << YAML::Key << "lo" << YAML::Value << lg.gate_lo;
    out << YAML::Key << "hi" << YAML::Value << lg.gate_hi;
    out << YAML::EndMap;
  }
  out << YAML::EndMap;
}

const char* kind_name(MonitorSpec::Kind k) {
  switch (k) {
    case MonitorSpec::Kind::kSpikes: return "spikes";
    case MonitorSpec::Kind::kStates: return "states";
    case MonitorSpec::Kind::kWeights: return "weights";
    case MonitorSpec::Kind::kStats: return "stats";
  }
  return "spikes";
}

}  // namespace

SimulationConfig parse_config(std::string_view text, const fs::path& base_dir,
                              std::string_view name, std::vector<std::string>* warnings) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::ParserException& e) {
    throw ConfigError(std::string(name) + ":" + std::to_string(e.mark.line + 1) + ":" +
                      std::to_string(e.mark.column + 1) + ": syntax error: " + e.msg);
  }
  Parser p(std::string(name), base_dir, warnings);
  return p.parse(root);
}

SimulationConfig load_config(const fs::path& path, std::vector<std::string>* warnings) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path.string() + ": cannot open config file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path.parent_path(), path.string(), warnings);
}

std::string emit_config(const SimulationConfig& cfg, std::size_t inline_limit) {
  YAML::Emitter out;
  out << YAML::BeginMap;
  out << YAML::Key << "schema" << YAML::Value << std::string(kConfigSchema);
  out << YAML::Key << "ticks" << YAML::Value << cfg.ticks;
  out << YAML::Key << "rng" << YAML::Value << YAML::Flow << YAML::BeginMap;
  out << YAML::Key << "backend" << YAML::Value << std::string(to_string(cfg.rng));
  out << YAML::Key << "seed" << YAML::Value << cfg.seed;
  out << YAML::EndMap;
  out << YAML::Key << "learning" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "enabled" << YAML::Value << cfg.learning;
  if (cfg.gate.period > 0) {
    out << YAML::Key << "gate" << YAML::Value << YAML::Flow << YAML::BeginMap;
    out << YAML::Key << "period" << YAML::Value << cfg.gate.period;
    out << YAML::Key << "off_ticks" << YAML::Value << cfg.gate.off_ticks;
    out << YAML::EndMap;
  }
  out << YAML::EndMap;
  out << YAML::Key << "max_delay" << YAML::Value << cfg.max_delay;
  if (!cfg.output_dir.empty()) out << YAML::Key << "output_dir" << YAML::Value << cfg.output_dir;
  if (!cfg.events_file.empty()) {
    out << YAML::Key << "external_events" << YAML::Value << cfg.events_file;
  }
  if (!cfg.monitors.empty()) {
    out << YAML::Key << "monitors" << YAML::Value << YAML::BeginSeq;
    for (const auto& m : cfg.monitors) {
      out << YAML::Flow << YAML::BeginMap;
      out << YAML::Key << "what" << YAML::Value << kind_name(m.what);
      out << YAML::Key << "core" << YAML::Value << m.core;
      if (!m.neurons.empty()) {
        out << YAML::Key << "neurons" << YAML::Value;
        emit_seq(out, m.neurons);
      }
      if (!m.components.empty()) {
        out << YAML::Key << "components" << YAML::Value;
        emit_seq(out, m.components);
      }
      out << YAML::Key << "every" << YAML::Value << m.every;
      out << YAML::EndMap;
    }
    out << YAML::EndSeq;
  }
  out << YAML::Key << "cores" << YAML::Value << YAML::BeginSeq;
  for (const CoreConfig& c : cfg.cores) {
    out << YAML::BeginMap;
    out << YAML::Key << "states" << YAML::Value << c.k;
    out << YAML::Key << "internal" << YAML::Value << c.n_internal;
    out << YAML::Key << "external" << YAML::Value << c.n_external;
    out << YAML::Key << "param_groups" << YAML::Value << YAML::BeginSeq;
    for (const auto& g : c.param_groups) emit_group(out, g);
    out << YAML::EndSeq;
    if (!c.learning_groups.empty()) {
      out << YAML::Key << "learning_groups" << YAML::Value << YAML::BeginSeq;
      for (const auto& lg : c.learning_groups) emit_learning(out, lg);
      out << YAML::EndSeq;
    }
    if (c.n_internal > 0) {
      emit_per_neuron(out, "param_group_of", c.group_of);
      emit_per_neuron(out, "learning_group_of", c.lgroup_of);
    }
    if (c.size() > 0) emit_per_neuron(out, "delays", c.delay_of);
    if (!c.synapse_file.empty() || c.synapses.size() > inline_limit) {
      if (c.synapse_file.empty()) throw ConfigError("emit_config: synapse sidecar name not set");
      out << YAML::Key << "synapses" << YAML::Value << YAML::Flow << YAML::BeginMap
          << YAML::Key << "file" << YAML::Value << c.synapse_file << YAML::EndMap;
    } else if (!c.synapses.empty()) {
      out << YAML::Key << "synapses" << YAML::Value << YAML::BeginSeq;
      for (const auto& s : c.synapses) {
        out << YAML::Flow << YAML::BeginSeq << s.src.core << s.src.neuron << s.dst
            << static_cast<int>(s.component) << static_cast<int>(s.weight);
        if (s.plastic || s.tied) out << (s.plastic ? 1 : 0);
        if (s.tied) out << s.tie;
        out << YAML::EndSeq;
      }
      out << YAML::EndSeq;
    }
    out << YAML::EndMap;
  }
  out << YAML::EndSeq;
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

void save_config(const SimulationConfig& cfg_in, const fs::path& path, std::size_t inline_limit) {
  SimulationConfig cfg = cfg_in;
  const fs::path dir = path.parent_path().empty() ? fs::path(".") : path.parent_path();
  const std::string stem = path.stem().string();
  for (std::size_t c = 0; c < cfg.cores.size(); ++c) {
    CoreConfig& core = cfg.cores[c];
    if (core.synapse_file.empty() && core.synapses.size() > inline_limit) {
      core.synapse_file = stem + ".core" + std::to_string(c) + ".syn";
    }
    if (!core.synapse_file.empty()) write_synapses(dir / core.synapse_file, core.synapses);
  }
  if (!cfg.external_events.empty() && cfg.events_file.empty()) cfg.events_file = stem + ".evt";
  if (!cfg.events_file.empty()) write_events(dir / cfg.events_file, cfg.external_events);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw RuntimeError("cannot write " + path.string());
  out << emit_config(cfg, inline_limit);
}

}  // namespace nsat
