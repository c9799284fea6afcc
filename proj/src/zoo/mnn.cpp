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

#include "nsat/zoo/mnn.hpp"

#include <string>

#include "nsat/error.hpp"
#include "nsat/zoo/common.hpp"

namespace nsat::zoo {

namespace {

struct Row {
  MnnBehavior behavior;
  std::string_view name;
  int a_theta_v;  // coupling of the membrane into the threshold
  int b0, b1;
  int init0, init1;
  bool reset_theta, reset_i2;
  int reset0, reset1, reset_i1;
  int incr_i2;  // spike increment of the second current when not reset
};

// The second current's spike increment (incr_i2) is absent from the
// published tables; burst and mixed use the source model's A2 = -0.6 and
// -0.3 at the same x100 scale as A1.
constexpr Row kRows[] = {
    {MnnBehavior::kTonic, "tonic", -16, -287, -39, -7000, -5000, true, true, -7000, -5000, 0, 0},
    {MnnBehavior::kPhasic, "phasic", -8, -250, -10, -7000, -5000, false, false, -7000, -6000, 0, 0},
    {MnnBehavior::kMixed, "mixed", -8, -167, -11, -7000, -5000, false, false, -7000, 0, 500, -30},
    {MnnBehavior::kClass1, "class1", -16, -287, -39, -7000, -5000, true, true, -7000, -5000, 0, 0},
    {MnnBehavior::kClass2, "class2", -8, -194, -11, -3000, -3000, false, true, -7000, -6000, 0, 0},
    {MnnBehavior::kBurst, "burst", -8, -194, -11, -7000, -5000, false, false, -7000, -6000, 1000,
     -60},
};

const Row& row(MnnBehavior b) {
  for (const Row& r : kRows) {
    if (r.behavior == b) return r;
  }
  throw ConfigError("unknown MNN behavior");
}

}  // namespace

MnnBehavior mnn_behavior_from_string(std::string_view name) {
  for (const Row& r : kRows) {
    if (r.name == name) return r.behavior;
  }
  throw ConfigError("unknown MNN behavior '" + std::string(name) +
                    "' (expected tonic, phasic, mixed, class1, class2 or burst)");
}

std::string_view to_string(MnnBehavior b) { return row(b).name; }

ParamGroup mnn_group(MnnBehavior behavior, std::optional<int> drive) {
  const Row& r = row(behavior);
  ParamGroup g = ParamGroup::defaults(4);
  g.A = exps_from_source_major({-4, r.a_theta_v, -16, -16,  //
                                -16, -7, -16, -16,          //
                                0, -16, -2, -16,            //
                                0, -16, -16, -6},
                               4);
  g.sA = signs_from_source_major({-1, 1, 1, 1,  //
                                  1, -1, 1, 1,  //
                                  1, 1, -1, 1,  //
                                  1, 1, 1, -1},
                                 4);
  g.b = words({drive.value_or(r.b0), r.b1, 0, 0});
  g.Xinit = words({r.init0, r.init1, 100, 10});
  g.XresetOn = {1, static_cast<std::uint8_t>(r.reset_theta), 1, static_cast<std::uint8_t>(r.reset_i2)};
  g.Xreset = words({r.reset0, r.reset1, r.reset_i1, 0});
  g.XspikeIncrVal = words({0, 0, 0, r.incr_i2});
  g.adaptive_theta = true;
  return g;
}

SimulationConfig build_mnn(MnnBehavior behavior, const MnnOptions& options) {
  SimulationConfig cfg;
  cfg.ticks = options.ticks;
  cfg.seed = options.seed;
  CoreConfig core;
  core.n_internal = 1;
  core.k = 4;
  core.param_groups.push_back(mnn_group(behavior, options.drive));
  fill_defaults(core);
  cfg.cores.push_back(std::move(core));
  MonitorSpec states;
  states.what = MonitorSpec::Kind::kStates;
  states.components = {0, 1};
  cfg.monitors.push_back(states);
  cfg.validate();
  return cfg;
}

}  // namespace nsat::zoo
