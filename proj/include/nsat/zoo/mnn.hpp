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

#ifndef NSAT_ZOO_MNN_HPP_
#define NSAT_ZOO_MNN_HPP_

#include <optional>
#include <string_view>

#include "nsat/config.hpp"

namespace nsat::zoo {

// Single generalized (Mihalas-Niebur style) neuron with four components:
// x0 membrane, x1 adaptive threshold, x2 and x3 spike-induced currents.
enum class MnnBehavior { kTonic, kPhasic, kMixed, kClass1, kClass2, kBurst };

MnnBehavior mnn_behavior_from_string(std::string_view name);
std::string_view to_string(MnnBehavior b);

struct MnnOptions {
  Tick ticks = 10000;
  std::optional<int> drive;  // overrides b0, used for f-I sweeps
  std::uint64_t seed = kDefaultSeed;
};

ParamGroup mnn_group(MnnBehavior behavior, std::optional<int> drive = std::nullopt);
SimulationConfig build_mnn(MnnBehavior behavior, const MnnOptions& options = {});

}  // namespace nsat::zoo

#endif  // NSAT_ZOO_MNN_HPP_
