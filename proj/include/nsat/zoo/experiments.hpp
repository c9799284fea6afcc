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

#ifndef NSAT_ZOO_EXPERIMENTS_HPP_
#define NSAT_ZOO_EXPERIMENTS_HPP_

#include <string>
#include <vector>

#include "nsat/config.hpp"
#include "nsat/zoo/common.hpp"

namespace nsat::zoo {

// Every name accepted by build_experiment.
std::vector<std::string> experiment_names();

// Standalone config (with its external events) for an experiment, runnable
// by the nsat command. Knobs:
//   mnn:<behavior>          ticks, drive
//   neural_field:<variant>  ticks, cores
//   erbp                    hidden, digits (training digits scheduled)
//   erbm                    hidden, samples (bars and stripes presentations)
//   spike_pattern           inputs, outputs, train, test
SimulationConfig build_experiment(const ExperimentSpec& spec);

}  // namespace nsat::zoo

#endif  // NSAT_ZOO_EXPERIMENTS_HPP_
