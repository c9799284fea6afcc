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

#ifndef NSAT_ZOO_NEURAL_FIELD_HPP_
#define NSAT_ZOO_NEURAL_FIELD_HPP_

#include <string_view>
#include <vector>

#include "nsat/config.hpp"

namespace nsat::zoo {

enum class FieldVariant { kBump, kTrack, kSelect };

FieldVariant field_variant_from_string(std::string_view name);
std::string_view to_string(FieldVariant v);

// Difference of Gaussians lateral kernel in membrane (state) units,
//   w(d) = K_e exp(-d^2 / 2 sigma_e^2) - K_i exp(-d^2 / 2 sigma_i^2),
// with d = target - source - shift. Weights are stored as w / delta rounded
// to the nearest integer; delta is a power of two applied back by Wgain.
struct FieldKernel {
  double K_e = 0;
  double K_i = 0;
  double sigma_e = 1;
  double sigma_i = 1;
  double delta = 4;
  double shift = 0;

  double eval(double d) const;
  // Q(w) = delta * floor(w / delta + 0.5)
  double quantize(double w) const;
  int weight(double d) const;  // Q(w(d)) / delta
  int gain() const;            // log2(delta)
};

FieldKernel field_kernel(FieldVariant v);

struct FieldInput {
  Tick start = 0;
  Tick stop = 0;
  std::vector<double> rates_hz;  // per field position
};

// Input schedule of a variant: the bump and selection stimuli are removed
// at tick 400; the tracking stimulus moves every 500 ticks.
std::vector<FieldInput> field_inputs(FieldVariant v, std::uint32_t size = 100);
// Centre of the tracking stimulus during segment s.
int track_center(int segment);

struct NeuralFieldOptions {
  std::uint32_t size = 100;
  std::uint32_t cores = 1;  // must divide size
  Tick ticks = 2500;
  std::uint64_t seed = kDefaultSeed;
};

inline constexpr StateWord kFieldTheta = 300;
inline constexpr int kFieldInputWeight = 100;

SimulationConfig build_neural_field(FieldVariant v, const NeuralFieldOptions& options = {});

// Global field position of (core, local neuron) for a build with `cores`.
std::uint32_t field_position(std::uint32_t core, std::uint32_t neuron, std::uint32_t size,
                             std::uint32_t cores);

}  // namespace nsat::zoo

#endif  // NSAT_ZOO_NEURAL_FIELD_HPP_
