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

#include "nsat/zoo/neural_field.hpp"

#include <cmath>
#include <string>

#include "nsat/error.hpp"
#include "nsat/zoo/common.hpp"

namespace nsat::zoo {

FieldVariant field_variant_from_string(std::string_view name) {
  if (name == "bump") return FieldVariant::kBump;
  if (name == "track") return FieldVariant::kTrack;
  if (name == "select") return FieldVariant::kSelect;
  throw ConfigError("unknown neural field variant '" + std::string(name) +
                    "' (expected bump, track or select)");
}

std::string_view to_string(FieldVariant v) {
  switch (v) {
    case FieldVariant::kBump:
      return "bump";
    case FieldVariant::kTrack:
      return "track";
    case FieldVariant::kSelect:
      return "select";
  }
  return "?";
}

double FieldKernel::eval(double d) const {
  const double x = d - shift;
  return K_e * std::exp(-x * x / (2 * sigma_e * sigma_e)) -
         K_i * std::exp(-x * x / (2 * sigma_i * sigma_i));
}

double FieldKernel::quantize(double w) const { return delta * std::floor(w / delta + 0.5); }

int FieldKernel::weight(double d) const {
  return static_cast<int>(std::lround(quantize(eval(d)) / delta));
}

int FieldKernel::gain() const { return static_cast<int>(std::lround(std::log2(delta))); }

FieldKernel field_kernel(FieldVariant v) {
  switch (v) {
    case FieldVariant::kBump:
      return {120, 60, 5, 20, 4, 0};
    case FieldVariant::kTrack:
      // Shifted forward so the activity leans into the stimulus motion.
      return {60, 60, 5, 10, 4, 1};
    case FieldVariant::kSelect:
      // Narrow excitation against broad inhibition: two stimuli compete.
      return {120, 60, 3, 40, 4, 0};
  }
  throw ConfigError("unknown neural field variant");
}

int track_center(int segment) { return 20 + 15 * segment; }

std::vector<FieldInput> field_inputs(FieldVariant v, std::uint32_t size) {
  std::vector<FieldInput> out;
  auto band = [&](std::vector<double>& r, int lo, int hi, double hz) {
    for (int i = std::max(lo, 0); i < std::min<int>(hi, static_cast<int>(size)); ++i) {
      r[static_cast<std::size_t>(i)] = hz;
    }
  };
  switch (v) {
    case FieldVariant::kBump: {
      FieldInput in{0, 400, std::vector<double>(size, 10.0)};
      band(in.rates_hz, 40, 61, 35.0);
      out.push_back(std::move(in));
      break;
    }
    case FieldVariant::kSelect: {
      FieldInput in{0, 400, std::vector<double>(size, 0.0)};
      band(in.rates_hz, 20, 40, 50.0);
      band(in.rates_hz, 70, 90, 50.0);
      out.push_back(std::move(in));
      break;
    }
    case FieldVariant::kTrack:
      for (int s = 0; s < 5; ++s) {
        FieldInput in{500 * s, 500 * (s + 1), std::vector<double>(size, 0.0)};
        band(in.rates_hz, track_center(s) - 10, track_center(s) + 11, 35.0);
        out.push_back(std::move(in));
      }
      break;
  }
  return out;
}

std::uint32_t field_position(std::uint32_t core, std::uint32_t neuron, std::uint32_t size,
                             std::uint32_t cores) {
  return core * (size / cores) + neuron;
}

SimulationConfig build_neural_field(FieldVariant v, const NeuralFieldOptions& options) {
  const std::uint32_t n = options.size;
  const std::uint32_t nc = options.cores;
  if (n == 0 || nc == 0 || n % nc != 0 || nc > 0xffff) {
    throw ConfigError("neural field: cores must divide the field size");
  }
  const std::uint32_t per = n / nc;
  const FieldKernel kern = field_kernel(v);

  ParamGroup g = ParamGroup::defaults(4);
  g.A[0] = ShiftExponent(-2);
  g.b = words({-5, 0, 0, 0});
  g.XresetOn = {0, 0, 0, 0};
  g.Xreset = words({0, 32767, 32767, 32767});
  g.theta[0] = kFieldTheta;
  g.reset_enabled = false;
  g.Wgain[0] = ShiftExponent(kern.gain());

  SimulationConfig cfg;
  cfg.ticks = options.ticks;
  cfg.seed = options.seed;
  for (std::uint32_t c = 0; c < nc; ++c) {
    CoreConfig core;
    core.n_internal = per;
    core.n_external = per;
    core.k = 4;
    core.param_groups.push_back(g);
    fill_defaults(core);
    for (std::uint32_t dst = 0; dst < per; ++dst) {
      const std::uint32_t gd = c * per + dst;
      for (std::uint32_t sc = 0; sc < nc; ++sc) {
        for (std::uint32_t src = 0; src < per; ++src) {
          const std::uint32_t gs = sc * per + src;
          const int w = kern.weight(static_cast<double>(gd) - static_cast<double>(gs));
          if (w < kWeightMin || w > kWeightMax) {
            throw ConfigError("neural field: quantized kernel exceeds the weight range");
          }
          if (w == 0) continue;
          SynapseRecord r;
          r.src = {static_cast<std::uint16_t>(sc), src};
          r.dst = dst;
          r.weight = static_cast<std::int8_t>(w);
          core.synapses.push_back(r);
        }
      }
      SynapseRecord in;
      in.src = {static_cast<std::uint16_t>(c), per + dst};
      in.dst = dst;
      in.weight = kFieldInputWeight;
      core.synapses.push_back(in);
    }
    cfg.cores.push_back(std::move(core));
  }

  RngStream rng(cfg.rng, options.seed, 1u << 20);
  for (const FieldInput& in : field_inputs(v, n)) {
    for (std::uint32_t c = 0; c < nc; ++c) {
      std::vector<std::uint32_t> ids(per);
      std::vector<double> rates(per);
      for (std::uint32_t i = 0; i < per; ++i) {
        ids[i] = per + i;
        rates[i] = in.rates_hz[c * per + i];
      }
      poisson_events(cfg.external_events, static_cast<std::uint16_t>(c), ids, rates, in.start,
                     std::min(in.stop, options.ticks), rng);
    }
  }
  sort_events(cfg.external_events);
  cfg.validate();
  return cfg;
}

}  // namespace nsat::zoo
