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

#ifndef NSAT_ZOO_ERBP_HPP_
#define NSAT_ZOO_ERBP_HPP_

#include <cstdint>
#include <functional>
#include <vector>

#include "nsat/config.hpp"
#include "nsat/fabric.hpp"
#include "nsat/zoo/idx.hpp"
#include "nsat/zoo/reference.hpp"

namespace nsat::zoo {

// Event-driven random back-propagation: data -> hidden -> prediction, with
// a positive and a negative error neuron per class. Error spikes reach the
// hidden modulators through fixed random weights (zero sum per hidden
// neuron) and the prediction modulators one to one.
struct ErbpOptions {
  int hidden = 100;
  int epochs = 10;
  Tick digit_ticks = 250;  // presentation length of one digit
  Tick gate_ticks = 50;    // no weight updates at the start of each digit
  double max_rate_hz = 25;  // Poisson rate of a full-intensity pixel
  int refractory = 4;       // hidden and prediction neurons; label ISI
  StateWord theta_hidden = 1000;
  StateWord theta_out = 1000;
  StateWord gate_lo = -1000;  // boxcar on the hidden/prediction membrane
  StateWord gate_hi = 1000;
  int label_weight = 64;     // w^L into the error neurons (Wgain 4: 1024)
  int feedback_scale = 32;   // max |g| of the hidden feedback weights
  int out_feedback = 64;     // error -> prediction modulator weight
  int init_scale_in = 16;    // max |w| of the initial data weights
  int init_scale_out = 16;   // max |w| of the initial hidden weights
  int learn_shift = -8;      // hiac0: modulator shift before rounding
  int rounding_bits = 6;
  std::uint64_t seed = kDefaultSeed;
};

struct ErbpLayout {
  std::uint32_t hidden = 0;   // internal [0, hidden)
  std::uint32_t outputs = 10;
  std::uint32_t inputs = 784;
  std::uint32_t out_base() const { return hidden; }
  std::uint32_t eplus_base() const { return hidden + outputs; }
  std::uint32_t eminus_base() const { return hidden + 2 * outputs; }
  std::uint32_t n_internal() const { return hidden + 3 * outputs; }
  std::uint32_t pixel_base() const { return n_internal(); }
  std::uint32_t label_base() const { return n_internal() + inputs; }
};

inline constexpr StateWord kErrorTheta = 1025;

struct ErbpNetwork {
  SimulationConfig config;  // no events; the harness schedules digits
  ErbpLayout layout;
};

ErbpNetwork build_erbp(const ErbpOptions& options);

// Poisson pixel events, and regular label events when label >= 0, for one
// digit presented over [t0, t0 + digit_ticks).
std::vector<EventRecord> erbp_digit_events(const ErbpLayout& layout, const ErbpOptions& options,
                                           const std::vector<std::uint8_t>& image, int label,
                                           Tick t0, RngStream& rng);

// Training schedule for a run through `digits` (used for standalone config
// bundles).
std::vector<EventRecord> erbp_schedule(const ErbpLayout& layout, const ErbpOptions& options,
                                       const DigitSet& digits);

struct ErbpEpoch {
  int epoch = 0;
  double test_error = 1;
  std::uint64_t synops = 0;  // cumulative training SynOps
  std::uint64_t weight_updates = 0;
};

struct ErbpResult {
  std::vector<ErbpEpoch> epochs;
  std::vector<TracePoint> trace;  // ops are training SynOps
  double final_error = 1;
  std::vector<std::int8_t> final_weights;
};

// Trains for options.epochs, testing after every epoch (and at the start).
// Test presentations run with learning off and no label input; the class
// is the prediction neuron with the most spikes.
ErbpResult run_erbp(const ErbpOptions& options, const DigitSet& train, const DigitSet& test,
                    const std::function<void(const ErbpEpoch&)>& progress = {},
                    std::size_t trace_every = 0);

// Error neurons of one class fed by identical prediction and label spike
// trains. Internal 0 is E+ and 1 is E-; external neuron 2 plays the
// prediction and 3 the label.
SimulationConfig build_error_silence(Tick ticks, const ErbpOptions& options = {});

}  // namespace nsat::zoo

#endif  // NSAT_ZOO_ERBP_HPP_
