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

#ifndef NSAT_DYNAMICS_HPP_
#define NSAT_DYNAMICS_HPP_

#include <array>
#include <cstdint>
#include <limits>
#include <vector>

#include "nsat/fxp.hpp"
#include "nsat/rng.hpp"

namespace nsat {

using Tick = std::int64_t;
inline constexpr Tick kNever = std::numeric_limits<Tick>::min() / 4;

// Hardware cores hold at most eight state components per neuron.
inline constexpr int kMaxStates = 8;

/// Neuron dynamics parameters shared by every neuron of a group.
///
/// Matrices are row-major k x k with the row indexing the component being
/// updated: component i receives sA[i][j] * (A[i][j] <><> x_j).
struct ParamGroup {
  int k = 1;
  std::vector<ShiftExponent> A;
  std::vector<std::int8_t> sA;
  std::vector<StateWord> b;
  std::vector<ShiftExponent> sigma;  // additive noise scale, OFF disables
  std::vector<std::uint8_t> prob;    // blank-out, keep probability (p+1)/16
  std::vector<StateWord> theta;      // only theta[0] is used for spiking
  std::vector<StateWord> Xreset;
  std::vector<std::uint8_t> XresetOn;
  std::vector<StateWord> XspikeIncrVal;
  std::vector<StateWord> Xthlo;
  std::vector<StateWord> Xthup;
  std::vector<StateWord> Xinit;
  std::vector<ShiftExponent> Wgain;
  int modulator = 0;  // component read as the plasticity modulator
  bool spike_enabled = true;
  bool adaptive_theta = false;  // spike when x0 >= x1 instead of x0 >= theta0
  bool reset_enabled = true;
  int refractory = 0;  // ticks

  // A group of k components with every coupling OFF, unit negative diagonal
  // signs, full-range bounds and no noise or blank-out.
  static ParamGroup defaults(int k);

  // Throws ConfigError naming the offending field.
  void validate() const;

  ShiftExponent a(int i, int j) const { return A[static_cast<std::size_t>(i * k + j)]; }
  std::int8_t sa(int i, int j) const { return sA[static_cast<std::size_t>(i * k + j)]; }

  friend bool operator==(const ParamGroup&, const ParamGroup&) = default;
};

struct NeuronState {
  std::array<StateWord, kMaxStates> x{};
  std::int32_t refractory_remaining = 0;
  Tick last_spike = kNever;
  bool clamped = false;  // held at reset by the refractory period this tick
  bool spiked = false;   // spike detected this tick

  static NeuronState initial(const ParamGroup& g);

  friend bool operator==(const NeuronState&, const NeuronState&) = default;
};

// x <- clip(sat(x + A <><> x + eta + b)); a refractory neuron is then held at
// Xreset on its XresetOn components and its counter decremented.
void integrate(NeuronState& n, const ParamGroup& g, RngStream& rng);

// Fixed mode: x0 >= theta0. Adaptive mode: x0 >= x1. Never while clamped.
bool detect_spike(const NeuronState& n, const ParamGroup& g);

// Reset (XresetOn) or increment (otherwise) each component and start the
// refractory period. No-op unless the group has reset enabled.
void post_spike(NeuronState& n, const ParamGroup& g, Tick now);

// Adds Wgain_c <> w to component c unless the blank-out draw drops the event.
// Returns whether the event was kept; callers count a SynOp either way.
bool accumulate(NeuronState& n, int c, std::int32_t w, const ParamGroup& g, RngStream& rng);

}  // namespace nsat

#endif  // NSAT_DYNAMICS_HPP_
