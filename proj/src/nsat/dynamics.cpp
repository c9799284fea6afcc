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

#include "nsat/dynamics.hpp"

#include <span>
#include <string>

#include "nsat/error.hpp"

namespace nsat {

namespace {

template <typename T>
void check_size(const std::vector<T>& v, std::size_t n, const char* field) {
  if (v.size() != n) {
    throw ConfigError(std::string(field) + ": expected " + std::to_string(n) + " entries, got " +
                      std::to_string(v.size()));
  }
}

void check_exponents(const std::vector<ShiftExponent>& v, const char* field) {
  for (auto e : v) {
    if (e.value < ShiftExponent::kMin || e.value > ShiftExponent::kMax) {
      throw ConfigError(std::string(field) + ": shift exponent " + std::to_string(e.value) +
                        " outside [-16, 15]");
    }
  }
}

}  // namespace

ParamGroup ParamGroup::defaults(int k) {
  if (k < 1 || k > kMaxStates) {
    throw ConfigError("state components per neuron must be in [1, 8], got " + std::to_string(k));
  }
  const auto n = static_cast<std::size_t>(k);
  ParamGroup g;
  g.k = k;
  g.A.assign(n * n, kShiftOff);
  g.sA.assign(n * n, 1);
  for (std::size_t i = 0; i < n; ++i) g.sA[i * n + i] = -1;
  g.b.assign(n, 0);
  g.sigma.assign(n, kShiftOff);
  g.prob.assign(n, 15);
  g.theta.assign(n, static_cast<StateWord>(kStateMax));
  g.Xreset.assign(n, 0);
  g.XresetOn.assign(n, 0);
  g.XresetOn[0] = 1;
  g.XspikeIncrVal.assign(n, 0);
  g.Xthlo.assign(n, static_cast<StateWord>(kStateMin));
  g.Xthup.assign(n, static_cast<StateWord>(kStateMax));
  g.Xinit.assign(n, 0);
  g.Wgain.assign(n, ShiftExponent{0});
  return g;
}

void ParamGroup::validate() const {
  if (k < 1 || k > kMaxStates) {
    throw ConfigError("k: state components per neuron must be in [1, 8], got " +
                      std::to_string(k));
  }
  const auto n = static_cast<std::size_t>(k);
  check_size(A, n * n, "A");
  check_size(sA, n * n, "sA");
  check_size(b, n, "b");
  check_size(sigma, n, "sigma");
  check_size(prob, n, "prob");
  check_size(theta, n, "theta");
  check_size(Xreset, n, "Xreset");
  check_size(XresetOn, n, "XresetOn");
  check_size(XspikeIncrVal, n, "XspikeIncrVal");
  check_size(Xthlo, n, "Xthlo");
  check_size(Xthup, n, "Xthup");
  check_size(Xinit, n, "Xinit");
  check_size(Wgain, n, "Wgain");
  check_exponents(A, "A");
  check_exponents(sigma, "sigma");
  check_exponents(Wgain, "Wgain");
  for (auto s : sA) {
    if (s != 1 && s != -1) throw ConfigError("sA: signs must be -1 or +1");
  }
  for (std::size_t i = 0; i < n; ++i) {
    const std::string idx = "[" + std::to_string(i) + "]";
    if (prob[i] > 15) throw ConfigError("prob" + idx + ": blank-out code must be in [0, 15]");
    if (Xthlo[i] > Xthup[i]) throw ConfigError("Xthlo" + idx + " exceeds Xthup" + idx);
    if (XresetOn[i] && (Xreset[i] < Xthlo[i] || Xreset[i] > Xthup[i])) {
      throw ConfigError("Xreset" + idx + " outside [Xthlo, Xthup]");
    }
  }
  if (modulator < 0 || modulator >= k) {
    throw ConfigError("modulator: component " + std::to_string(modulator) + " out of range");
  }
  if (adaptive_theta && k < 2) throw ConfigError("adaptive_theta requires at least 2 components");
  if (refractory < 0) throw ConfigError("refractory: must be non-negative");
}

NeuronState NeuronState::initial(const ParamGroup& g) {
  NeuronState n;
  for (int i = 0; i < g.k; ++i) {
    n.x[static_cast<std::size_t>(i)] = static_cast<StateWord>(
        clamp_unchecked(g.Xinit[static_cast<std::size_t>(i)], g.Xthlo[static_cast<std::size_t>(i)],
                        g.Xthup[static_cast<std::size_t>(i)]));
  }
  return n;
}

void integrate(NeuronState& n, const ParamGroup& g, RngStream& rng) {
  const auto k = static_cast<std::size_t>(g.k);
  std::array<StateWord, kMaxStates> dx{};
  shift_matvec(g.A, g.sA, std::span<const StateWord>(n.x.data(), k),
               std::span<StateWord>(dx.data(), k));
  for (std::size_t i = 0; i < k; ++i) {
    const std::int64_t v = std::int64_t{n.x[i]} + dx[i] + rng.next_normal(g.sigma[i]) + g.b[i];
    n.x[i] = static_cast<StateWord>(clamp_unchecked(saturate16(v), g.Xthlo[i], g.Xthup[i]));
  }
  n.clamped = n.refractory_remaining > 0;
  if (n.clamped) {
    --n.refractory_remaining;
    for (std::size_t i = 0; i < k; ++i) {
      if (g.XresetOn[i]) n.x[i] = g.Xreset[i];
    }
  }
}

bool detect_spike(const NeuronState& n, const ParamGroup& g) {
  if (!g.spike_enabled || n.clamped) return false;
  if (g.adaptive_theta) return n.x[0] >= n.x[1];
  return n.x[0] >= g.theta[0];
}

void post_spike(NeuronState& n, const ParamGroup& g, Tick now) {
  n.last_spike = now;
  if (!g.reset_enabled) return;
  const auto k = static_cast<std::size_t>(g.k);
  for (std::size_t i = 0; i < k; ++i) {
    if (g.XresetOn[i]) {
      n.x[i] = g.Xreset[i];
    } else if (g.XspikeIncrVal[i] != 0) {
      n.x[i] = static_cast<StateWord>(
          clamp_unchecked(n.x[i] + g.XspikeIncrVal[i], g.Xthlo[i], g.Xthup[i]));
    }
  }
  n.refractory_remaining = g.refractory;
}

bool accumulate(NeuronState& n, int c, std::int32_t w, const ParamGroup& g, RngStream& rng) {
  if (c < 0 || c >= g.k) {
    throw ConfigError("synaptic event targets state component " + std::to_string(c) +
                      " of a " + std::to_string(g.k) + "-component neuron");
  }
  const auto i = static_cast<std::size_t>(c);
  if (!rng.blankout_keep(g.prob[i])) return false;
  const std::int32_t v = saturate16(std::int64_t{n.x[i]} + diamond(g.Wgain[i], w));
  n.x[i] = static_cast<StateWord>(clamp_unchecked(v, g.Xthlo[i], g.Xthup[i]));
  return true;
}

}  // namespace nsat
