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

#include "nsat/plasticity.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "nsat/error.hpp"

namespace nsat {

namespace {

void check_levels(const std::array<ShiftExponent, 3>& h, const std::array<std::int8_t, 3>& s,
                  const char* name) {
  for (int i = 0; i < 3; ++i) {
    if (h[i].value < ShiftExponent::kMin || h[i].value > ShiftExponent::kMax) {
      throw ConfigError(std::string(name) + ": level outside [-16, 15]");
    }
    if (s[i] != 1 && s[i] != -1 && s[i] != 0) {
      throw ConfigError(std::string(name) + ": signs must be -1, 0 or +1");
    }
  }
}

KernelValue segment_value(const std::array<ShiftExponent, 3>& levels,
                          const std::array<std::int8_t, 3>& signs, int segment, Tick mag,
                          std::int32_t slope, KernelMode mode) {
  ShiftExponent level = levels[static_cast<std::size_t>(segment)];
  if (level.off()) return {};
  if (mode == KernelMode::kExponential) {
    const Tick e = level.value - (mag >> slope);
    level = ShiftExponent(static_cast<int>(e < ShiftExponent::kOff ? ShiftExponent::kOff : e));
    if (level.off()) return {};
  }
  return {signs[static_cast<std::size_t>(segment)], level};
}

// Applies one raw eligibility to a weight slot with rounding and clipping.
void apply(PlasticityContext& ctx, const LearningGroup& lg, const Synapse& syn,
           std::int32_t raw, Tick now, bool causal) {
  if (raw == 0) return;
  std::int32_t dw = raw;
  if (lg.rounding_bits > 0) {
    const std::uint32_t mask = (1u << lg.rounding_bits) - 1u;
    const std::uint32_t draw =
        (static_cast<std::uint32_t>(raw) & mask) != 0 ? ctx.rng->next_uniform() : 0u;
    dw = randomized_round(raw, lg.rounding_bits, draw);
  }
  WeightWord& w = ctx.table->weights()[syn.slot];
  w = static_cast<WeightWord>(clamp_unchecked(w + dw, lg.wmin, lg.wmax));
  ++ctx.updates;
  if (ctx.log != nullptr) ctx.log->push_back({now, syn.slot, syn.target, dw, w, causal});
}

bool gate_open(const LearningGroup& lg, const NeuronState& n) {
  if (!lg.gate_enabled) return true;
  const std::int32_t v = n.x[static_cast<std::size_t>(lg.gate_component)];
  return v >= lg.gate_lo && v <= lg.gate_hi;
}

std::int32_t modulator_of(const PlasticityContext& ctx, std::uint32_t target) {
  const ParamGroup& g = ctx.groups[ctx.group_of[target]];
  return ctx.post[target].x[static_cast<std::size_t>(g.modulator)];
}

}  // namespace

void StdpKernel::validate() const {
  if (!(0 < tca[0] && tca[0] <= tca[1])) {
    throw ConfigError("tca: causal breakpoints must satisfy 0 < tca0 <= tca1");
  }
  if (!(tac[1] <= tac[0] && tac[0] < 0)) {
    throw ConfigError("tac: acausal breakpoints must satisfy tac1 <= tac0 < 0");
  }
  check_levels(hica, sica, "hica/sica");
  check_levels(hiac, siac, "hiac/siac");
  if (slca < 0 || slca > 31 || slac < 0 || slac > 31) {
    throw ConfigError("slca/slac: slope must be in [0, 31]");
  }
}

KernelValue kernel_eval(const StdpKernel& kern, Tick dt) {
  if (dt == 0) return {};
  const Tick mag = dt < 0 ? -dt : dt;
  if (mag > kern.window()) return {};
  if (dt > 0) {
    const int seg = mag <= kern.tca[0] ? 0 : (mag <= kern.tca[1] ? 1 : 2);
    return segment_value(kern.hica, kern.sica, seg, mag, kern.slca, kern.mode);
  }
  const int seg = mag <= -kern.tac[0] ? 0 : (mag <= -kern.tac[1] ? 1 : 2);
  return segment_value(kern.hiac, kern.siac, seg, mag, kern.slac, kern.mode);
}

std::int32_t modulated_eligibility(KernelValue kv, std::int32_t x_m) {
  if (kv.zero()) return 0;
  return kv.sign * diamond(kv.level, x_m);
}

LearningGroup LearningGroup::defaults(int k) {
  LearningGroup lg;
  lg.plastic.assign(static_cast<std::size_t>(k), 0);
  return lg;
}

void LearningGroup::validate(int k) const {
  if (rule == LearningRule::kStdp) kernel.validate();
  check_levels(kernel.hiac, kernel.siac, "hiac/siac");
  if (plastic.size() != static_cast<std::size_t>(k)) {
    throw ConfigError("plastic: expected " + std::to_string(k) + " entries");
  }
  if (rounding_bits < 0 || rounding_bits > 16) {
    throw ConfigError("rounding_bits: must be in [0, 16]");
  }
  if (wmin < kWeightMin || wmax > kWeightMax || wmin > wmax) {
    throw ConfigError("wmin/wmax: bounds must satisfy -128 <= wmin <= wmax <= 127");
  }
  if (gate_enabled && (gate_component < 0 || gate_component >= k || gate_lo > gate_hi)) {
    throw ConfigError("gate: component out of range or empty interval");
  }
}

SynapseTable SynapseTable::build(std::span<const SynapseRecord> records,
                                 std::span<const std::uint32_t> core_sizes) {
  SynapseTable t;
  const std::size_t n = records.size();
  t.record_slot_.assign(n, 0);
  // Owning records get slots in record order; tied ones borrow.
  std::vector<std::uint32_t> own_slot(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const SynapseRecord& r = records[i];
    if (r.src.core >= core_sizes.size() || r.src.neuron >= core_sizes[r.src.core]) {
      throw ConfigError("synapse " + std::to_string(i) + ": source (" +
                        std::to_string(r.src.core) + ", " + std::to_string(r.src.neuron) +
                        ") does not exist");
    }
    if (!r.tied) {
      own_slot[i] = static_cast<std::uint32_t>(t.weights_.size());
      t.weights_.push_back(r.weight);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    const SynapseRecord& r = records[i];
    if (r.tied) {
      if (r.tie >= n || records[r.tie].tied) {
        throw ConfigError("synapse " + std::to_string(i) + ": tie " + std::to_string(r.tie) +
                          " must reference an untied record");
      }
      t.record_slot_[i] = own_slot[r.tie];
    } else {
      t.record_slot_[i] = own_slot[i];
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return records[a].src < records[b].src; });

  t.lookup_.resize(core_sizes.size());
  for (std::size_t c = 0; c < core_sizes.size(); ++c) t.lookup_[c].assign(core_sizes[c], -1);
  t.offsets_.push_back(0);
  for (std::size_t idx : order) {
    const SynapseRecord& r = records[idx];
    if (t.sources_.empty() || t.sources_.back() != r.src) {
      if (!t.sources_.empty()) t.offsets_.push_back(static_cast<std::uint32_t>(t.synapses_.size()));
      t.lookup_[r.src.core][r.src.neuron] = static_cast<std::int32_t>(t.sources_.size());
      t.sources_.push_back(r.src);
      t.has_plastic_.push_back(0);
    }
    t.synapses_.push_back({r.dst, r.component, r.plastic, t.record_slot_[idx]});
    if (r.plastic) t.has_plastic_.back() = 1;
  }
  if (!t.sources_.empty()) t.offsets_.push_back(static_cast<std::uint32_t>(t.synapses_.size()));
  return t;
}

void on_pre_spike(PlasticityContext& ctx, std::uint32_t source, Tick now) {
  for (const Synapse& syn : ctx.table->fanout(source)) {
    if (!syn.plastic) continue;
    const std::int16_t lgi = ctx.lgroup_of[syn.target];
    if (lgi < 0) continue;
    const LearningGroup& lg = ctx.lgroups[static_cast<std::size_t>(lgi)];
    if (!lg.plastic[syn.component]) continue;
    const NeuronState& post = ctx.post[syn.target];
    if (!gate_open(lg, post)) continue;
    const std::int32_t x_m = modulator_of(ctx, syn.target);
    if (lg.rule == LearningRule::kState) {
      const KernelValue kv{lg.kernel.siac[0], lg.kernel.hiac[0]};
      apply(ctx, lg, syn, modulated_eligibility(kv, x_m), now, false);
      continue;
    }
    const Tick q = post.last_spike;
    if (q == kNever || q >= now || now - q > lg.kernel.window()) continue;
    apply(ctx, lg, syn, modulated_eligibility(kernel_eval(lg.kernel, q - now), x_m), now, false);
  }
}

void on_timer_event(PlasticityContext& ctx, std::uint32_t source, Tick t_pre, Tick now) {
  for (const Synapse& syn : ctx.table->fanout(source)) {
    if (!syn.plastic) continue;
    const std::int16_t lgi = ctx.lgroup_of[syn.target];
    if (lgi < 0) continue;
    const LearningGroup& lg = ctx.lgroups[static_cast<std::size_t>(lgi)];
    if (lg.rule != LearningRule::kStdp || !lg.plastic[syn.component]) continue;
    const NeuronState& post = ctx.post[syn.target];
    const Tick q = post.last_spike;
    const Tick horizon = std::min(now, t_pre + lg.kernel.window());
    if (q == kNever || q <= t_pre || q > horizon) continue;
    if (!gate_open(lg, post)) continue;
    const std::int32_t x_m = modulator_of(ctx, syn.target);
    apply(ctx, lg, syn, modulated_eligibility(kernel_eval(lg.kernel, q - t_pre), x_m), now, true);
  }
}

StdpTimers::StdpTimers(std::size_t sources, std::int32_t window)
    : window_(window),
      last_(sources, kNever),
      expiry_(sources, kNever),
      wheel_(static_cast<std::size_t>(window) + 1) {}

void StdpTimers::restart(std::uint32_t s, Tick now) {
  last_[s] = now;
  if (window_ <= 0) return;
  expiry_[s] = now + window_;
  wheel_[static_cast<std::size_t>(expiry_[s] % static_cast<Tick>(wheel_.size()))].push_back(s);
}

void StdpTimers::take_expired(Tick now, std::vector<std::uint32_t>& out) {
  out.clear();
  if (window_ <= 0) return;
  auto& bucket = wheel_[static_cast<std::size_t>(now % static_cast<Tick>(wheel_.size()))];
  for (std::uint32_t s : bucket) {
    // Restarted timers leave stale entries behind; only live ones count.
    if (expiry_[s] == now) {
      out.push_back(s);
      expiry_[s] = kNever;
    }
  }
  bucket.clear();
  std::sort(out.begin(), out.end());
}

}  // namespace nsat
