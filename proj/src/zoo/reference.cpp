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

#include "nsat/zoo/reference.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "nsat/error.hpp"
#include "nsat/rng.hpp"
#include "nsat/zoo/common.hpp"

namespace nsat::zoo {

namespace {

struct Mlp {
  std::size_t ni, nh, no;
  std::vector<float> w1, b1, w2, b2;  // w1[h * ni + i], w2[o * nh + h]
  std::vector<float> h, o;

  void forward(const std::vector<float>& x) {
    for (std::size_t j = 0; j < nh; ++j) {
      float a = b1[j];
      const float* w = &w1[j * ni];
      for (std::size_t i = 0; i < ni; ++i) a += w[i] * x[i];
      h[j] = 1.0f / (1.0f + std::exp(-a));
    }
    float mx = -1e30f;
    for (std::size_t k = 0; k < no; ++k) {
      float a = b2[k];
      const float* w = &w2[k * nh];
      for (std::size_t j = 0; j < nh; ++j) a += w[j] * h[j];
      o[k] = a;
      mx = std::max(mx, a);
    }
    float z = 0;
    for (auto& v : o) z += (v = std::exp(v - mx));
    for (auto& v : o) v /= z;
  }

  std::size_t predict(const std::vector<float>& x) {
    forward(x);
    return static_cast<std::size_t>(std::max_element(o.begin(), o.end()) - o.begin());
  }
};

std::vector<float> to_input(const std::vector<std::uint8_t>& img) {
  std::vector<float> x(img.size());
  for (std::size_t i = 0; i < img.size(); ++i) x[i] = img[i] / 255.0f;
  return x;
}

double test_error(Mlp& net, const std::vector<std::vector<float>>& xs, const DigitSet& test) {
  std::size_t wrong = 0;
  for (std::size_t n = 0; n < xs.size(); ++n) wrong += net.predict(xs[n]) != test.labels[n];
  return xs.empty() ? 1.0 : static_cast<double>(wrong) / static_cast<double>(xs.size());
}

std::optional<double> ops_to_reach(std::span<const TracePoint> trace, double target,
                                   bool& interpolated) {
  for (std::size_t i = 0; i < trace.size(); ++i) {
    if (trace[i].error > target) continue;
    if (trace[i].error == target || i == 0) return trace[i].ops;
    const TracePoint& a = trace[i - 1];
    const TracePoint& b = trace[i];
    interpolated = true;
    const double f = (a.error - target) / (a.error - b.error);
    return a.ops + f * (b.ops - a.ops);
  }
  return std::nullopt;
}

}  // namespace

std::uint64_t reference_macs_per_sample(std::uint64_t inputs, std::uint64_t hidden,
                                        std::uint64_t outputs) {
  const std::uint64_t layer1 = inputs * hidden;
  const std::uint64_t layer2 = hidden * outputs;
  return 2 * layer1 + 3 * layer2;
}

ReferenceResult train_reference(const DigitSet& train, const DigitSet& test,
                                const ReferenceOptions& options) {
  if (options.hidden < 1 || options.epochs < 0) throw ConfigError("reference: bad options");
  const std::size_t ni = train.pixels();
  const auto nh = static_cast<std::size_t>(options.hidden);
  const std::size_t no = 10;
  Mlp net{ni, nh, no, {}, {}, {}, {}, std::vector<float>(nh), std::vector<float>(no)};
  RngStream rng(RngBackend::kSoftware, options.seed, 7);
  auto init = [&](std::vector<float>& w, std::size_t n, std::size_t fan_in) {
    const double s = 1.0 / std::sqrt(static_cast<double>(fan_in));
    w.resize(n);
    for (auto& v : w) v = static_cast<float>((2 * uniform01(rng) - 1) * s);
  };
  init(net.w1, nh * ni, ni);
  init(net.w2, no * nh, nh);
  net.b1.assign(nh, 0);
  net.b2.assign(no, 0);

  std::vector<std::vector<float>> xs, ts;
  for (const auto& img : train.images) xs.push_back(to_input(img));
  for (const auto& img : test.images) ts.push_back(to_input(img));

  ReferenceResult res;
  const std::uint64_t per = reference_macs_per_sample(ni, nh, no);
  res.trace.push_back({0, test_error(net, ts, test)});
  std::vector<std::size_t> order(xs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<float> dout(no), dh(nh);
  const auto lr = static_cast<float>(options.learning_rate);
  std::size_t seen = 0;
  for (int e = 0; e < options.epochs; ++e) {
    for (std::size_t n = order.size(); n > 1; --n) {
      std::swap(order[n - 1], order[rng.next_uniform() % n]);
    }
    for (std::size_t idx : order) {
      const auto& x = xs[idx];
      net.forward(x);
      for (std::size_t k = 0; k < no; ++k) dout[k] = net.o[k] - (train.labels[idx] == k ? 1.f : 0.f);
      for (std::size_t j = 0; j < nh; ++j) {
        float a = 0;
        for (std::size_t k = 0; k < no; ++k) a += net.w2[k * nh + j] * dout[k];
        dh[j] = a * net.h[j] * (1 - net.h[j]);
      }
      for (std::size_t k = 0; k < no; ++k) {
        float* w = &net.w2[k * nh];
        for (std::size_t j = 0; j < nh; ++j) w[j] -= lr * dout[k] * net.h[j];
        net.b2[k] -= lr * dout[k];
      }
      for (std::size_t j = 0; j < nh; ++j) {
        float* w = &net.w1[j * ni];
        const float g = lr * dh[j];
        for (std::size_t i = 0; i < ni; ++i) w[i] -= g * x[i];
        net.b1[j] -= g;
      }
      res.macs += per;
      ++seen;
      if (options.eval_every > 0 && seen % options.eval_every == 0) {
        res.trace.push_back({static_cast<double>(res.macs), test_error(net, ts, test)});
      }
    }
  }
  res.final_error = test_error(net, ts, test);
  if (res.trace.back().ops != static_cast<double>(res.macs)) {
    res.trace.push_back({static_cast<double>(res.macs), res.final_error});
  }
  return res;
}

std::vector<ReportRow> synop_report(std::span<const TracePoint> nsat,
                                    std::span<const TracePoint> reference,
                                    std::span<const double> error_targets) {
  std::vector<ReportRow> rows;
  for (double target : error_targets) {
    ReportRow r;
    r.error_target = target;
    r.synops = ops_to_reach(nsat, target, r.interpolated);
    if (!reference.empty()) r.macs = ops_to_reach(reference, target, r.interpolated);
    if (r.synops && r.macs && *r.macs > 0) r.ratio = *r.synops / *r.macs;
    rows.push_back(r);
  }
  return rows;
}

std::string format_report(std::span<const ReportRow> rows) {
  std::ostringstream out;
  out << "error_target\tsynops\tmacs\tratio\tinterpolated\n";
  auto cell = [&](const std::optional<double>& v) {
    if (v) out << *v;
  };
  for (const ReportRow& r : rows) {
    out << r.error_target << '\t';
    cell(r.synops);
    out << '\t';
    cell(r.macs);
    out << '\t';
    cell(r.ratio);
    out << '\t' << (r.interpolated ? 1 : 0) << '\n';
  }
  return out.str();
}

}  // namespace nsat::zoo
