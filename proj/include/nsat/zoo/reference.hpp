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

#ifndef NSAT_ZOO_REFERENCE_HPP_
#define NSAT_ZOO_REFERENCE_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nsat/zoo/idx.hpp"

namespace nsat::zoo {

// Operations spent so far and the test error measured at that point.
struct TracePoint {
  double ops = 0;
  double error = 1;
};

struct ReferenceOptions {
  int hidden = 100;
  int epochs = 10;
  double learning_rate = 0.05;
  std::size_t eval_every = 500;  // training samples between test evaluations
  std::uint64_t seed = 1;
};

struct ReferenceResult {
  std::vector<TracePoint> trace;  // ops are MACs
  double final_error = 1;
  std::uint64_t macs = 0;
};

// Multiplies inside the matrix products of one SGD step of an
// inputs-hidden-outputs perceptron: two forward products, the hidden error
// product and the two weight-gradient outer products.
std::uint64_t reference_macs_per_sample(std::uint64_t inputs, std::uint64_t hidden,
                                        std::uint64_t outputs);

// Plain float two-layer network (sigmoid hidden layer, softmax output,
// cross-entropy, per-sample SGD). Evaluation passes are not counted.
ReferenceResult train_reference(const DigitSet& train, const DigitSet& test,
                                const ReferenceOptions& options = {});

struct ReportRow {
  double error_target = 0;
  std::optional<double> synops;
  std::optional<double> macs;
  std::optional<double> ratio;  // synops / macs
  bool interpolated = false;    // a target fell between trace points
};

// Operations needed to first reach each error target. Targets between two
// trace points are linearly interpolated and flagged; unreached targets and
// an empty reference trace leave the columns empty.
std::vector<ReportRow> synop_report(std::span<const TracePoint> nsat,
                                    std::span<const TracePoint> reference,
                                    std::span<const double> error_targets);

// Tab separated: error_target, synops, macs, ratio, interpolated.
std::string format_report(std::span<const ReportRow> rows);

}  // namespace nsat::zoo

#endif  // NSAT_ZOO_REFERENCE_HPP_
