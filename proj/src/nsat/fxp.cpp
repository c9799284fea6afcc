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

#include "nsat/fxp.hpp"

#include <string>

namespace nsat {

void shift_matvec(std::span<const ShiftExponent> a, std::span<const std::int8_t> sa,
                  std::span<const StateWord> x, std::span<StateWord> out) {
  const std::size_t k = x.size();
  if (a.size() != k * k || sa.size() != k * k || out.size() != k) {
    throw ConfigError("shift_matvec: expected " + std::to_string(k) + "x" + std::to_string(k) +
                      " matrices for a state of size " + std::to_string(k));
  }
  for (std::size_t i = 0; i < k; ++i) {
    std::int64_t acc = 0;
    for (std::size_t j = 0; j < k; ++j) {
      const ShiftExponent e = a[i * k + j];
      if (e.off()) continue;
      acc += sa[i * k + j] * diamonddiamond(e, x[j]);
    }
    out[i] = static_cast<StateWord>(saturate16(acc));
  }
}

}  // namespace nsat
