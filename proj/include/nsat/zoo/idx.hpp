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

#ifndef NSAT_ZOO_IDX_HPP_
#define NSAT_ZOO_IDX_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace nsat::zoo {

inline constexpr std::uint32_t kIdxImageMagic = 0x00000803;
inline constexpr std::uint32_t kIdxLabelMagic = 0x00000801;

struct DigitSet {
  std::uint32_t rows = 0;
  std::uint32_t cols = 0;
  std::vector<std::vector<std::uint8_t>> images;
  std::vector<std::uint8_t> labels;

  std::size_t size() const { return labels.size(); }
  std::size_t pixels() const { return static_cast<std::size_t>(rows) * cols; }
};

// Reads an IDX image file and its label file. Files ending in ".gz" are
// decompressed. At most `limit` items are kept starting at `offset`.
// Throws RuntimeError on a missing file, bad magic or short data.
DigitSet load_idx(const std::filesystem::path& images, const std::filesystem::path& labels,
                  std::size_t offset = 0, std::size_t limit = SIZE_MAX);

void write_idx(const std::filesystem::path& images, const std::filesystem::path& labels,
               const DigitSet& set);

// Directory holding the bundled digit files: $NSAT_DATA if set, otherwise
// the source tree's data/ directory.
std::filesystem::path data_dir();

// The bundled digit slices: "train" (5000 digits) and "test" (1000 digits).
DigitSet load_digits(const std::string& split, std::size_t limit = SIZE_MAX);

}  // namespace nsat::zoo

#endif  // NSAT_ZOO_IDX_HPP_
