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

#include "nsat/zoo/idx.hpp"

#include <zlib.h>

#include <cstdlib>
#include <fstream>

#include "nsat/error.hpp"

#ifndef NSAT_DATA_DIR
#define NSAT_DATA_DIR "data"
#endif

namespace nsat::zoo {

namespace fs = std::filesystem;

namespace {

std::vector<std::uint8_t> read_all(const fs::path& path) {
  if (!fs::exists(path)) throw RuntimeError("dataset file missing: " + path.string());
  std::vector<std::uint8_t> out;
  gzFile f = gzopen(path.string().c_str(), "rb");  // reads plain files unchanged
  if (f == nullptr) throw RuntimeError("cannot open " + path.string());
  std::uint8_t buf[1 << 16];
  while (true) {
    const int n = gzread(f, buf, sizeof buf);
    if (n < 0) {
      gzclose(f);
      throw RuntimeError("decompression failed: " + path.string());
    }
    if (n == 0) break;
    out.insert(out.end(), buf, buf + n);
  }
  gzclose(f);
  return out;
}

std::uint32_t be32(const std::vector<std::uint8_t>& b, std::size_t at, const fs::path& p) {
  if (at + 4 > b.size()) throw RuntimeError(p.string() + ": truncated header");
  return (std::uint32_t{b[at]} << 24) | (std::uint32_t{b[at + 1]} << 16) |
         (std::uint32_t{b[at + 2]} << 8) | std::uint32_t{b[at + 3]};
}

void put_be32(std::vector<std::uint8_t>& b, std::uint32_t v) {
  for (int s = 24; s >= 0; s -= 8) b.push_back(static_cast<std::uint8_t>(v >> s));
}

void write_all(const fs::path& path, const std::vector<std::uint8_t>& data) {
  const bool gz = path.extension() == ".gz";
  if (gz) {
    gzFile f = gzopen(path.string().c_str(), "wb9");
    if (f == nullptr) throw RuntimeError("cannot write " + path.string());
    const int n = gzwrite(f, data.data(), static_cast<unsigned>(data.size()));
    gzclose(f);
    if (n != static_cast<int>(data.size())) throw RuntimeError("write failed: " + path.string());
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
  if (!out) throw RuntimeError("write failed: " + path.string());
}

}  // namespace

DigitSet load_idx(const fs::path& images, const fs::path& labels, std::size_t offset,
                  std::size_t limit) {
  const auto ib = read_all(images);
  const auto lb = read_all(labels);
  if (be32(ib, 0, images) != kIdxImageMagic) throw RuntimeError(images.string() + ": bad magic");
  if (be32(lb, 0, labels) != kIdxLabelMagic) throw RuntimeError(labels.string() + ": bad magic");
  const std::uint32_t n = be32(ib, 4, images);
  DigitSet set;
  set.rows = be32(ib, 8, images);
  set.cols = be32(ib, 12, images);
  if (be32(lb, 4, labels) != n) throw RuntimeError("image and label counts differ");
  const std::size_t px = set.pixels();
  if (ib.size() != 16 + static_cast<std::size_t>(n) * px) {
    throw RuntimeError(images.string() + ": expected " + std::to_string(n) + " images of " +
                       std::to_string(px) + " bytes");
  }
  if (lb.size() != 8 + static_cast<std::size_t>(n)) {
    throw RuntimeError(labels.string() + ": expected " + std::to_string(n) + " labels");
  }
  const std::size_t end = offset + std::min<std::size_t>(limit, n > offset ? n - offset : 0);
  for (std::size_t i = offset; i < end; ++i) {
    set.images.emplace_back(ib.begin() + static_cast<std::ptrdiff_t>(16 + i * px),
                            ib.begin() + static_cast<std::ptrdiff_t>(16 + (i + 1) * px));
    const std::uint8_t y = lb[8 + i];
    if (y > 9) throw RuntimeError(labels.string() + ": label out of range at " + std::to_string(i));
    set.labels.push_back(y);
  }
  return set;
}

void write_idx(const fs::path& images, const fs::path& labels, const DigitSet& set) {
  std::vector<std::uint8_t> ib;
  put_be32(ib, kIdxImageMagic);
  put_be32(ib, static_cast<std::uint32_t>(set.size()));
  put_be32(ib, set.rows);
  put_be32(ib, set.cols);
  for (const auto& img : set.images) {
    if (img.size() != set.pixels()) throw RuntimeError("write_idx: image size mismatch");
    ib.insert(ib.end(), img.begin(), img.end());
  }
  std::vector<std::uint8_t> lb;
  put_be32(lb, kIdxLabelMagic);
  put_be32(lb, static_cast<std::uint32_t>(set.size()));
  lb.insert(lb.end(), set.labels.begin(), set.labels.end());
  write_all(images, ib);
  write_all(labels, lb);
}

fs::path data_dir() {
  if (const char* env = std::getenv("NSAT_DATA"); env != nullptr && *env != '\0') return env;
  return NSAT_DATA_DIR;
}

DigitSet load_digits(const std::string& split, std::size_t limit) {
  if (split != "train" && split != "test") {
    throw ConfigError("digit split must be 'train' or 'test'");
  }
  const fs::path dir = data_dir();
  return load_idx(dir / ("digits-" + split + "-images.idx3-ubyte.gz"),
                  dir / ("digits-" + split + "-labels.idx1-ubyte.gz"), 0, limit);
}

}  // namespace nsat::zoo
