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

#ifndef NSAT_IOLIB_HPP_
#define NSAT_IOLIB_HPP_

#include <filesystem>
#include <fstream>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "nsat/config.hpp"
#include "nsat/fabric.hpp"

namespace nsat {

inline constexpr std::string_view kConfigSchema = "nsat-config/1";

// Event files: "NSEV", u32 version (1), u64 record count, then per record
// (little-endian, 12 bytes) tick u32, core u16, neuron u32, delay u16.
inline constexpr std::uint32_t kEventFileVersion = 1;
inline constexpr std::size_t kEventRecordBytes = 12;

void write_events(std::ostream& out, const std::vector<EventRecord>& events);
void write_events(const std::filesystem::path& path, const std::vector<EventRecord>& events);
std::vector<EventRecord> read_events(std::istream& in);
std::vector<EventRecord> read_events(const std::filesystem::path& path);

// Synapse sidecar files: "NSYN", u32 version (1), u64 record count, then per
// record (little-endian, 17 bytes) src_core u16, src u32, dst u32, comp u8,
// weight i8, flags u8 (bit 0 plastic, bit 1 tied), tie u32.
inline constexpr std::uint32_t kSynapseFileVersion = 1;
inline constexpr std::size_t kSynapseRecordBytes = 17;

void write_synapses(const std::filesystem::path& path, const std::vector<SynapseRecord>& recs);
std::vector<SynapseRecord> read_synapses(const std::filesystem::path& path);

// Parses a YAML (or JSON) document. Relative sidecar paths resolve against
// base_dir. Errors carry "name:line:col: path: message". Warnings (such as
// a missing seed) are appended to `warnings` when given.
SimulationConfig parse_config(std::string_view text, const std::filesystem::path& base_dir,
                              std::string_view name = "<config>",
                              std::vector<std::string>* warnings = nullptr);
SimulationConfig load_config(const std::filesystem::path& path,
                             std::vector<std::string>* warnings = nullptr);

// Writes the config and its sidecars (synapse tables with more than
// `inline_limit` records, external events) next to `path`.
void save_config(const SimulationConfig& cfg, const std::filesystem::path& path,
                 std::size_t inline_limit = 256);
// YAML text only; sidecar names must already be set where needed.
std::string emit_config(const SimulationConfig& cfg, std::size_t inline_limit = 256);

// "kind[,core=C][,neurons=A-B+C][,components=I+J][,every=N]"
MonitorSpec parse_monitor_spec(std::string_view text);

// Streams monitor output into a directory: states.tsv, weights.tsv,
// spikes.tsv and stats.tsv as requested by the specs.
class MonitorWriter : public TickObserver {
 public:
  MonitorWriter(const std::filesystem::path& dir, std::vector<MonitorSpec> specs);
  void on_tick_end(const Simulator& sim, Tick t) override;
  void flush();

 private:
  std::vector<MonitorSpec> specs_;
  std::ofstream states_;
  std::ofstream weights_;
  std::ofstream spikes_;
  std::ofstream stats_;
  std::size_t spikes_seen_ = 0;
};

std::string stats_json(const RunStats& stats);

// Command-line runner. Returns 0 on success, 2 on usage or config errors
// and 1 on runtime errors.
int run_cli(int argc, const char* const* argv);

}  // namespace nsat

#endif  // NSAT_IOLIB_HPP_
