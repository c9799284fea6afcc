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

#include <array>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "json.hpp"
#include "nsat/error.hpp"
#include "nsat/iolib.hpp"

namespace nsat {

namespace {

constexpr char kEventMagic[4] = {'N', 'S', 'E', 'V'};
constexpr char kSynapseMagic[4] = {'N', 'S', 'Y', 'N'};

template <typename T>
void put(char*& p, T v) {
  auto u = static_cast<std::make_unsigned_t<T>>(v);
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    *p++ = static_cast<char>(u & 0xffu);
    u = static_cast<decltype(u)>(u >> 8);
  }
}

template <typename T>
T get(const char*& p) {
  std::make_unsigned_t<T> u = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    u = static_cast<decltype(u)>(u | (static_cast<decltype(u)>(static_cast<unsigned char>(*p++))
                                      << (8 * i)));
  }
  return static_cast<T>(u);
}

void write_header(std::ostream& out, const char (&magic)[4], std::uint32_t version,
                  std::uint64_t count) {
  char buf[16];
  char* p = buf;
  std::memcpy(p, magic, 4);
  p += 4;
  put(p, version);
  put(p, count);
  out.write(buf, sizeof buf);
}

std::uint64_t read_header(std::istream& in, const char (&magic)[4], std::uint32_t version,
                          const char* what) {
  char buf[16];
  in.read(buf, sizeof buf);
  if (in.gcount() != static_cast<std::streamsize>(sizeof buf)) {
    throw RuntimeError(std::string(what) + ": truncated header");
  }
  if (std::memcmp(buf, magic, 4) != 0) throw RuntimeError(std::string(what) + ": bad magic");
  const char* p = buf + 4;
  const auto v = get<std::uint32_t>(p);
  if (v != version) {
    throw RuntimeError(std::string(what) + ": unsupported version " + std::to_string(v));
  }
  return get<std::uint64_t>(p);
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw RuntimeError("cannot open " + path.string());
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw RuntimeError("cannot write " + path.string());
  return out;
}

}  // namespace

void write_events(std::ostream& out, const std::vector<EventRecord>& events) {
  for (std::size_t i = 1; i < events.size(); ++i) {
    if (events[i].tick < events[i - 1].tick) {
      throw RuntimeError("write_events: tick regression at record " + std::to_string(i));
    }
  }
  write_header(out, kEventMagic, kEventFileVersion, events.size());
  std::vector<char> buf(events.size() * kEventRecordBytes);
  char* p = buf.data();
  for (const EventRecord& e : events) {
    put(p, e.tick);
    put(p, e.core);
    put(p, e.neuron);
    put(p, e.delay);
  }
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  if (!out) throw RuntimeError("write_events: write failed");
}

void write_events(const std::filesystem::path& path, const std::vector<EventRecord>& events) {
  auto out = open_out(path);
  write_events(out, events);
}

std::vector<EventRecord> read_events(std::istream& in) {
  const std::uint64_t count = read_header(in, kEventMagic, kEventFileVersion, "event file");
  std::vector<EventRecord> events;
  events.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(count, 1u << 24)));
  std::array<char, kEventRecordBytes> rec;
  for (std::uint64_t i = 0; i < count; ++i) {
    in.read(rec.data(), rec.size());
    if (in.gcount() != static_cast<std::streamsize>(rec.size())) {
      throw RuntimeError("event file: record " + std::to_string(i) + " truncated (" +
                         std::to_string(count) + " declared)");
    }
    const char* p = rec.data();
    EventRecord e;
    e.tick = get<std::uint32_t>(p);
    e.core = get<std::uint16_t>(p);
    e.neuron = get<std::uint32_t>(p);
    e.delay = get<std::uint16_t>(p);
    if (!events.empty() && e.tick < events.back().tick) {
      throw RuntimeError("event file: record " + std::to_string(i) + " tick " +
                         std::to_string(e.tick) + " precedes tick " +
                         std::to_string(events.back().tick));
    }
    events.push_back(e);
  }
  if (in.peek() != std::char_traits<char>::eof()) {
    throw RuntimeError("event file: trailing bytes after record " + std::to_string(count));
  }
  return events;
}

std::vector<EventRecord> read_events(const std::filesystem::path& path) {
  auto in = open_in(path);
  try {
    return read_events(in);
  } catch (const RuntimeError& e) {
    throw RuntimeError(path.string() + ": " + e.what());
  }
}

void write_synapses(const std::filesystem::path& path, const std::vector<SynapseRecord>& recs) {
  auto out = open_out(path);
  write_header(out, kSynapseMagic, kSynapseFileVersion, recs.size());
  std::vector<char> buf(recs.size() * kSynapseRecordBytes);
  char* p = buf.data();
  for (const SynapseRecord& r : recs) {
    put(p, r.src.core);
    put(p, r.src.neuron);
    put(p, r.dst);
    put(p, r.component);
    put(p, r.weight);
    put(p, static_cast<std::uint8_t>((r.plastic ? 1u : 0u) | (r.tied ? 2u : 0u)));
    put(p, r.tie);
  }
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  if (!out) throw RuntimeError("write_synapses: write failed for " + path.string());
}

std::vector<SynapseRecord> read_synapses(const std::filesystem::path& path) {
  auto in = open_in(path);
  const std::string what = path.string();
  const std::uint64_t count = read_header(in, kSynapseMagic, kSynapseFileVersion, what.c_str());
  std::vector<SynapseRecord> recs;
  recs.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(count, 1u << 24)));
  std::array<char, kSynapseRecordBytes> rec;
  for (std::uint64_t i = 0; i < count; ++i) {
    in.read(rec.data(), rec.size());
    if (in.gcount() != static_cast<std::streamsize>(rec.size())) {
      throw RuntimeError(what + ": synapse record " + std::to_string(i) + " truncated");
    }
    const char* p = rec.data();
    SynapseRecord r;
    r.src.core = get<std::uint16_t>(p);
    r.src.neuron = get<std::uint32_t>(p);
    r.dst = get<std::uint32_t>(p);
    r.component = get<std::uint8_t>(p);
    r.weight = get<std::int8_t>(p);
    const auto flags = get<std::uint8_t>(p);
    if (flags & ~3u) {
      throw RuntimeError(what + ": synapse record " + std::to_string(i) + " has unknown flags");
    }
    r.plastic = (flags & 1u) != 0;
    r.tied = (flags & 2u) != 0;
    r.tie = get<std::uint32_t>(p);
    recs.push_back(r);
  }
  if (in.peek() != std::char_traits<char>::eof()) {
    throw RuntimeError(what + ": trailing bytes after synapse record " + std::to_string(count));
  }
  return recs;
}

std::string stats_json(const RunStats& stats) {
  using nlohmann::ordered_json;
  auto core_json = [](const CoreStats& c) {
    ordered_json j;
    j["synops"] = c.synops;
    j["blanked"] = c.blanked;
    j["spikes"] = c.spikes;
    j["weight_updates"] = c.weight_updates;
    j["events_delivered"] = c.events_delivered;
    return j;
  };
  ordered_json j;
  j["format"] = "nsat-stats/1";
  j["ticks"] = stats.ticks;
  j["total"] = core_json(stats.total());
  j["events_emitted"] = stats.events_emitted;
  j["events_injected"] = stats.events_injected;
  j["events_pending"] = stats.events_pending;
  j["events_dropped"] = stats.events_dropped;
  j["cores"] = ordered_json::array();
  for (const auto& c : stats.cores) j["cores"].push_back(core_json(c));
  return j.dump(2) + "\n";
}

}  // namespace nsat
