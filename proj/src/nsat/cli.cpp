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

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "nsat/error.hpp"
#include "nsat/iolib.hpp"

namespace nsat {

namespace fs = std::filesystem;

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"nsat: multi-core fixed-point spiking network simulator"};
  app.name("nsat");
  std::string config_path;
  std::optional<std::int64_t> ticks;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> rng;
  int threads = 0;
  std::string out_dir;
  std::vector<std::string> monitors;
  bool print_stats = false;
  app.add_option("--config", config_path, "simulation config (YAML or JSON)")
      ->required()
      ->check(CLI::ExistingFile);
  app.add_option("--ticks", ticks, "override the number of ticks")->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "override the RNG seed");
  app.add_option("--rng", rng, "RNG backend")->check(CLI::IsMember({"software", "hardware"}));
  app.add_option("--threads", threads, "host threads (default: one per core)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--out", out_dir, "output directory (default: config output_dir, $NSAT_OUT, nsat_out)");
  app.add_option("--monitor", monitors,
                 "monitor spec kind[,core=C][,neurons=A-B+C][,components=I+J][,every=N]; "
                 "kind is spikes, states, weights or stats");
  app.add_flag("--stats", print_stats, "print the stats summary to standard output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "nsat: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  SimulationConfig cfg;
  try {
    std::vector<std::string> warnings;
    cfg = load_config(config_path, &warnings);
    if (seed) {
      cfg.seed = *seed;
    } else {
      for (const auto& w : warnings) std::cerr << "nsat: warning: " << w << "\n";
    }
    if (ticks) cfg.ticks = *ticks;
    if (rng) cfg.rng = rng_backend_from_string(*rng);
    for (const auto& m : monitors) cfg.monitors.push_back(parse_monitor_spec(m));
    cfg.validate();
  } catch (const ConfigError& e) {
    std::cerr << "nsat: config error: " << e.what() << "\n";
    return 2;
  }

  try {
    fs::path dir;
    if (!out_dir.empty()) {
      dir = out_dir;
    } else if (!cfg.output_dir.empty()) {
      dir = fs::path(config_path).parent_path() / cfg.output_dir;
    } else if (const char* env = std::getenv("NSAT_OUT"); env != nullptr && *env != '\0') {
      dir = env;
    } else {
      dir = "nsat_out";
    }
    fs::create_directories(dir);

    Simulator sim(cfg);
    MonitorWriter writer(dir, cfg.monitors);
    sim.set_observer(&writer);
    const int nthreads = threads > 0 ? threads : static_cast<int>(sim.num_cores());
    sim.run(cfg.ticks, nthreads);
    writer.flush();

    write_events(dir / "spikes.evt", sim.spikes());
    const std::string stats = stats_json(sim.stats());
    std::ofstream sf(dir / "stats.json", std::ios::binary | std::ios::trunc);
    sf << stats;
    if (!sf) throw RuntimeError("cannot write " + (dir / "stats.json").string());
    if (print_stats) std::cout << stats;
  } catch (const ConfigError& e) {
    std::cerr << "nsat: config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "nsat: error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace nsat
