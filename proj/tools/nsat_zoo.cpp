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

// Experiment zoo: writes runnable bundles and drives the training harnesses.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "nsat/error.hpp"
#include "nsat/iolib.hpp"
#include "nsat/zoo/erbm.hpp"
#include "nsat/zoo/erbp.hpp"
#include "nsat/zoo/experiments.hpp"
#include "nsat/zoo/idx.hpp"
#include "nsat/zoo/reference.hpp"
#include "nsat/zoo/spike_pattern.hpp"

namespace fs = std::filesystem;
using namespace nsat;
using namespace nsat::zoo;

namespace {

void write_trace(const fs::path& path, const std::vector<TracePoint>& trace) {
  std::ofstream out(path);
  out << "ops\terror\n";
  for (const TracePoint& p : trace) out << p.ops << '\t' << p.error << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nsat experiment zoo"};
  app.require_subcommand(1);

  auto* list = app.add_subcommand("list", "List experiment names");

  auto* build = app.add_subcommand("build", "Write a config bundle for an experiment");
  std::string spec_text;
  std::string out_dir = ".";
  std::uint64_t seed = kDefaultSeed;
  build->add_option("experiment", spec_text, "name[,knob=value...]")->required();
  build->add_option("--out", out_dir, "Bundle directory");
  build->add_option("--seed", seed, "Experiment seed");

  auto* erbp = app.add_subcommand("erbp", "Train and test the eRBP network on the digit slices");
  ErbpOptions eo;
  std::size_t train_n = 5000, test_n = 1000;
  bool with_reference = true;
  std::string report_dir;
  erbp->add_option("--hidden", eo.hidden);
  erbp->add_option("--epochs", eo.epochs);
  erbp->add_option("--train", train_n, "Training digits");
  erbp->add_option("--test", test_n, "Test digits");
  erbp->add_option("--seed", eo.seed);
  erbp->add_flag("!--no-reference", with_reference, "Skip the float reference trainer");
  erbp->add_option("--report", report_dir, "Directory for traces and the SynOp report");

  auto* ref = app.add_subcommand("reference", "Train the float reference network");
  ReferenceOptions ro;
  ref->add_option("--hidden", ro.hidden);
  ref->add_option("--epochs", ro.epochs);
  ref->add_option("--lr", ro.learning_rate);
  ref->add_option("--train", train_n);
  ref->add_option("--test", test_n);
  ref->add_option("--seed", ro.seed);

  auto* erbm = app.add_subcommand("erbm", "Train the eRBM on bars and stripes");
  ErbmOptions bo;
  erbm->add_option("--hidden", bo.hidden);
  erbm->add_option("--epochs", bo.epochs);
  erbm->add_option("--seed", bo.seed);
  erbm->add_option("--noise-exp", bo.noise_exp);
  erbm->add_option("--init-scale", bo.init_scale);
  erbm->add_option("--rounding-bits", bo.rounding_bits);
  erbm->add_option("--data-ticks", bo.data_ticks);
  erbm->add_option("--model-ticks", bo.model_ticks);
  erbm->add_option("--test-ticks", bo.test_ticks);

  auto* sp = app.add_subcommand("spike-pattern", "Train and score spike-pattern detection");
  SpikePatternOptions so;
  sp->add_option("--inputs", so.inputs);
  sp->add_option("--outputs", so.outputs);
  sp->add_option("--train-ticks", so.train_ticks);
  sp->add_option("--test-ticks", so.test_ticks);
  sp->add_option("--seed", so.seed);
  sp->add_option("--rate", so.rate_hz);
  sp->add_option("--pattern-ticks", so.pattern_ticks);
  sp->add_option("--theta", so.theta);
  sp->add_option("--weight-gain", so.weight_gain);
  sp->add_option("--init-max", so.init_max);
  sp->add_option("--learn-shift", so.learn_shift);
  sp->add_option("--rounding-bits", so.rounding_bits);
  sp->add_option("--refractory", so.refractory);
  sp->add_option("--gap-min", so.gap_min);
  sp->add_option("--gap-max", so.gap_max);
  bool histogram = false;
  sp->add_flag("--histogram", histogram, "Print test spike offsets from the last onset (10-tick bins)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*list) {
      for (const auto& n : experiment_names()) std::cout << n << '\n';
    } else if (*build) {
      ExperimentSpec spec = ExperimentSpec::parse(spec_text);
      spec.seed = seed;
      const SimulationConfig cfg = build_experiment(spec);
      fs::create_directories(out_dir);
      save_config(cfg, fs::path(out_dir) / "config.yaml");
      std::cout << (fs::path(out_dir) / "config.yaml").string() << '\n';
    } else if (*erbp) {
      const DigitSet train = load_digits("train", train_n);
      const DigitSet test = load_digits("test", test_n);
      const ErbpResult r = run_erbp(eo, train, test, [](const ErbpEpoch& e) {
        std::printf("epoch %d  test_error %.4f  synops %llu  updates %llu\n", e.epoch,
                    e.test_error, static_cast<unsigned long long>(e.synops),
                    static_cast<unsigned long long>(e.weight_updates));
        std::fflush(stdout);
      });
      std::vector<TracePoint> ref_trace;
      if (with_reference) {
        ReferenceOptions o;
        o.hidden = eo.hidden;
        o.epochs = eo.epochs;
        o.seed = eo.seed;
        const ReferenceResult rr = train_reference(train, test, o);
        ref_trace = rr.trace;
        std::printf("reference test_error %.4f  macs %llu\n", rr.final_error,
                    static_cast<unsigned long long>(rr.macs));
      }
      const std::vector<double> targets{0.5, 0.3, 0.2, 0.15, 0.1};
      const auto rows = synop_report(r.trace, ref_trace, targets);
      std::cout << format_report(rows);
      if (!report_dir.empty()) {
        fs::create_directories(report_dir);
        write_trace(fs::path(report_dir) / "erbp_trace.tsv", r.trace);
        write_trace(fs::path(report_dir) / "reference_trace.tsv", ref_trace);
        std::ofstream(fs::path(report_dir) / "synop_report.tsv") << format_report(rows);
      }
    } else if (*ref) {
      const ReferenceResult rr =
          train_reference(load_digits("train", train_n), load_digits("test", test_n), ro);
      for (const TracePoint& p : rr.trace) std::printf("%.0f\t%.4f\n", p.ops, p.error);
      std::printf("final test_error %.4f  macs %llu\n", rr.final_error,
                  static_cast<unsigned long long>(rr.macs));
    } else if (*erbm) {
      const ErbmResult r = run_erbm(bo, [](const ErbmEpoch& e) {
        std::printf("epoch %d  errors %d/32  symmetric %d  synops %llu\n", e.epoch, e.errors,
                    e.symmetric ? 1 : 0, static_cast<unsigned long long>(e.synops));
        std::fflush(stdout);
      });
      std::printf("symmetric every epoch: %s\n", r.symmetric_every_epoch ? "yes" : "no");
    } else if (*sp) {
      const SpikePatternTask task = build_spike_pattern(so);
      Simulator sim(task.config);
      sim.run(task.test_start);
      sim.set_learning(false);
      sim.run(task.config.ticks - task.test_start);
      const SpikePatternScore s = score_spike_pattern(task, so, sim.spikes());
      if (histogram) {
        std::vector<std::vector<int>> bins(static_cast<std::size_t>(so.outputs),
                                           std::vector<int>(25, 0));
        for (const EventRecord& e : sim.spikes()) {
          if (e.tick < task.test_start) continue;
          auto it = std::upper_bound(task.test_onsets.begin(), task.test_onsets.end(),
                                     static_cast<Tick>(e.tick));
          if (it == task.test_onsets.begin()) continue;
          const auto off = static_cast<std::size_t>((e.tick - *std::prev(it)) / 10);
          ++bins[e.neuron][std::min<std::size_t>(off, 24)];
        }
        for (std::size_t j = 0; j < bins.size(); ++j) {
          std::printf("hist %zu:", j);
          for (int b : bins[j]) std::printf(" %d", b);
          std::printf("\n");
        }
      }
      for (std::size_t j = 0; j < s.spikes.size(); ++j) {
        std::printf("output %zu  spikes %llu  in_window %.3f\n", j,
                    static_cast<unsigned long long>(s.spikes[j]), s.in_window_fraction[j]);
      }
      std::printf("presentations %zu  hit %zu\n", s.presentations, s.presentations_hit);
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
