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

// Python bindings: fixed-point operators, random streams, config and event
// file access, experiment builders and the command-line runner.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <string>
#include <vector>

#include "nsat/error.hpp"
#include "nsat/fxp.hpp"
#include "nsat/iolib.hpp"
#include "nsat/rng.hpp"
#include "nsat/zoo/experiments.hpp"

namespace py = pybind11;
namespace fs = std::filesystem;

namespace {

int run(const std::vector<std::string>& args) {
  std::vector<const char*> argv{"nsat"};
  for (const auto& a : args) argv.push_back(a.c_str());
  py::gil_scoped_release release;
  return nsat::run_cli(static_cast<int>(argv.size()), argv.data());
}

std::vector<std::string> check_config(const fs::path& path) {
  std::vector<std::string> warnings;
  nsat::load_config(path, &warnings).validate();
  return warnings;
}

void compose_experiment(const std::string& spec, const fs::path& path, std::uint64_t seed) {
  nsat::zoo::ExperimentSpec s = nsat::zoo::ExperimentSpec::parse(spec);
  s.seed = seed;
  nsat::save_config(nsat::zoo::build_experiment(s), path);
}

py::list read_events(const fs::path& path) {
  py::list out;
  for (const auto& e : nsat::read_events(path)) out.append(py::make_tuple(e.tick, e.core, e.neuron, e.delay));
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "NSAT fixed-point spiking network simulator core";
  py::register_exception<nsat::ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<nsat::RuntimeError>(m, "CoreRuntimeError", PyExc_RuntimeError);

  m.def("diamond", [](int a, int x) { return nsat::diamond(a, x); }, py::arg("a"), py::arg("x"));
  m.def("diamonddiamond", [](int a, int x) { return nsat::diamonddiamond(a, x); }, py::arg("a"),
        py::arg("x"));
  m.def("randomized_round", &nsat::randomized_round, py::arg("dw"), py::arg("r"), py::arg("draw"));

  py::class_<nsat::RngStream>(m, "RngStream")
      .def(py::init([](const std::string& backend, std::uint64_t seed, std::uint64_t seq) {
             return nsat::RngStream(nsat::rng_backend_from_string(backend), seed, seq);
           }),
           py::arg("backend") = "software", py::arg("seed") = nsat::kDefaultSeed,
           py::arg("sequence") = 0)
      .def("next_uniform", &nsat::RngStream::next_uniform)
      .def("next_normal", [](nsat::RngStream& r, int sigma) {
        return r.next_normal(nsat::ShiftExponent(sigma));
      })
      .def("blankout_keep", &nsat::RngStream::blankout_keep)
      .def("serialize", &nsat::RngStream::serialize)
      .def_static("deserialize", &nsat::RngStream::deserialize);

  m.attr("DEFAULT_SEED") = nsat::kDefaultSeed;
  m.def("experiment_names", &nsat::zoo::experiment_names);
  m.def("compose_experiment", &compose_experiment, py::arg("spec"), py::arg("path"),
        py::arg("seed") = nsat::kDefaultSeed,
        "Builds a zoo experiment and writes its config and sidecars.");
  m.def("check_config", &check_config, py::arg("path"),
        "Loads and validates a config file; returns the parser warnings.");
  m.def("read_events", &read_events, py::arg("path"));
  m.def("run", &run, py::arg("args"), "Runs the command-line simulator in process.");
}
