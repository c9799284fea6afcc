# Copyright 2026 The nsat-sim Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Scripting client for the NSAT simulator.

Build a network, compose it into a run directory, run the core binary and
load the results:

    net = nsat.mnn_tonic()
    cfg = net.compose("run")
    res = nsat.run_and_load(cfg)
    nsat.plot(res, "states", "tonic.png")
"""

from .builder import (DEFAULT_SEED, Core, NetworkBuilder, ValidationError, default_group,
                      default_learning_group, mnn_tonic, read_events, read_synapses,
                      transpose, write_events, write_synapses)
from .plot import plot
from .results import FormatError, RunError, RunResult, find_binary, load, run_and_load

try:  # the compiled module is optional for the client
    from . import _core  # noqa: F401
except ImportError:  # pragma: no cover
    _core = None


def compose(net: NetworkBuilder, run_dir, name: str = "config.yaml"):
    """Validates a network and writes it into run_dir; returns the config path."""
    return net.compose(run_dir, name)


__all__ = [
    "DEFAULT_SEED", "Core", "FormatError", "NetworkBuilder", "RunError", "RunResult",
    "ValidationError", "compose", "default_group", "default_learning_group", "find_binary",
    "load", "mnn_tonic", "plot", "read_events", "read_synapses", "run_and_load", "transpose",
    "write_events", "write_synapses",
]
