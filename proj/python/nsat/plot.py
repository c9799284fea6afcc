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

"""Figures from run results. Plotting never touches the run directory."""

from __future__ import annotations

import os
from pathlib import Path
from typing import Any, Sequence

import numpy as np

from .results import RunResult

KINDS = ("raster", "states", "error", "weights")


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def plot(result: RunResult | Sequence[tuple[float, float]], kind: str,
         path: str | os.PathLike, *, neuron: int = 0, core: int = 0,
         components: Sequence[int] = (0, 1), **style: Any) -> Path:
    """Writes one figure.

    raster:  spikes of every neuron
    states:  state traces of one neuron (membrane and threshold by default)
    error:   error against operations from (ops, error) pairs
    weights: histogram of the last weight snapshot
    """
    if kind not in KINDS:
        raise ValueError(f"unknown plot kind '{kind}' (expected one of {', '.join(KINDS)})")
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=style.pop("figsize", (6, 3.5)))
    if kind == "raster":
        sp = result.spikes
        ax.plot(sp["tick"], sp["neuron"], "|k",
                markersize=style.pop("markersize", 4))
        ax.set_xlabel("tick")
        ax.set_ylabel("neuron")
    elif kind == "states":
        for c in components:
            t, v = result.trace(neuron, c, core)
            ax.plot(t, v, label=f"x{c}")
        ax.set_xlabel("tick")
        ax.set_ylabel("state")
        ax.legend(loc="upper right")
    elif kind == "error":
        pts = np.asarray(result, dtype=float).reshape(-1, 2)
        ax.plot(pts[:, 0], pts[:, 1], "o-")
        if pts.size and pts[:, 0].max() > 0:
            ax.set_xscale("log")
        ax.set_xlabel("operations")
        ax.set_ylabel("error")
    else:
        w = result.weights
        if w is not None and w.size:
            last = w[w[:, 0] == w[:, 0].max(), 7]
            ax.hist(last, bins=np.arange(-128.5, 128.5, 4))
        ax.set_xlabel("weight")
        ax.set_ylabel("count")
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path)
    plt.close(fig)
    return path
