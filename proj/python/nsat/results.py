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

"""Running the core simulator and loading what it writes."""

from __future__ import annotations

import json
import os
import shutil
import subprocess
import struct
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Sequence

import numpy as np

_HEADER = struct.Struct("<4sIQ")
_EVENT_DTYPE = np.dtype([("tick", "<u4"), ("core", "<u2"), ("neuron", "<u4"), ("delay", "<u2")])


class FormatError(ValueError):
    """An output file whose contents disagree with its header."""


class RunError(RuntimeError):
    """The core exited with a nonzero status."""

    def __init__(self, returncode: int, stderr: str, command: Sequence[str]):
        super().__init__(f"nsat exited with status {returncode}: {stderr.strip()}")
        self.returncode = returncode
        self.stderr = stderr
        self.command = list(command)


def parse_event_bytes(data: bytes, what: str = "event file") -> np.ndarray:
    """Decodes an event file into a structured array (tick, core, neuron, delay)."""
    if len(data) < _HEADER.size:
        raise FormatError(f"{what}: truncated header at offset {len(data)}")
    magic, version, count = _HEADER.unpack_from(data)
    if magic != b"NSEV":
        raise FormatError(f"{what}: bad magic at offset 0")
    if version != 1:
        raise FormatError(f"{what}: unsupported version {version} at offset 4")
    expect = _HEADER.size + count * _EVENT_DTYPE.itemsize
    if len(data) != expect:
        bad = _HEADER.size + (min(len(data), expect) - _HEADER.size) // _EVENT_DTYPE.itemsize * \
            _EVENT_DTYPE.itemsize
        raise FormatError(f"{what}: header declares {count} records but the file holds "
                          f"{len(data)} bytes; first bad record at offset {bad}")
    ev = np.frombuffer(data, dtype=_EVENT_DTYPE, count=count, offset=_HEADER.size)
    if count > 1:
        drops = np.nonzero(np.diff(ev["tick"].astype(np.int64)) < 0)[0]
        if drops.size:
            i = int(drops[0]) + 1
            raise FormatError(f"{what}: tick decreases at record {i} "
                              f"(offset {_HEADER.size + i * _EVENT_DTYPE.itemsize})")
    return ev.copy()


@dataclass
class RunResult:
    """Outputs of one run: spikes, optional monitor tables and stats."""

    run_dir: Path
    spikes: np.ndarray  # structured: tick, core, neuron, delay
    states: np.ndarray | None = None   # columns tick, core, neuron, component, value
    weights: np.ndarray | None = None  # columns tick, core, record, src_core, src, dst, comp, w
    stats: dict[str, Any] = field(default_factory=dict)

    def spike_ticks(self, neuron: int, core: int = 0) -> np.ndarray:
        sel = (self.spikes["core"] == core) & (self.spikes["neuron"] == neuron)
        return self.spikes["tick"][sel].astype(np.int64)

    def isi(self, neuron: int = 0, core: int = 0) -> np.ndarray:
        return np.diff(self.spike_ticks(neuron, core))

    def trace(self, neuron: int, component: int, core: int = 0) -> tuple[np.ndarray, np.ndarray]:
        if self.states is None or self.states.size == 0:
            return np.empty(0, np.int64), np.empty(0, np.int64)
        s = self.states
        sel = (s[:, 1] == core) & (s[:, 2] == neuron) & (s[:, 3] == component)
        return s[sel, 0], s[sel, 4]


def find_binary(binary: str | os.PathLike | None = None) -> str:
    """Explicit argument, then $NSAT_BIN, the packaged binary, then PATH."""
    packaged = Path(__file__).parent / "bin" / "nsat"
    for cand in (binary, os.environ.get("NSAT_BIN"), packaged, shutil.which("nsat")):
        if cand and Path(cand).is_file():
            return str(cand)
    raise FileNotFoundError("nsat binary not found; pass binary= or set NSAT_BIN")


def _load_table(path: Path) -> np.ndarray | None:
    if not path.exists():
        return None
    data = np.loadtxt(path, dtype=np.int64, delimiter="\t", skiprows=1, ndmin=2)
    return data


def load(run_dir: str | os.PathLike) -> RunResult:
    """Parses an output directory written by the core."""
    run_dir = Path(run_dir)
    spikes_path = run_dir / "spikes.evt"
    spikes = parse_event_bytes(spikes_path.read_bytes(), str(spikes_path))
    stats_path = run_dir / "stats.json"
    stats = json.loads(stats_path.read_text()) if stats_path.exists() else {}
    return RunResult(run_dir=run_dir, spikes=spikes, states=_load_table(run_dir / "states.tsv"),
                     weights=_load_table(run_dir / "weights.tsv"), stats=stats)


def run_and_load(config: str | os.PathLike, out_dir: str | os.PathLike | None = None, *,
                 binary: str | os.PathLike | None = None, threads: int | None = None,
                 monitors: Sequence[str] = (), extra_args: Sequence[str] = ()) -> RunResult:
    """Runs the core on a composed config and loads its outputs."""
    config = Path(config)
    out_dir = Path(out_dir) if out_dir is not None else config.parent / "out"
    cmd = [find_binary(binary), "--config", str(config), "--out", str(out_dir)]
    if threads is not None:
        cmd += ["--threads", str(threads)]
    for m in monitors:
        cmd += ["--monitor", m]
    cmd += list(extra_args)
    proc = subprocess.run(cmd, capture_output=True, text=True, check=False)
    if proc.returncode != 0:
        raise RunError(proc.returncode, proc.stderr, cmd)
    return load(out_dir)
