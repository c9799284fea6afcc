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

"""Smoke tests for the scripting client."""

import os
import shutil
import struct
import subprocess
from pathlib import Path

import numpy as np
import pytest

import nsat

REPO = Path(__file__).resolve().parents[2]


def _tool(name):
    env = {"nsat": "NSAT_BIN", "nsat_zoo": "NSAT_ZOO_BIN"}[name]
    for cand in (os.environ.get(env), REPO / "build" / name, shutil.which(name)):
        if cand and Path(cand).is_file():
            return str(cand)
    pytest.skip(f"{name} binary not built")


def _zoo_bundle(tmp_path, name):
    out = tmp_path / name.replace(":", "_")
    subprocess.run([_tool("nsat_zoo"), "build", name, "--out", str(out)], check=True)
    return out / "config.yaml"


def test_tonic_matches_zoo(tmp_path):
    ours = nsat.mnn_tonic().compose(tmp_path / "py")
    theirs = _zoo_bundle(tmp_path, "mnn:tonic")
    assert ours.read_bytes() == theirs.read_bytes()


@pytest.mark.parametrize("name", ["mnn:burst", "neural_field:select", "spike_pattern"])
def test_roundtrip_is_idempotent(tmp_path, name):
    src = _zoo_bundle(tmp_path, name)
    first = nsat.NetworkBuilder.from_yaml(src).compose(tmp_path / "a")
    second = nsat.NetworkBuilder.from_yaml(first).compose(tmp_path / "b")
    assert first.read_bytes() == second.read_bytes()


def test_dangling_group_rejected(tmp_path):
    net = nsat.mnn_tonic()
    net.cores[0].param_group_of = [3]
    with pytest.raises(nsat.ValidationError, match="group"):
        net.compose(tmp_path)


def test_run_and_isi(tmp_path):
    cfg = nsat.mnn_tonic(ticks=2000).compose(tmp_path / "run")
    res = nsat.run_and_load(cfg, binary=_tool("nsat"))
    isi = res.isi(0)
    assert len(isi) > 3
    assert np.all(isi == isi[-1]) or np.ptp(isi[2:]) <= 1
    assert res.states is not None


def test_corrupt_spikes_names_offset(tmp_path):
    cfg = nsat.mnn_tonic(ticks=2000).compose(tmp_path / "run")
    res = nsat.run_and_load(cfg, binary=_tool("nsat"))
    path = res.run_dir / "spikes.evt"
    data = bytearray(path.read_bytes())
    assert len(res.spikes) >= 2
    # Make the second record's tick smaller than the first.
    size = res.spikes.dtype.itemsize
    header = len(data) - size * len(res.spikes)
    assert res.spikes["tick"][0] > 0
    data[header + size:header + size + 4] = struct.pack("<I", 0)
    path.write_bytes(bytes(data))
    with pytest.raises(nsat.FormatError, match=f"offset {header + size}"):
        nsat.load(res.run_dir)


def test_plots(tmp_path):
    cfg = nsat.mnn_tonic(ticks=1000).compose(tmp_path / "run")
    res = nsat.run_and_load(cfg, binary=_tool("nsat"))
    for kind in ("raster", "states"):
        out = tmp_path / f"{kind}.png"
        nsat.plot(res, kind, out)
        assert out.stat().st_size > 0
    empty = nsat.RunResult(run_dir=tmp_path, spikes=res.spikes[:0], states=None, weights=None,
                           stats={})
    nsat.plot(empty, "raster", tmp_path / "empty.png")
    nsat.plot([(0, 0.9), (100, 0.5)], "error", tmp_path / "err.png")
    with pytest.raises(ValueError):
        nsat.plot(res, "bogus", tmp_path / "x.png")


def test_core_module():
    core = pytest.importorskip("nsat._core")
    assert core.diamond(3, 1) == 8
    assert core.diamonddiamond(-4, 5) == 1
    r = core.RngStream("software", 1, 0)
    s = r.serialize()
    a = r.next_uniform()
    assert core.RngStream.deserialize(s).next_uniform() == a
    assert "erbm" in core.experiment_names()
    with pytest.raises(ValueError):
        core.compose_experiment("nope", "/tmp/never.yaml", 0)
