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

"""Programmatic network construction and config emission.

The emitted YAML follows the core's own layout byte for byte, so a config
composed here and one saved by the core tools compare equal as files.
"""

from __future__ import annotations

import copy
import os
import struct
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import yaml

SCHEMA = "nsat-config/1"
DEFAULT_SEED = 0x5EED
INLINE_LIMIT = 256
OFF = -16

_EVENT_MAGIC = b"NSEV"
_SYN_MAGIC = b"NSYN"
_EVENT = struct.Struct("<IHIH")
_SYN = struct.Struct("<HIIBbBI")
_HEADER = struct.Struct("<4sIQ")

_GROUP_VECTORS = ("b", "sigma", "prob", "theta", "Xreset", "XresetOn", "XspikeIncrVal",
                  "Xthlo", "Xthup", "Xinit", "Wgain")
_GROUP_FLAGS = ("spike_enabled", "adaptive_theta", "reset_enabled")
_KERNEL_ARRAYS = (("tca", 2), ("hica", 3), ("sica", 3), ("tac", 2), ("hiac", 3), ("siac", 3))
_MONITOR_KINDS = ("spikes", "states", "weights", "stats")


class ValidationError(ValueError):
    """A network description the core would reject."""


def default_group(k: int) -> dict[str, Any]:
    """Every coupling OFF, unit negative diagonal signs, full-range bounds."""
    sa = [[-1 if i == j else 1 for j in range(k)] for i in range(k)]
    return {
        "A": [[OFF] * k for _ in range(k)],
        "sA": sa,
        "b": [0] * k,
        "sigma": [OFF] * k,
        "prob": [15] * k,
        "theta": [32767] * k,
        "Xreset": [0] * k,
        "XresetOn": [True] + [False] * (k - 1),
        "XspikeIncrVal": [0] * k,
        "Xthlo": [-32768] * k,
        "Xthup": [32767] * k,
        "Xinit": [0] * k,
        "Wgain": [0] * k,
        "modulator": 0,
        "spike_enabled": True,
        "adaptive_theta": False,
        "reset_enabled": True,
        "refractory": 0,
    }


def default_learning_group(k: int) -> dict[str, Any]:
    return {
        "rule": "stdp",
        "plastic": [False] * k,
        "tca": [16, 36],
        "hica": [OFF] * 3,
        "sica": [1, 1, 1],
        "slca": 0,
        "tac": [-16, -36],
        "hiac": [OFF] * 3,
        "siac": [-1, -1, -1],
        "slac": 0,
        "mode": "linear",
        "rounding_bits": 0,
        "wmin": -128,
        "wmax": 127,
    }


def transpose(m: list[list[int]]) -> list[list[int]]:
    """Published tables index the source component by row; configs the target."""
    return [list(r) for r in zip(*m)]


@dataclass
class Core:
    states: int
    internal: int
    external: int = 0
    param_groups: list[dict[str, Any]] = field(default_factory=list)
    learning_groups: list[dict[str, Any]] = field(default_factory=list)
    param_group_of: list[int] | None = None
    learning_group_of: list[int] | None = None
    delays: list[int] | None = None
    # (src_core, src_neuron, dst, component, weight[, plastic[, tie]])
    synapses: list[tuple[int, ...]] = field(default_factory=list)
    synapse_file: str = ""

    def size(self) -> int:
        return self.internal + self.external

    def group_of(self) -> list[int]:
        return list(self.param_group_of) if self.param_group_of is not None else [0] * self.internal

    def lgroup_of(self) -> list[int]:
        if self.learning_group_of is not None:
            return list(self.learning_group_of)
        return [0 if self.learning_groups else -1] * self.internal

    def delay_of(self) -> list[int]:
        return list(self.delays) if self.delays is not None else [0] * self.size()


@dataclass
class NetworkBuilder:
    """Mirror of the core's simulation config."""

    ticks: int = 1
    seed: int | None = DEFAULT_SEED
    rng: str = "software"
    learning: bool = False
    gate: tuple[int, int] | None = None  # (period, off_ticks)
    max_delay: int = 64
    output_dir: str = ""
    monitors: list[dict[str, Any]] = field(default_factory=list)
    cores: list[Core] = field(default_factory=list)
    # (tick, core, neuron, delay), sorted by tick
    external_events: list[tuple[int, int, int, int]] = field(default_factory=list)
    events_file: str = ""

    def add_core(self, core: Core) -> int:
        self.cores.append(core)
        return len(self.cores) - 1

    # -- validation ---------------------------------------------------------

    def validate(self) -> None:
        """Raises ValidationError for anything the core would refuse."""
        if self.ticks < 1:
            raise ValidationError("ticks must be positive")
        if self.rng not in ("software", "hardware"):
            raise ValidationError(f"unknown rng backend '{self.rng}'")
        if not self.cores:
            raise ValidationError("at least one core is required")
        for m in self.monitors:
            if m.get("what") not in _MONITOR_KINDS:
                raise ValidationError(f"monitor kind '{m.get('what')}' is not one of {_MONITOR_KINDS}")
        for ci, c in enumerate(self.cores):
            self._validate_core(ci, c)
        last = 0
        for i, (tick, core, neuron, _delay) in enumerate(self.external_events):
            where = f"external_events[{i}]"
            if tick < last:
                raise ValidationError(f"{where}: ticks must not decrease")
            last = tick
            if core >= len(self.cores):
                raise ValidationError(f"{where}: unknown core {core}")
            c = self.cores[core]
            if not c.internal <= neuron < c.size():
                raise ValidationError(f"{where}: neuron {neuron} is not an external neuron")

    def _validate_core(self, ci: int, c: Core) -> None:
        where = f"cores[{ci}]"
        k = c.states
        if not 1 <= k <= 8:
            raise ValidationError(f"{where}.states: must be in [1, 8]")
        if not c.param_groups:
            raise ValidationError(f"{where}.param_groups: at least one group is required")
        for gi, g in enumerate(c.param_groups):
            gw = f"{where}.param_groups[{gi}]"
            for key in ("A", "sA"):
                m = g[key]
                if len(m) != k or any(len(r) != k for r in m):
                    raise ValidationError(f"{gw}.{key}: expected {k}x{k}")
            for key in _GROUP_VECTORS:
                if len(g[key]) != k:
                    raise ValidationError(f"{gw}.{key}: expected {k} values, got {len(g[key])}")
            if not 0 <= g["modulator"] < k:
                raise ValidationError(f"{gw}.modulator: component out of range")
        for li, lg in enumerate(c.learning_groups):
            if len(lg["plastic"]) != k:
                raise ValidationError(f"{where}.learning_groups[{li}].plastic: expected {k} values")
        groups = c.group_of()
        lgroups = c.lgroup_of()
        if len(groups) != c.internal or len(lgroups) != c.internal:
            raise ValidationError(f"{where}: group assignments must list every internal neuron")
        for n, gid in enumerate(groups):
            if not 0 <= gid < len(c.param_groups):
                raise ValidationError(
                    f"{where}.param_group_of[{n}]: group {gid} does not exist "
                    f"({len(c.param_groups)} defined)")
        for n, lid in enumerate(lgroups):
            if lid != -1 and not 0 <= lid < len(c.learning_groups):
                raise ValidationError(
                    f"{where}.learning_group_of[{n}]: learning group {lid} does not exist")
        delays = c.delay_of()
        if len(delays) != c.size() or any(not 0 <= d <= self.max_delay for d in delays):
            raise ValidationError(f"{where}.delays: one value in [0, max_delay] per neuron")
        for si, s in enumerate(c.synapses):
            src_core, src, dst, comp, w = s[:5]
            sw = f"{where}.synapses[{si}]"
            if src_core >= len(self.cores) or src >= self.cores[src_core].size():
                raise ValidationError(f"{sw}: unknown source ({src_core}, {src})")
            if dst >= c.internal:
                raise ValidationError(f"{sw}: target {dst} is not an internal neuron")
            if not 0 <= comp < k:
                raise ValidationError(f"{sw}: component {comp} out of range")
            if not -128 <= w <= 127:
                raise ValidationError(f"{sw}: weight {w} outside [-128, 127]")
            if len(s) > 6 and not 0 <= s[6] < len(c.synapses):
                raise ValidationError(f"{sw}: tie {s[6]} does not name a record")

    # -- emission -----------------------------------------------------------

    def to_yaml(self, inline_limit: int = INLINE_LIMIT) -> str:
        out: list[str] = []
        seed = DEFAULT_SEED if self.seed is None else self.seed
        out.append(f"schema: {SCHEMA}")
        out.append(f"ticks: {self.ticks}")
        out.append(f"rng: {{backend: {self.rng}, seed: {seed}}}")
        out.append("learning:")
        out.append(f"  enabled: {_b(self.learning)}")
        if self.gate and self.gate[0] > 0:
            out.append(f"  gate: {{period: {self.gate[0]}, off_ticks: {self.gate[1]}}}")
        out.append(f"max_delay: {self.max_delay}")
        if self.output_dir:
            out.append(f"output_dir: {self.output_dir}")
        if self.events_file:
            out.append(f"external_events: {self.events_file}")
        if self.monitors:
            out.append("monitors:")
            for m in self.monitors:
                parts = [f"what: {m['what']}", f"core: {m.get('core', -1)}"]
                if m.get("neurons"):
                    parts.append(f"neurons: {_seq(m['neurons'])}")
                if m.get("components"):
                    parts.append(f"components: {_seq(m['components'])}")
                parts.append(f"every: {m.get('every', 1)}")
                out.append("  - {" + ", ".join(parts) + "}")
        out.append("cores:")
        for c in self.cores:
            out.append(f"  - states: {c.states}")
            out.append(f"    internal: {c.internal}")
            out.append(f"    external: {c.external}")
            out.append("    param_groups:")
            for g in c.param_groups:
                out.extend(_group_lines(g))
            if c.learning_groups:
                out.append("    learning_groups:")
                for lg in c.learning_groups:
                    out.extend(_learning_lines(lg))
            if c.internal > 0:
                out.append(f"    param_group_of: {_per_neuron(c.group_of())}")
                out.append(f"    learning_group_of: {_per_neuron(c.lgroup_of())}")
            if c.size() > 0:
                out.append(f"    delays: {_per_neuron(c.delay_of())}")
            if c.synapse_file or len(c.synapses) > inline_limit:
                if not c.synapse_file:
                    raise ValidationError("synapse sidecar name not set")
                out.append(f"    synapses: {{file: {c.synapse_file}}}")
            elif c.synapses:
                out.append("    synapses:")
                for s in c.synapses:
                    out.append(f"      - {_seq(_syn_fields(s))}")
        return "\n".join(out) + "\n"

    def compose(self, run_dir: str | os.PathLike, name: str = "config.yaml",
                inline_limit: int = INLINE_LIMIT) -> Path:
        """Validates, then writes the config and its sidecars into run_dir."""
        self.validate()
        run_dir = Path(run_dir)
        run_dir.mkdir(parents=True, exist_ok=True)
        net = copy.deepcopy(self)
        stem = Path(name).stem
        for ci, c in enumerate(net.cores):
            if not c.synapse_file and len(c.synapses) > inline_limit:
                c.synapse_file = f"{stem}.core{ci}.syn"
            if c.synapse_file:
                write_synapses(run_dir / c.synapse_file, c.synapses)
        if net.external_events and not net.events_file:
            net.events_file = f"{stem}.evt"
        if net.events_file:
            write_events(run_dir / net.events_file, net.external_events)
        path = run_dir / name
        path.write_text(net.to_yaml(inline_limit))
        return path

    # -- parsing ------------------------------------------------------------

    @classmethod
    def from_yaml(cls, path: str | os.PathLike) -> "NetworkBuilder":
        """Reads a config written by compose() or by the core tools."""
        path = Path(path)
        doc = yaml.safe_load(path.read_text())
        if doc.get("schema") != SCHEMA:
            raise ValidationError(f"{path}: schema must be {SCHEMA}")
        rng = doc.get("rng", {})
        learning = doc.get("learning", {})
        gate = learning.get("gate")
        net = cls(
            ticks=int(doc["ticks"]),
            seed=rng.get("seed"),
            rng=rng.get("backend", "software"),
            learning=bool(learning.get("enabled", False)),
            gate=(gate["period"], gate["off_ticks"]) if gate else None,
            max_delay=int(doc.get("max_delay", 64)),
            output_dir=str(doc.get("output_dir", "")),
            monitors=[dict(m) for m in doc.get("monitors", [])],
        )
        for cd in doc["cores"]:
            k = int(cd["states"])
            internal = int(cd["internal"])
            external = int(cd.get("external", 0))
            core = Core(states=k, internal=internal, external=external)
            for gd in cd["param_groups"]:
                g = default_group(k)
                g.update(gd)
                core.param_groups.append(g)
            for ld in cd.get("learning_groups", []):
                lg = default_learning_group(k)
                lg.update(ld)
                core.learning_groups.append(lg)
            core.param_group_of = _expand(cd.get("param_group_of", 0), internal)
            core.learning_group_of = _expand(
                cd.get("learning_group_of", 0 if core.learning_groups else -1), internal)
            core.delays = _expand(cd.get("delays", 0), internal + external)
            syn = cd.get("synapses", [])
            if isinstance(syn, dict):
                core.synapse_file = syn["file"]
                core.synapses = read_synapses(path.parent / syn["file"])
            else:
                core.synapses = [tuple(int(v) for v in s) for s in syn]
            net.cores.append(core)
        ev = doc.get("external_events")
        if isinstance(ev, str):
            net.events_file = ev
            net.external_events = read_events(path.parent / ev)
        elif ev:
            net.external_events = [tuple(int(v) for v in e) for e in ev]
        return net


# -- presets ------------------------------------------------------------------

def mnn_tonic(ticks: int = 10000, seed: int = DEFAULT_SEED) -> NetworkBuilder:
    """Single tonic-spiking generalized integrate-and-fire neuron."""
    g = default_group(4)
    g["A"] = transpose([[-4, -16, -16, -16],
                        [-16, -7, -16, -16],
                        [0, -16, -2, -16],
                        [0, -16, -16, -6]])
    g["sA"] = transpose([[-1, 1, 1, 1],
                         [1, -1, 1, 1],
                         [1, 1, -1, 1],
                         [1, 1, 1, -1]])
    g["b"] = [-287, -39, 0, 0]
    g["Xreset"] = [-7000, -5000, 0, 0]
    g["XresetOn"] = [True, True, True, True]
    g["Xinit"] = [-7000, -5000, 100, 10]
    g["adaptive_theta"] = True
    net = NetworkBuilder(ticks=ticks, seed=seed)
    net.monitors.append({"what": "states", "core": -1, "components": [0, 1], "every": 1})
    net.add_core(Core(states=4, internal=1, param_groups=[g]))
    return net


# -- binary sidecars ------------------------------------------------------------

def write_events(path: str | os.PathLike, events: list[tuple[int, int, int, int]]) -> None:
    with open(path, "wb") as f:
        f.write(_HEADER.pack(_EVENT_MAGIC, 1, len(events)))
        for e in events:
            f.write(_EVENT.pack(*e))


def read_events(path: str | os.PathLike) -> list[tuple[int, int, int, int]]:
    from .results import parse_event_bytes
    return [tuple(int(v) for v in row) for row in parse_event_bytes(Path(path).read_bytes(), str(path))]


def write_synapses(path: str | os.PathLike, synapses: list[tuple[int, ...]]) -> None:
    with open(path, "wb") as f:
        f.write(_HEADER.pack(_SYN_MAGIC, 1, len(synapses)))
        for s in synapses:
            src_core, src, dst, comp, w = s[:5]
            plastic = len(s) > 5 and bool(s[5])
            tied = len(s) > 6
            flags = (1 if plastic else 0) | (2 if tied else 0)
            f.write(_SYN.pack(src_core, src, dst, comp, w, flags, s[6] if tied else 0))


def read_synapses(path: str | os.PathLike) -> list[tuple[int, ...]]:
    data = Path(path).read_bytes()
    count = _check_header(data, _SYN_MAGIC, _SYN.size, str(path))
    out = []
    for i in range(count):
        src_core, src, dst, comp, w, flags, tie = _SYN.unpack_from(data, _HEADER.size + i * _SYN.size)
        rec: tuple[int, ...] = (src_core, src, dst, comp, w)
        if flags & 2:
            rec += (flags & 1, tie)
        elif flags & 1:
            rec += (1,)
        out.append(rec)
    return out


def _check_header(data: bytes, magic: bytes, record: int, what: str) -> int:
    if len(data) < _HEADER.size:
        raise ValueError(f"{what}: truncated header at offset {len(data)}")
    got, version, count = _HEADER.unpack_from(data)
    if got != magic:
        raise ValueError(f"{what}: bad magic at offset 0")
    if version != 1:
        raise ValueError(f"{what}: unsupported version {version} at offset 4")
    expect = _HEADER.size + count * record
    if len(data) != expect:
        raise ValueError(f"{what}: header declares {count} records ({expect} bytes) "
                         f"but the file has {len(data)} bytes; mismatch at offset "
                         f"{min(len(data), expect)}")
    return count


# -- YAML helpers -------------------------------------------------------------

def _b(x: Any) -> str:
    return "true" if x else "false"


def _scalar(x: Any) -> str:
    return _b(x) if isinstance(x, bool) else str(int(x))


def _seq(v: Any) -> str:
    return "[" + ", ".join(_scalar(x) for x in v) + "]"


def _per_neuron(v: list[int]) -> str:
    if v and all(x == v[0] for x in v):
        return str(v[0])
    return _seq(v)


def _expand(v: Any, n: int) -> list[int]:
    return [int(x) for x in v] if isinstance(v, list) else [int(v)] * n


def _syn_fields(s: tuple[int, ...]) -> list[int]:
    src_core, src, dst, comp, w = s[:5]
    rec = [src_core, src, dst, comp, w]
    plastic = len(s) > 5 and bool(s[5])
    tied = len(s) > 6
    if plastic or tied:
        rec.append(1 if plastic else 0)
    if tied:
        rec.append(s[6])
    return rec


def _group_lines(g: dict[str, Any]) -> list[str]:
    lines = ["      - A:"]
    lines += [f"          - {_seq(r)}" for r in g["A"]]
    lines.append("        sA:")
    lines += [f"          - {_seq(r)}" for r in g["sA"]]
    for key in _GROUP_VECTORS:
        lines.append(f"        {key}: {_seq(g[key])}")
    lines.append(f"        modulator: {g['modulator']}")
    for key in _GROUP_FLAGS:
        lines.append(f"        {key}: {_b(g[key])}")
    lines.append(f"        refractory: {g['refractory']}")
    return lines


def _learning_lines(lg: dict[str, Any]) -> list[str]:
    lines = [f"      - rule: {lg['rule']}", f"        plastic: {_seq(lg['plastic'])}"]
    for key, _n in _KERNEL_ARRAYS:
        lines.append(f"        {key}: {_seq(lg[key])}")
        if key == "sica":
            lines.append(f"        slca: {lg['slca']}")
        if key == "siac":
            lines.append(f"        slac: {lg['slac']}")
    for key in ("mode", "rounding_bits", "wmin", "wmax"):
        lines.append(f"        {key}: {lg[key]}")
    gate = lg.get("gate")
    if gate:
        lines.append(f"        gate: {{component: {gate['component']}, lo: {gate['lo']}, "
                     f"hi: {gate['hi']}}}")
    return lines
