"""Closed-loop fuzzy control of a first-order plant with dead time.

The controller is incremental: each step infers an increment from the
error and its change, and the actuation accumulates it,
``u(k) = u(k-1) + rho * du(k)``.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import Any, Sequence

import numpy as np

from .baselines import RelationKind, relation_grid
from .lcm import fmp_lcm
from .methods import InferenceMethod
from .sets import FuzzySetVector

LABELS = ("NB", "NS", "ZE", "PS", "PB")
DIVERGENCE_LIMIT = 1e9


class SimulationError(RuntimeError):
    """The loop produced a non-finite or runaway value."""


@dataclass(frozen=True)
class PlantParams:
    time_constant: float = 20.0
    dead_time: float = 2.0
    sample_time: float = 1.0
    setpoint: float = 40.0

    def __post_init__(self) -> None:
        if self.time_constant <= 0 or self.sample_time <= 0:
            raise ValueError("time constant and sample time must be positive")
        if self.dead_time < 0:
            raise ValueError("dead time must be non-negative")
        ratio = self.dead_time / self.sample_time
        if abs(ratio - round(ratio)) > 1e-9:
            raise ValueError("dead time must be an integer multiple of the sample time")

    @property
    def alpha(self) -> float:
        return math.exp(-self.sample_time / self.time_constant)

    @property
    def delay_steps(self) -> int:
        return int(round(self.dead_time / self.sample_time))


def plant_step(y: float, inputs: Sequence[float], plant: PlantParams) -> float:
    """Next output from the current one and the actuation history.

    ``inputs[-1]`` is the latest actuation; samples older than the
    history are taken as zero.
    """
    d = plant.delay_steps
    u = inputs[-1 - d] if len(inputs) > d else 0.0
    return plant.alpha * y + (1.0 - plant.alpha) * u


def triangular_partition(universe: np.ndarray, count: int = 5) -> np.ndarray:
    """``count`` evenly spaced triangles spanning the universe, one per row."""
    centers = np.linspace(universe[0], universe[-1], count)
    width = centers[1] - centers[0]
    return np.clip(1.0 - np.abs(universe[None, :] - centers[:, None]) / width, 0.0, 1.0)


def default_rule_table(count: int = 5) -> np.ndarray:
    """Anti-diagonal PD table: output label index = clip(i_e + i_de - mid)."""
    mid = count // 2
    i = np.arange(count)
    return np.clip(i[:, None] + i[None, :] - mid, 0, count - 1)


def fuzzify(value: float, universe: Sequence[float], membership: str = "singleton",
            width: float | None = None) -> FuzzySetVector:
    """Fuzzify a crisp reading onto a discrete universe.

    ``"singleton"`` puts grade 1 on the nearest point (ties go to the lower
    index); ``"triangular"`` centres a triangle of half-width ``width`` on it.
    Values outside the universe are clamped to its ends.
    """
    u = np.asarray(universe, dtype=float)
    x = min(max(float(value), u[0]), u[-1])
    idx = int(np.argmin(np.abs(u - x)))
    if membership == "singleton":
        g = np.zeros(u.size)
        g[idx] = 1.0
    elif membership == "triangular":
        if width is None or width <= 0:
            raise ValueError("triangular fuzzification needs a positive width")
        g = np.clip(1.0 - np.abs(u - u[idx]) / width, 0.0, 1.0)
    else:
        raise ValueError(f"unknown fuzzification {membership!r}")
    return FuzzySetVector(g, u)


def _universe(spec: Any) -> np.ndarray:
    if isinstance(spec, dict):
        return np.linspace(float(spec["min"]), float(spec["max"]), int(spec["points"]))
    return np.asarray(spec, dtype=float)


@dataclass(frozen=True, eq=False)
class ControllerConfig:
    """Rule base, universes, gain and inference backend.

    ``table[i, j]`` is the output-set index for error set ``i`` and
    error-change set ``j``.
    """

    error_universe: np.ndarray = field(default_factory=lambda: np.linspace(-40.0, 40.0, 81))
    delta_universe: np.ndarray = field(default_factory=lambda: np.linspace(-4.0, 4.0, 81))
    output_universe: np.ndarray = field(default_factory=lambda: np.linspace(-4.0, 4.0, 81))
    error_sets: np.ndarray | None = None
    delta_sets: np.ndarray | None = None
    output_sets: np.ndarray | None = None
    table: np.ndarray | None = None
    rho: float = 1.0
    backend: str = "rel:rc"
    fuzzification: str = "singleton"

    def __post_init__(self) -> None:
        for name in ("error_universe", "delta_universe", "output_universe"):
            u = np.asarray(getattr(self, name), dtype=float)
            if u.ndim != 1 or u.size < 2 or np.any(np.diff(u) <= 0):
                raise ValueError(f"{name} must be a strictly increasing list of 2+ points")
            object.__setattr__(self, name, u)
        pairs = (("error_sets", "error_universe"), ("delta_sets", "delta_universe"),
                 ("output_sets", "output_universe"))
        for sets_name, uni_name in pairs:
            sets = getattr(self, sets_name)
            uni = getattr(self, uni_name)
            sets = triangular_partition(uni) if sets is None else np.asarray(sets, dtype=float)
            if sets.ndim != 2 or sets.shape[1] != uni.size:
                raise ValueError(f"{sets_name} must have one row of {uni.size} grades per set")
            if np.any(sets < 0) or np.any(sets > 1):
                raise ValueError(f"{sets_name} grades must lie in [0, 1]")
            object.__setattr__(self, sets_name, sets)
        table = default_rule_table() if self.table is None else np.asarray(self.table, dtype=int)
        shape = (self.error_sets.shape[0], self.delta_sets.shape[0])
        if table.shape != shape:
            raise ValueError(f"rule table must be {shape[0]}x{shape[1]}, got {table.shape}")
        if table.min() < 0 or table.max() >= self.output_sets.shape[0]:
            raise ValueError("rule table refers to a missing output set")
        object.__setattr__(self, "table", table)
        if not self.rho > 0:
            raise ValueError("rho must be positive")
        m = InferenceMethod.parse(self.backend)
        if m.family not in ("rel", "lcm"):
            raise ValueError(f"control backend must be rel:<kind> or lcm:<form>, got {self.backend!r}")
        object.__setattr__(self, "backend", m.selector)
        if self.fuzzification not in ("singleton", "triangular"):
            raise ValueError(f"unknown fuzzification {self.fuzzification!r}")

    @property
    def method(self) -> InferenceMethod:
        return InferenceMethod.parse(self.backend)

    def rules(self):
        """Yield (error set, change set, output set) index triples."""
        for i in range(self.table.shape[0]):
            for j in range(self.table.shape[1]):
                yield i, j, int(self.table[i, j])

    def replace(self, **changes) -> "ControllerConfig":
        data = {k: getattr(self, k) for k in self.__dataclass_fields__}
        data.update(changes)
        return ControllerConfig(**data)

    @classmethod
    def from_dict(cls, data: dict) -> "ControllerConfig":
        kwargs: dict[str, Any] = {}
        universes = data.get("universes", {})
        for key in ("error", "delta", "output"):
            if key in universes:
                kwargs[f"{key}_universe"] = _universe(universes[key])
        sets = data.get("sets", {})
        for key in ("error", "delta", "output"):
            if key in sets:
                kwargs[f"{key}_sets"] = np.asarray(sets[key], dtype=float)
        for key in ("table", "rho", "backend", "fuzzification"):
            if key in data:
                kwargs[key] = data[key]
        return cls(**kwargs)


def _spacing(universe: np.ndarray, sets: np.ndarray) -> float:
    peaks = universe[np.argmax(sets, axis=1)]
    return float(np.min(np.diff(peaks))) if peaks.size > 1 else float(universe[-1] - universe[0])


def rule_output(kind: RelationKind | str, h: float, consequent: np.ndarray) -> np.ndarray:
    """Inferred output of one fired rule with matching degree ``h``.

    Every kind is its relation evaluated at (h, b), except Rm, which uses
    the clipped form h ^ b ^ (1 - h).
    """
    kind = RelationKind.parse(kind)
    b = np.asarray(consequent, dtype=float)
    if kind is RelationKind.RM:
        return np.minimum(np.minimum(h, b), 1.0 - h)
    return relation_grid(kind, h, b)


def centroid(grades: np.ndarray, universe: np.ndarray) -> float | None:
    total = float(grades.sum())
    if total <= 0.0:
        return None
    return float((grades * universe).sum() / total)


@dataclass(frozen=True)
class Increment:
    du: float
    stalled: bool = False


def infer_increment(config: ControllerConfig, e: float, de: float) -> Increment:
    """Controller increment for one (error, error change) reading."""
    fe = fuzzify(e, config.error_universe, config.fuzzification,
                 _spacing(config.error_universe, config.error_sets))
    fd = fuzzify(de, config.delta_universe, config.fuzzification,
                 _spacing(config.delta_universe, config.delta_sets))
    he = np.max(np.minimum(fe.grades[None, :], config.error_sets), axis=1)
    hd = np.max(np.minimum(fd.grades[None, :], config.delta_sets), axis=1)
    v = config.output_universe
    method = config.method
    if method.family == "rel":
        agg = np.zeros(v.size)
        for i, j, o in config.rules():
            h = min(he[i], hd[j])
            agg = np.maximum(agg, rule_output(method.variant, h, config.output_sets[o]))
        c = centroid(agg, v)
        return Increment(0.0, True) if c is None else Increment(c)
    # Distance-based backend: each input gets its own single-input pass,
    # the two results are averaged, and fired rules are blended by
    # matching degree.
    num = den = 0.0
    for i, j, o in config.rules():
        h = min(he[i], hd[j])
        if h <= 0.0:
            continue
        b = config.output_sets[o]
        r1 = fmp_lcm(config.error_sets[i], fe, b, form=method.variant).result.grades
        r2 = fmp_lcm(config.delta_sets[j], fd, b, form=method.variant).result.grades
        c = centroid(0.5 * (r1 + r2), v)
        if c is None:
            continue
        num += h * c
        den += h
    return Increment(0.0, True) if den == 0.0 else Increment(num / den)


@dataclass(eq=False)
class ControlTrace:
    setpoint: float
    k: np.ndarray
    y: np.ndarray
    e: np.ndarray
    de: np.ndarray
    du: np.ndarray
    u: np.ndarray
    stalled: np.ndarray
    backend: str = ""
    rho: float = 1.0

    COLUMNS = ("k", "y", "e", "de", "du", "u")

    def __len__(self) -> int:
        return int(self.k.size)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.COLUMNS)
        for row in zip(self.k, self.y, self.e, self.de, self.du, self.u):
            w.writerow([int(row[0])] + [f"{x:.6f}" for x in row[1:]])
        return buf.getvalue()


def run_closed_loop(plant: PlantParams, controller: ControllerConfig, steps: int,
                    y0: float = 0.0) -> ControlTrace:
    """Measure, fuzzify, infer, integrate the actuation, advance the plant."""
    if steps < 1:
        raise ValueError("steps must be at least 1")
    rec = {name: np.empty(steps) for name in ("y", "e", "de", "du", "u")}
    stalled = np.zeros(steps, dtype=bool)
    inputs: list[float] = []
    y = y_prev = float(y0)
    u = 0.0
    for k in range(steps):
        e = plant.setpoint - y
        de = y_prev - y
        inc = infer_increment(controller, e, de)
        u = u + controller.rho * inc.du
        inputs.append(u)
        for name, val in (("y", y), ("e", e), ("de", de), ("du", inc.du), ("u", u)):
            rec[name][k] = val
        stalled[k] = inc.stalled
        y_prev, y = y, plant_step(y, inputs, plant)
        if not math.isfinite(y) or abs(y) > DIVERGENCE_LIMIT:
            raise SimulationError(f"plant output diverged at step {k + 1}: y = {y!r}, u = {u!r}")
    return ControlTrace(plant.setpoint, np.arange(steps), rec["y"], rec["e"], rec["de"],
                        rec["du"], rec["u"], stalled, controller.backend, controller.rho)


CONVERGING_KINDS = ("rc", "rp", "ra", "rm")
NON_CONVERGING_KINDS = ("rs", "rg", "rss", "rsg", "rgs", "rgg")
PROBE_BACKENDS = tuple(f"rel:{k}" for k in CONVERGING_KINDS + NON_CONVERGING_KINDS) + ("lcm:p3",)


@dataclass(frozen=True)
class ProbeResult:
    backend: str
    distinct_outputs: int
    inputs: int
    converging: bool

    @property
    def classification(self) -> str:
        return "converging" if self.converging else "non-converging"


def _fixed_alphabet(b: np.ndarray) -> np.ndarray:
    """Values a rule output can take without depending on the input."""
    return np.stack([np.zeros_like(b), np.ones_like(b), b, 1.0 - b])


def probe_outputs(backend: str, antecedent: np.ndarray, consequent: np.ndarray,
                  universe: np.ndarray) -> list[np.ndarray]:
    """Rule output for a singleton input at every point of ``universe``."""
    m = InferenceMethod.parse(backend)
    outs = []
    for x in universe:
        fx = fuzzify(x, universe)
        if m.family == "rel":
            h = float(np.max(np.minimum(fx.grades, antecedent)))
            outs.append(rule_output(m.variant, h, consequent))
        else:
            outs.append(fmp_lcm(antecedent, fx, consequent, form=m.variant).result.grades)
    return outs


def convergence_probe(backends: Sequence[str] = PROBE_BACKENDS,
                      config: ControllerConfig | None = None) -> list[ProbeResult]:
    """Classify backends by whether their rule outputs track the input.

    For every error set paired with the output set of the same label, a
    singleton input is swept over the error universe.  A backend is
    non-converging when every output grade stays within {0, 1, b, 1 - b}
    of the consequent: then the output can only flip between a few shapes
    fixed by the rule, whatever the input.  Otherwise it is converging.
    """
    cfg = config or ControllerConfig()
    results = []
    for backend in backends:
        selector = InferenceMethod.parse(backend).selector
        distinct = 0
        inputs = 0
        tracks = False
        for i in range(min(cfg.error_sets.shape[0], cfg.output_sets.shape[0])):
            a, b = cfg.error_sets[i], cfg.output_sets[i]
            outs = probe_outputs(selector, a, b, cfg.error_universe)
            inputs += len(outs)
            distinct += len({tuple(np.round(o, 12)) for o in outs})
            alphabet = _fixed_alphabet(b)
            for o in outs:
                if np.any(np.min(np.abs(alphabet - o[None, :]), axis=0) > 1e-12):
                    tracks = True
        results.append(ProbeResult(selector, distinct, inputs, tracks))
    return results
