"""Reductive-property scoring, experiment suites and method comparisons."""

from __future__ import annotations

import dataclasses
import json
import statistics
import time
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any, Iterable, Sequence

import numpy as np

from .lcm import CaseTag
from .methods import COMPARISON_METHODS, InferenceMethod, infer
from .sets import (DimensionMismatch, FuzzySetVector, HedgeKind, SetLike, apply_hedge,
                   as_fuzzy, grades_of)

CLASS_CASES = {
    ("fmp", 1): (1, 2, 3, 4),
    ("fmp", 2): (1, 2, 3, 5),
    ("fmt", 1): (6, 7, 8, 9),
    ("fmt", 2): (6, 7, 8, 10),
}
TARGET_CONVENTIONS = ("literal", "negated-hedge")


def rpcf(result: SetLike, target: SetLike) -> float:
    """100 * (1 - mean absolute deviation)."""
    r, t = grades_of(result), grades_of(target)
    if r.size != t.size:
        raise DimensionMismatch(f"result has {r.size} grades, target has {t.size}")
    return float((1.0 - np.abs(r - t).sum() / r.size) * 100.0)


def _need_tilt(tilt: SetLike | None, case: CaseTag) -> FuzzySetVector:
    if tilt is None:
        raise ValueError(f"{case.label} needs a slightly-tilted vector")
    return as_fuzzy(tilt)


def expected_target(case: CaseTag | str | int, A: SetLike, B: SetLike,
                    tilt: SetLike | None = None, convention: str = "literal") -> FuzzySetVector:
    """What a reductive method should return for the given premise case.

    For FMT the hedged targets come in two flavours.  ``"literal"`` hedges
    the complement ((1-A)^2, sqrt(1-A)); ``"negated-hedge"`` complements
    the hedge (1-A^2, 1-sqrt(A)), which is what "not very B" implies
    through the contrapositive.
    """
    case = CaseTag.parse(case)
    if convention not in TARGET_CONVENTIONS:
        raise ValueError(f"unknown target convention {convention!r}")
    a, b = as_fuzzy(A), as_fuzzy(B)
    n = case.value
    if n == 1:
        return b
    if n == 2:
        return apply_hedge(b, HedgeKind.VERY)
    if n == 3:
        return apply_hedge(b, HedgeKind.MORE_OR_LESS)
    if n == 4:
        return apply_hedge(b, HedgeKind.NOT)
    if n in (5, 10):
        t = _need_tilt(tilt, case)
        ref = b if n == 5 else a
        if len(t) != len(ref):
            raise DimensionMismatch(f"tilt has {len(t)} grades, expected {len(ref)}")
        return t
    if n == 9:
        return a
    not_a = apply_hedge(a, HedgeKind.NOT)
    if n == 6:
        return not_a
    hedge = HedgeKind.VERY if n == 7 else HedgeKind.MORE_OR_LESS
    if convention == "literal":
        return apply_hedge(not_a, hedge)
    return apply_hedge(apply_hedge(a, hedge), HedgeKind.NOT)


def premise_for(case: CaseTag | str | int, A: SetLike, B: SetLike,
                tilt: SetLike | None = None) -> FuzzySetVector:
    """The premise each case feeds in: hedges of A for FMP, of B for FMT."""
    case = CaseTag.parse(case)
    n = case.value
    if n in (5, 10):
        return _need_tilt(tilt, case)
    if n <= 4:
        hedge = {1: HedgeKind.IDENTITY, 2: HedgeKind.VERY,
                 3: HedgeKind.MORE_OR_LESS, 4: HedgeKind.NOT}[n]
        return apply_hedge(A, hedge)
    if n == 9:
        return as_fuzzy(B)
    hedge = {6: HedgeKind.IDENTITY, 7: HedgeKind.VERY, 8: HedgeKind.MORE_OR_LESS}[n]
    return apply_hedge(apply_hedge(B, hedge), HedgeKind.NOT)


@dataclass(frozen=True)
class CaseSpec:
    case: CaseTag
    branch: CaseTag | None = None

    @classmethod
    def from_json(cls, item: Any) -> "CaseSpec":
        if isinstance(item, dict):
            branch = item.get("branch")
            return cls(CaseTag.parse(item["case"]),
                       None if branch is None else CaseTag.parse(branch))
        return cls(CaseTag.parse(item))

    def to_json(self) -> Any:
        if self.branch is None:
            return self.case.label
        return {"case": self.case.label, "branch": self.branch.label}


@dataclass(frozen=True, eq=False)
class ExperimentSpec:
    """One rule, one direction, a list of premise cases and the methods to run.

    ``tilt_antecedent`` and ``tilt_consequent`` are the slightly-tilted
    versions of A and B used by cases 5 and 10.
    """

    name: str
    direction: str
    antecedent: FuzzySetVector
    consequent: FuzzySetVector
    cases: tuple[CaseSpec, ...]
    methods: tuple[str, ...] = COMPARISON_METHODS
    klass: int | None = None
    tilt_antecedent: FuzzySetVector | None = None
    tilt_consequent: FuzzySetVector | None = None
    target_convention: str = "literal"
    description: str = ""

    def __post_init__(self) -> None:
        direction = self.direction.lower()
        if direction not in ("fmp", "fmt"):
            raise ValueError(f"{self.name}: direction must be 'fmp' or 'fmt'")
        object.__setattr__(self, "direction", direction)
        object.__setattr__(self, "antecedent", as_fuzzy(self.antecedent))
        object.__setattr__(self, "consequent", as_fuzzy(self.consequent))
        for key in ("tilt_antecedent", "tilt_consequent"):
            value = getattr(self, key)
            if value is not None:
                object.__setattr__(self, key, as_fuzzy(value))
        object.__setattr__(self, "cases", tuple(self.cases))
        object.__setattr__(self, "methods", tuple(
            InferenceMethod.parse(m).selector for m in self.methods))
        if self.target_convention not in TARGET_CONVENTIONS:
            raise ValueError(f"{self.name}: unknown target convention {self.target_convention!r}")
        for cs in self.cases:
            for tag in (cs.case, cs.branch):
                if tag is not None and tag.direction != direction:
                    raise ValueError(f"{self.name}: {tag.label} does not belong to {direction}")
        if self.klass is not None:
            allowed = CLASS_CASES.get((direction, self.klass))
            if allowed is None:
                raise ValueError(f"{self.name}: class must be 1 or 2")
            stray = [cs.case.label for cs in self.cases if cs.case.value not in allowed]
            if stray:
                raise ValueError(f"{self.name}: {', '.join(stray)} not in class {self.klass}")

    def premise(self, case: CaseTag) -> FuzzySetVector:
        tilt = self.tilt_antecedent if case.value == 5 else self.tilt_consequent
        return premise_for(case, self.antecedent, self.consequent, tilt)

    def target(self, case: CaseTag) -> FuzzySetVector:
        tilt = self.tilt_consequent if case.value == 5 else self.tilt_antecedent
        return expected_target(case, self.antecedent, self.consequent, tilt,
                               self.target_convention)

    def stage_tilt(self) -> FuzzySetVector | None:
        """The tilted vector an LCM case-5/10 branch offsets."""
        return self.tilt_consequent if self.direction == "fmp" else self.tilt_antecedent

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentSpec":
        if not isinstance(data, dict):
            raise ValueError("experiment spec must be a JSON object")
        missing = [k for k in ("name", "direction", "antecedent", "consequent", "cases")
                   if k not in data]
        if missing:
            raise ValueError(f"experiment spec missing {', '.join(missing)}")
        tilt = data.get("tilt") or {}
        return cls(
            name=str(data["name"]),
            direction=str(data["direction"]),
            antecedent=FuzzySetVector.from_dict(data["antecedent"]),
            consequent=FuzzySetVector.from_dict(data["consequent"]),
            cases=tuple(CaseSpec.from_json(c) for c in data["cases"]),
            methods=tuple(data.get("methods", COMPARISON_METHODS)),
            klass=data.get("class"),
            tilt_antecedent=tilt.get("antecedent"),
            tilt_consequent=tilt.get("consequent"),
            target_convention=data.get("target_convention", "literal"),
            description=data.get("description", ""),
        )

    def to_dict(self) -> dict:
        out: dict = {
            "name": self.name,
            "direction": self.direction,
            "class": self.klass,
            "antecedent": self.antecedent.grades.tolist(),
            "consequent": self.consequent.grades.tolist(),
            "cases": [c.to_json() for c in self.cases],
            "methods": list(self.methods),
            "target_convention": self.target_convention,
        }
        tilt = {}
        if self.tilt_antecedent is not None:
            tilt["antecedent"] = self.tilt_antecedent.grades.tolist()
        if self.tilt_consequent is not None:
            tilt["consequent"] = self.tilt_consequent.grades.tolist()
        if tilt:
            out["tilt"] = tilt
        if self.description:
            out["description"] = self.description
        return out


@dataclass(frozen=True, eq=False)
class CaseRecord:
    spec: str
    method: str
    case: CaseTag
    premise: FuzzySetVector
    result: FuzzySetVector
    target: FuzzySetVector
    rpcf: float
    seconds: float
    degenerate: bool = False


@dataclass(eq=False)
class RpcfReport:
    spec: ExperimentSpec
    records: list[CaseRecord] = field(default_factory=list)

    @property
    def methods(self) -> tuple[str, ...]:
        return self.spec.methods

    def for_method(self, method: str) -> list[CaseRecord]:
        key = InferenceMethod.parse(method).selector
        return [r for r in self.records if r.method == key]

    def case_rpcf(self, method: str, case: CaseTag | str | int) -> float:
        tag = CaseTag.parse(case)
        for r in self.for_method(method):
            if r.case is tag:
                return r.rpcf
        raise KeyError(f"{self.spec.name}: no record for {method} {tag.label}")

    def average(self, method: str) -> float:
        recs = self.for_method(method)
        if not recs:
            raise KeyError(f"{self.spec.name}: method {method} not run")
        return statistics.fmean(r.rpcf for r in recs)

    def averages(self) -> dict[str, float]:
        return {m: self.average(m) for m in self.methods if self.for_method(m)}


def run_experiment(spec: ExperimentSpec) -> RpcfReport:
    """Run every method on every case; records are ordered by case, then method."""
    report = RpcfReport(spec)
    A, B = spec.antecedent, spec.consequent
    for cs in spec.cases:
        premise = spec.premise(cs.case)
        target = spec.target(cs.case)
        for selector in spec.methods:
            t0 = time.perf_counter()
            out = infer(selector, spec.direction, A, B, premise, case=cs.case,
                        tilt=spec.stage_tilt(), branch=cs.branch)
            elapsed = time.perf_counter() - t0
            report.records.append(CaseRecord(
                spec.name, selector, cs.case, premise, out.result, target,
                rpcf(out.result, target), elapsed, out.degenerate))
    return report


@dataclass(frozen=True)
class ComparisonRow:
    method: str
    klass: int
    fmp: float | None
    fmt: float | None

    @property
    def fr(self) -> float | None:
        vals = [v for v in (self.fmp, self.fmt) if v is not None]
        return statistics.fmean(vals) if vals else None


@dataclass(frozen=True)
class SummaryRow:
    family: str
    fmp: float | None
    fmt: float | None

    @property
    def average(self) -> float | None:
        vals = [v for v in (self.fmp, self.fmt) if v is not None]
        return statistics.fmean(vals) if vals else None


def _mean(values: Iterable[float | None]) -> float | None:
    vals = [v for v in values if v is not None]
    return statistics.fmean(vals) if vals else None


@dataclass(eq=False)
class Comparison:
    """Per-class method rows plus a per-family summary across both classes."""

    reports: list[RpcfReport]
    rows: list[ComparisonRow]
    summary: list[SummaryRow]

    def row(self, method: str, klass: int) -> ComparisonRow:
        key = InferenceMethod.parse(method).selector
        for r in self.rows:
            if r.method == key and r.klass == klass:
                return r
        raise KeyError(f"no row for {method} class {klass}")

    def family(self, name: str) -> SummaryRow:
        for s in self.summary:
            if s.family == name:
                return s
        raise KeyError(f"no summary for {name}")

    def family_average(self, family: str, klass: int) -> float | None:
        """Mean of the FMP/FMT averages of a family's rows within one class."""
        return _mean(r.fr for r in self.rows
                     if r.klass == klass and r.method.split(":")[0] == family)


def compare_methods(specs: Sequence[ExperimentSpec],
                    methods: Sequence[str] | None = None) -> Comparison:
    if methods is not None:
        keep = [InferenceMethod.parse(m).selector for m in methods]
        specs = [dataclasses.replace(s, methods=tuple(keep)) for s in specs]
    reports = [run_experiment(s) for s in specs]
    order: list[str] = []
    for rep in reports:
        order.extend(m for m in rep.methods if m not in order)
    classes = sorted({rep.spec.klass for rep in reports if rep.spec.klass is not None})
    if not classes and reports:
        classes = [0]

    def avg(method: str, direction: str, klass: int) -> float | None:
        vals = [rep.average(method) for rep in reports
                if rep.spec.direction == direction and (rep.spec.klass or 0) == klass
                and rep.for_method(method)]
        return _mean(vals)

    rows = [ComparisonRow(m, k, avg(m, "fmp", k), avg(m, "fmt", k))
            for k in classes for m in order]
    families: list[str] = []
    for m in order:
        fam = m.split(":")[0]
        if fam not in families:
            families.append(fam)
    summary = []
    for fam in families:
        mine = [r for r in rows if r.method.split(":")[0] == fam]
        summary.append(SummaryRow(fam, _mean(r.fmp for r in mine), _mean(r.fmt for r in mine)))
    return Comparison(reports, rows, summary)


# ---------------------------------------------------------------- spec files

DATA = "lcmfuzzy.data"
BUNDLED_SPEC_FILES = ("fmp_class1.json", "fmp_class2.json",
                      "fmt_classes.json", "five_point_grid.json")
COMPARISON_SPEC_FILES = ("fmp_class1.json", "fmp_class2.json", "fmt_classes.json")


def read_data_json(name: str) -> Any:
    return json.loads(resources.files(DATA).joinpath(name).read_text(encoding="utf-8"))


def specs_from_json(data: Any) -> list[ExperimentSpec]:
    if isinstance(data, dict) and "specs" in data:
        data = data["specs"]
    if isinstance(data, dict):
        data = [data]
    if not isinstance(data, list):
        raise ValueError("spec file must hold an object, a list, or {\"specs\": [...]}")
    return [ExperimentSpec.from_dict(d) for d in data]


def load_specs(path: str | Path) -> list[ExperimentSpec]:
    text = Path(path).read_text(encoding="utf-8")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return specs_from_json(data)


def bundled_specs(files: Sequence[str] = BUNDLED_SPEC_FILES) -> list[ExperimentSpec]:
    out: list[ExperimentSpec] = []
    for name in files:
        out.extend(specs_from_json(read_data_json(name)))
    return out


def bundled_spec(name: str) -> ExperimentSpec:
    for spec in bundled_specs():
        if spec.name == name:
            return spec
    raise KeyError(f"no bundled spec named {name!r}")


# ---------------------------------------------------------------- fixtures


@dataclass(frozen=True)
class FixtureCheck:
    label: str
    expected: Any
    actual: Any
    tol: float
    soft: bool
    deviation: float

    @property
    def ok(self) -> bool:
        return self.deviation <= self.tol


def _deviation(expected, actual) -> float:
    e = np.asarray(expected, dtype=float)
    a = np.asarray(actual, dtype=float)
    if e.shape != a.shape:
        return float("inf")
    return float(np.max(np.abs(e - a))) if e.size else 0.0


def check_reports(reports: Sequence[RpcfReport], cells: Sequence[dict] | None = None) -> list[FixtureCheck]:
    """Compare experiment reports with fixture cells whose spec was run."""
    if cells is None:
        cells = read_data_json("fixtures.json")["experiments"]
    by_name = {r.spec.name: r for r in reports}
    out = []
    for cell in cells:
        rep = by_name.get(cell["spec"])
        if rep is None or not rep.for_method(cell["method"]):
            continue
        qty = cell["quantity"]
        case = cell.get("case")
        if qty == "average":
            actual: Any = rep.average(cell["method"])
        elif qty == "rpcf":
            actual = rep.case_rpcf(cell["method"], case)
        elif qty == "vector":
            tag = CaseTag.parse(case)
            actual = next(r.result.grades.tolist() for r in rep.for_method(cell["method"])
                          if r.case is tag)
        else:
            raise ValueError(f"unknown fixture quantity {qty!r}")
        label = f"{cell['spec']} {cell['method']} {case or ''} {qty}".replace("  ", " ")
        out.append(FixtureCheck(label, cell["expected"], actual, float(cell["tol"]),
                                bool(cell.get("soft", False)),
                                _deviation(cell["expected"], actual)))
    return out


def check_comparison(comp: Comparison, cells: Sequence[dict] | None = None) -> list[FixtureCheck]:
    if cells is None:
        data = read_data_json("fixtures.json")
        cells = data["comparison"] + data["summary"]
    out = []
    for cell in cells:
        if "family" in cell:
            try:
                srow = comp.family(cell["family"])
            except KeyError:
                continue
            actual = getattr(srow, cell["column"])
            label = f"summary {cell['family']} {cell['column']}"
        else:
            try:
                row = comp.row(cell["method"], cell["class"])
            except KeyError:
                continue
            actual = getattr(row, cell["direction"])
            label = f"class{cell['class']} {cell['method']} {cell['direction']}"
        if actual is None:
            continue
        out.append(FixtureCheck(label, cell["expected"], actual, float(cell["tol"]),
                                bool(cell.get("soft", False)),
                                _deviation(cell["expected"], actual)))
    return out


def hard_failures(checks: Iterable[FixtureCheck]) -> list[FixtureCheck]:
    return [c for c in checks if not c.ok and not c.soft]


# ---------------------------------------------------------------- scorecard

SCORECARD_GRID = (0.0, 0.25, 0.5, 0.75, 1.0)


def reductive_scorecard(methods: Sequence[str], grid: Sequence[float] = SCORECARD_GRID,
                        atol: float = 1e-9) -> dict[str, tuple[float, float]]:
    """Share of the four FMP and four FMT hedge cases a method answers exactly.

    Uses A = B = ``grid``.  FMP premises are A, very A, more-or-less A and
    not A; FMT premises are not B, not very B, not more-or-less B and B.
    """
    A = as_fuzzy(grid)
    B = A
    out = {}
    for m in methods:
        scores = []
        for direction, cases in (("fmp", (1, 2, 3, 4)), ("fmt", (6, 7, 8, 9))):
            hits = 0
            for n in cases:
                tag = CaseTag(n)
                premise = premise_for(tag, A, B)
                target = expected_target(tag, A, B, convention="negated-hedge")
                got = infer(m, direction, A, B, premise, case=tag).result
                hits += bool(np.allclose(got.grades, target.grades, atol=atol, rtol=0.0))
            scores.append(100.0 * hits / len(cases))
        out[InferenceMethod.parse(m).selector] = (scores[0], scores[1])
    return out
