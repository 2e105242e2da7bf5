"""Method selectors ("lcm:p3", "cri:godel", ...) and a uniform inference entry point."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any

from . import baselines as bl
from .lcm import CaseTag, SignForm, fmp_lcm, fmt_lcm
from .logic import Implication
from .sets import FuzzySetVector, InvalidFuzzySet, SetLike, as_fuzzy

FAMILIES = ("lcm", "cri", "tip", "qip", "aars", "rel")
_IMPLS = ("godel", "goguen", "lukasiewicz", "r0")

# Row order of the comparison tables.
COMPARISON_METHODS = (
    ("lcm:p3", "lcm:p2")
    + tuple(f"cri:{i}" for i in _IMPLS)
    + tuple(f"tip:{i}" for i in _IMPLS)
    + tuple(f"qip:{i}" for i in _IMPLS)
    + ("aars:more-or-less", "aars:reduction")
)


@dataclass(frozen=True)
class InferenceMethod:
    family: str
    variant: str

    @classmethod
    def parse(cls, selector: "str | InferenceMethod") -> "InferenceMethod":
        if isinstance(selector, InferenceMethod):
            return selector
        text = str(selector).strip().lower()
        family, sep, variant = text.partition(":")
        if not sep or family not in FAMILIES:
            raise ValueError(f"bad method selector {selector!r}; expected family:variant "
                             f"with family in {', '.join(FAMILIES)}")
        if family == "lcm":
            variant = SignForm.parse(variant).value
        elif family in ("cri", "tip", "qip"):
            variant = Implication.parse(variant).value
        elif family == "aars":
            variant = bl.AarsForm.parse(variant).value
        else:
            variant = bl.RelationKind.parse(variant).value
        return cls(family, variant)

    @property
    def selector(self) -> str:
        return f"{self.family}:{self.variant}"

    def __str__(self) -> str:
        return self.selector


def parse_methods(text: str | None, default=COMPARISON_METHODS) -> list[InferenceMethod]:
    """Comma-separated selectors; None or empty gives ``default``."""
    if not text:
        return [InferenceMethod.parse(s) for s in default]
    return [InferenceMethod.parse(s) for s in text.split(",") if s.strip()]


@dataclass(frozen=True, eq=False)
class Inference:
    result: FuzzySetVector
    distance: float | None = None
    degenerate: bool = False


def infer(method: InferenceMethod | str, direction: str, antecedent: SetLike,
          consequent: SetLike, premise: SetLike, case: CaseTag | str | int | None = None,
          tilt: SetLike | None = None, branch: CaseTag | str | int | None = None) -> Inference:
    """Run one inference.  For FMP the premise matches the antecedent, for
    FMT it matches the consequent.  ``case``, ``tilt`` and ``branch`` only
    affect the LCM family."""
    m = InferenceMethod.parse(method)
    direction = direction.lower()
    if direction not in ("fmp", "fmt"):
        raise ValueError(f"direction must be 'fmp' or 'fmt', got {direction!r}")
    A, B, P = as_fuzzy(antecedent), as_fuzzy(consequent), as_fuzzy(premise)
    fmp = direction == "fmp"
    if m.family == "lcm":
        if case is None:
            case = CaseTag.CASE1 if fmp else CaseTag.CASE6
        if fmp:
            r = fmp_lcm(A, P, B, case, m.variant, tilt=tilt, branch=branch)
        else:
            r = fmt_lcm(B, P, A, case, m.variant, tilt=tilt, branch=branch)
        return Inference(r.result, r.distance, r.degenerate)
    if m.family == "rel":
        rel = bl.build_relation(m.variant, A, B)
        out = bl.relation_fmp(rel, P) if fmp else bl.relation_fmt(rel, P)
        return Inference(out)
    fn = {
        ("cri", True): bl.cri_fmp, ("cri", False): bl.cri_fmt,
        ("tip", True): bl.tip_fmp, ("tip", False): bl.tip_fmt,
        ("qip", True): bl.qip_fmp, ("qip", False): bl.qip_fmt,
        ("aars", True): bl.aars_fmp, ("aars", False): bl.aars_fmt,
    }[(m.family, fmp)]
    out = fn(A, P, B, m.variant) if fmp else fn(A, B, P, m.variant)
    return Inference(out)


class RequestError(ValueError):
    """A malformed inference request; the message names the offending field."""


@dataclass(frozen=True, eq=False)
class InferenceRequest:
    antecedent: FuzzySetVector
    consequent: FuzzySetVector
    premise: FuzzySetVector
    direction: str = "fmp"
    case: CaseTag | None = None
    form: SignForm = SignForm.THREE_VALUED
    tilt: FuzzySetVector | None = None

    @classmethod
    def from_dict(cls, data: Any) -> "InferenceRequest":
        if not isinstance(data, dict):
            raise RequestError("request: expected a JSON object")

        def field(path: str, fn, value):
            try:
                return fn(value)
            except (InvalidFuzzySet, ValueError, TypeError) as exc:
                raise RequestError(f"{path}: {exc}") from None

        rule = data.get("rule")
        if not isinstance(rule, dict):
            raise RequestError("rule: expected an object with 'antecedent' and 'consequent'")
        for key in ("antecedent", "consequent"):
            if key not in rule:
                raise RequestError(f"rule.{key}: missing")
        if "premise" not in data:
            raise RequestError("premise: missing")
        direction = str(data.get("direction", "fmp")).lower()
        if direction not in ("fmp", "fmt"):
            raise RequestError(f"direction: expected 'fmp' or 'fmt', got {direction!r}")
        case = data.get("case")
        case = None if case is None else field("case", CaseTag.parse, case)
        if case is not None and case.direction != direction:
            raise RequestError(f"case: {case.label} does not belong to {direction}")
        tilt = data.get("tilt")
        return cls(
            antecedent=field("rule.antecedent", FuzzySetVector.from_dict, rule["antecedent"]),
            consequent=field("rule.consequent", FuzzySetVector.from_dict, rule["consequent"]),
            premise=field("premise", FuzzySetVector.from_dict, data["premise"]),
            direction=direction,
            case=case,
            form=field("form", SignForm.parse, data.get("form", "p3")),
            tilt=None if tilt is None else field("tilt", FuzzySetVector.from_dict, tilt),
        )

    @classmethod
    def from_json(cls, text: str) -> "InferenceRequest":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise RequestError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
        return cls.from_dict(data)

    def default_method(self) -> InferenceMethod:
        return InferenceMethod("lcm", self.form.value)

    def run(self, method: InferenceMethod | str | None = None) -> dict:
        m = self.default_method() if method is None else InferenceMethod.parse(method)
        try:
            out = infer(m, self.direction, self.antecedent, self.consequent, self.premise,
                        case=self.case, tilt=self.tilt)
        except ValueError as exc:
            raise RequestError(str(exc)) from None
        return {
            "method": m.selector,
            "result": out.result.grades.tolist(),
            "distance": out.distance,
            "degenerate": out.degenerate,
        }
