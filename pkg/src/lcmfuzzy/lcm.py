"""Distance-measure reasoning over fuzzy vectors of unequal length.

Both the rule vectors and the premise are resampled onto a common grid of
length ``lcm(u, v)``.  The premise's deviation from the rule (an RMS
distance times a sign pattern) is added to the consequent on that grid,
the consequent's own grid points are read back out, and the result is
rescaled to span [0, 1].
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .sets import DimensionMismatch, FuzzySetVector, SetLike, as_fuzzy, grades_of

MAX_THETA = 10**6
DEGENERATE_RANGE = 1e-12


class SignForm(enum.Enum):
    THREE_VALUED = "p3"
    TWO_VALUED = "p2"

    @classmethod
    def parse(cls, value: "str | SignForm") -> "SignForm":
        if isinstance(value, SignForm):
            return value
        key = str(value).strip().lower()
        for member in cls:
            if key in (member.value, member.name.lower()):
                return member
        raise ValueError(f"unknown sign form {value!r}; expected 'p3' or 'p2'")


class CaseTag(enum.Enum):
    CASE1 = 1
    CASE2 = 2
    CASE3 = 3
    CASE4 = 4
    CASE5 = 5
    CASE6 = 6
    CASE7 = 7
    CASE8 = 8
    CASE9 = 9
    CASE10 = 10

    @property
    def direction(self) -> str:
        return "fmp" if self.value <= 5 else "fmt"

    @property
    def label(self) -> str:
        return f"case{self.value}"

    @classmethod
    def parse(cls, value: "str | int | CaseTag") -> "CaseTag":
        if isinstance(value, CaseTag):
            return value
        if isinstance(value, str):
            text = value.strip().lower()
            if text.startswith("case"):
                text = text[4:]
            try:
                value = int(text)
            except ValueError:
                raise ValueError(f"unknown case {value!r}") from None
        try:
            return cls(int(value))
        except ValueError:
            raise ValueError(f"case must be 1..10, got {value!r}") from None


@dataclass(frozen=True, eq=False)
class ExtendedVector:
    """A vector resampled to length ``theta``; anchor k sits at index k*stride - 1."""

    values: np.ndarray
    theta: int
    stride: int

    @property
    def original_length(self) -> int:
        return self.theta // self.stride

    def anchors(self) -> np.ndarray:
        return select_anchors(self.values, self.original_length)


def common_theta(u: int, v: int) -> int:
    theta = math.lcm(u, v)
    if theta > MAX_THETA:
        raise ValueError(f"lcm({u}, {v}) = {theta} exceeds the limit of {MAX_THETA}")
    return theta


def _extend_values(g: np.ndarray, theta: int) -> np.ndarray:
    n = g.size
    if theta <= 0 or theta % n:
        raise DimensionMismatch(f"theta={theta} is not a positive multiple of length {n}")
    m = theta // n
    out = np.empty(theta)
    out[:m] = g[0]
    if n > 1:
        frac = np.arange(1, m + 1) / m
        seg = g[:-1, None] + (g[1:] - g[:-1])[:, None] * frac[None, :]
        seg[:, -1] = g[1:]
        out[m:] = seg.ravel()
    return out


def lcm_extend(fset: SetLike, theta: int) -> ExtendedVector:
    g = grades_of(fset)
    values = np.clip(_extend_values(g, theta), 0.0, 1.0)
    values.setflags(write=False)
    return ExtendedVector(values, theta, theta // g.size)


def select_anchors(values: Sequence[float] | np.ndarray, length: int) -> np.ndarray:
    """Read back the grid points of a length-``length`` vector."""
    x = np.asarray(values, dtype=float)
    if length <= 0 or x.size % length:
        raise DimensionMismatch(f"{x.size} values cannot hold {length} anchors")
    m = x.size // length
    return x[m - 1::m].copy()


def lcm_distance(a: ExtendedVector, b: ExtendedVector) -> float:
    if a.theta != b.theta:
        raise DimensionMismatch(f"extended lengths differ: {a.theta} vs {b.theta}")
    return float(np.sqrt(np.mean((a.values - b.values) ** 2)))


def sign_vector(dif, form: SignForm | str) -> np.ndarray:
    d = np.asarray(dif, dtype=float)
    if SignForm.parse(form) is SignForm.THREE_VALUED:
        return np.sign(d)
    return np.where(d >= 0.0, 1.0, -1.0)


def normalize(quasi) -> tuple[FuzzySetVector, bool]:
    """Min-max rescale to [0, 1]; the flag is True when the range vanishes."""
    x = np.asarray(quasi, dtype=float)
    if x.size == 0:
        raise ValueError("cannot normalize an empty vector")
    lo, hi = float(x.min()), float(x.max())
    if hi - lo < DEGENERATE_RANGE:
        return FuzzySetVector(np.clip(x, 0.0, 1.0)), True
    return FuzzySetVector((x - lo) / (hi - lo)), False


@dataclass(frozen=True, eq=False)
class LcmInferenceResult:
    result: FuzzySetVector
    distance: float
    signs: np.ndarray
    quasi: np.ndarray
    theta: int
    degenerate: bool = False


def _check_case(case, branch, direction: str) -> tuple[CaseTag, CaseTag]:
    case = CaseTag.parse(case)
    branch = case if branch is None else CaseTag.parse(branch)
    for tag in (case, branch):
        if tag.direction != direction:
            raise ValueError(f"{tag.label} is not valid for {direction.upper()}")
    return case, branch


def _infer(rule_in: np.ndarray, premise: np.ndarray, base_out: np.ndarray,
           out_len: int, form: SignForm, theta: int) -> LcmInferenceResult:
    a = lcm_extend(rule_in, theta)
    p = lcm_extend(premise, theta)
    dif = p.values - a.values
    distance = lcm_distance(p, a)
    signs = sign_vector(dif, form)
    quasi = select_anchors(base_out + distance * signs, out_len)
    result, degenerate = normalize(quasi)
    return LcmInferenceResult(result, distance, signs, quasi, theta, degenerate)


def _tilt_values(tilt: SetLike | None, length: int, theta: int, case: CaseTag) -> np.ndarray:
    if tilt is None:
        raise ValueError(f"{case.label} needs an explicit slightly-tilted vector")
    t = grades_of(tilt)
    if t.size != length:
        raise DimensionMismatch(f"tilt has {t.size} grades, expected {length}")
    return lcm_extend(t, theta).values


def fmp_lcm(antecedent: SetLike, premise: SetLike, consequent: SetLike,
            case: CaseTag | str | int = CaseTag.CASE1,
            form: SignForm | str = SignForm.THREE_VALUED,
            tilt: SetLike | None = None,
            branch: CaseTag | str | int | None = None) -> LcmInferenceResult:
    """Modus ponens: from rule A -> B and premise A*, infer B*.

    ``case`` names the premise situation; ``branch`` (default: the case)
    picks how the consequent is offset.  Cases 1-3 offset B, case 4 offsets
    1 - B and case 5 offsets ``tilt``.
    """
    case, branch = _check_case(case, branch, "fmp")
    a, s, b = grades_of(antecedent), grades_of(premise), grades_of(consequent)
    if a.size != s.size:
        raise DimensionMismatch(f"antecedent has {a.size} grades, premise has {s.size}")
    theta = common_theta(a.size, b.size)
    if branch is CaseTag.CASE4:
        base = 1.0 - lcm_extend(b, theta).values
    elif branch is CaseTag.CASE5:
        base = _tilt_values(tilt, b.size, theta, branch)
    else:
        base = lcm_extend(b, theta).values
    return _infer(a, s, base, b.size, SignForm.parse(form), theta)


def fmt_lcm(consequent: SetLike, premise: SetLike, antecedent: SetLike,
            case: CaseTag | str | int = CaseTag.CASE6,
            form: SignForm | str = SignForm.THREE_VALUED,
            tilt: SetLike | None = None,
            branch: CaseTag | str | int | None = None) -> LcmInferenceResult:
    """Modus tollens: from rule A -> B and premise B*, infer A*.

    The premise is compared against 1 - B.  Cases 6-8 offset 1 - A,
    case 9 offsets A and case 10 offsets ``tilt``.
    """
    case, branch = _check_case(case, branch, "fmt")
    b, s, a = grades_of(consequent), grades_of(premise), grades_of(antecedent)
    if b.size != s.size:
        raise DimensionMismatch(f"consequent has {b.size} grades, premise has {s.size}")
    theta = common_theta(b.size, a.size)
    if branch is CaseTag.CASE9:
        base = lcm_extend(a, theta).values
    elif branch is CaseTag.CASE10:
        base = _tilt_values(tilt, a.size, theta, branch)
    else:
        base = 1.0 - lcm_extend(a, theta).values
    return _infer(1.0 - b, s, base, a.size, SignForm.parse(form), theta)


def fmp_lcm_many(antecedent: SetLike, premises: Sequence[SetLike], consequent: SetLike,
                 **kwargs) -> list[LcmInferenceResult]:
    return [fmp_lcm(antecedent, p, consequent, **kwargs) for p in premises]


def fmt_lcm_many(consequent: SetLike, premises: Sequence[SetLike], antecedent: SetLike,
                 **kwargs) -> list[LcmInferenceResult]:
    return [fmt_lcm(consequent, p, antecedent, **kwargs) for p in premises]
