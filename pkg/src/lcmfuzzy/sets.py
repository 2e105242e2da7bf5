"""Discrete fuzzy sets and the linguistic hedges that act on them."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Any, Iterable, Sequence, Union

import numpy as np


class InvalidFuzzySet(ValueError):
    """Raised when a grade vector violates the fuzzy set invariants."""


class DimensionMismatch(ValueError):
    """Raised when two vectors that must line up have different lengths."""


def _as_float_vector(values: Any, what: str = "grades") -> np.ndarray:
    try:
        arr = np.array(values, dtype=float)
    except (TypeError, ValueError) as exc:
        raise InvalidFuzzySet(f"{what}: not a list of numbers ({exc})") from None
    if arr.ndim != 1:
        raise InvalidFuzzySet(f"{what}: expected a flat list, got shape {arr.shape}")
    return arr


@dataclass(frozen=True, eq=False)
class FuzzySetVector:
    """Membership grades over an ordered, finite universe.

    Grades must lie in [0, 1] and there must be at least two of them.
    The optional ``universe`` gives the coordinate of each grade and must
    be strictly increasing.  Both arrays are stored read-only.
    """

    grades: np.ndarray
    universe: np.ndarray | None = None

    def __post_init__(self) -> None:
        g = _as_float_vector(self.grades).copy()
        if g.size < 2:
            raise InvalidFuzzySet(f"grades: need at least 2 entries, got {g.size}")
        bad = np.flatnonzero(~np.isfinite(g) | (g < 0.0) | (g > 1.0))
        if bad.size:
            i = int(bad[0])
            raise InvalidFuzzySet(f"grades[{i}] = {g[i]!r} is outside [0, 1]")
        g.setflags(write=False)
        object.__setattr__(self, "grades", g)
        if self.universe is not None:
            u = _as_float_vector(self.universe, "universe").copy()
            if u.size != g.size:
                raise InvalidFuzzySet(
                    f"universe has {u.size} points but grades has {g.size}"
                )
            if not np.all(np.isfinite(u)) or np.any(np.diff(u) <= 0):
                raise InvalidFuzzySet("universe must be finite and strictly increasing")
            u.setflags(write=False)
            object.__setattr__(self, "universe", u)

    def __len__(self) -> int:
        return int(self.grades.size)

    def __iter__(self):
        return iter(self.grades.tolist())

    def __getitem__(self, i):
        return self.grades[i]

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.grades, dtype=dtype)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FuzzySetVector):
            return NotImplemented
        if not np.array_equal(self.grades, other.grades):
            return False
        if self.universe is None or other.universe is None:
            return self.universe is None and other.universe is None
        return np.array_equal(self.universe, other.universe)

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        body = ", ".join(f"{x:.4g}" for x in self.grades)
        return f"FuzzySetVector([{body}])"

    def with_grades(self, grades: Iterable[float]) -> "FuzzySetVector":
        """Same universe, new grades."""
        return FuzzySetVector(np.asarray(list(grades), dtype=float), self.universe)

    def to_dict(self) -> dict:
        out: dict = {"grades": self.grades.tolist()}
        if self.universe is not None:
            out["universe"] = self.universe.tolist()
        return out

    @classmethod
    def from_dict(cls, data: Any) -> "FuzzySetVector":
        """Accept either ``{"grades": [...], "universe": [...]}`` or a bare list."""
        if isinstance(data, FuzzySetVector):
            return data
        if isinstance(data, dict):
            if "grades" not in data:
                raise InvalidFuzzySet("missing key 'grades'")
            extra = set(data) - {"grades", "universe"}
            if extra:
                raise InvalidFuzzySet(f"unexpected keys {sorted(extra)}")
            return cls(data["grades"], data.get("universe"))
        if isinstance(data, (list, tuple, np.ndarray)):
            return cls(data)
        raise InvalidFuzzySet(f"expected an object or list, got {type(data).__name__}")


SetLike = Union[FuzzySetVector, Sequence[float], np.ndarray]


def as_fuzzy(value: SetLike) -> FuzzySetVector:
    """Coerce a list or array to a validated ``FuzzySetVector``."""
    if isinstance(value, FuzzySetVector):
        return value
    return FuzzySetVector(value)


def grades_of(value: SetLike) -> np.ndarray:
    """Grade array of a set-like value (validated)."""
    return as_fuzzy(value).grades


def require_same_length(a: np.ndarray, b: np.ndarray, what: str = "vectors") -> None:
    if a.shape != b.shape:
        raise DimensionMismatch(f"{what} differ in length: {a.size} vs {b.size}")


class HedgeKind(enum.Enum):
    IDENTITY = "identity"
    VERY = "very"
    MORE_OR_LESS = "more-or-less"
    NOT = "not"
    SLIGHTLY_TILTED = "slightly-tilted"


@dataclass(frozen=True, eq=False)
class Hedge:
    """A unary modifier; ``tilt`` is the replacement vector for SLIGHTLY_TILTED."""

    kind: HedgeKind
    tilt: FuzzySetVector | None = None

    def __post_init__(self) -> None:
        if self.kind is HedgeKind.SLIGHTLY_TILTED:
            if self.tilt is None:
                raise InvalidFuzzySet("slightly-tilted hedge needs an explicit tilt vector")
            object.__setattr__(self, "tilt", as_fuzzy(self.tilt))


def apply_hedge(fset: SetLike, hedge: Hedge | HedgeKind) -> FuzzySetVector:
    s = as_fuzzy(fset)
    if isinstance(hedge, HedgeKind):
        hedge = Hedge(hedge)
    g = s.grades
    if hedge.kind is HedgeKind.IDENTITY:
        return s
    if hedge.kind is HedgeKind.VERY:
        return s.with_grades(g * g)
    if hedge.kind is HedgeKind.MORE_OR_LESS:
        return s.with_grades(np.sqrt(g))
    if hedge.kind is HedgeKind.NOT:
        return s.with_grades(1.0 - g)
    tilt = hedge.tilt
    assert tilt is not None
    if len(tilt) != len(s):
        raise DimensionMismatch(
            f"tilt has {len(tilt)} grades but the set has {len(s)}"
        )
    return FuzzySetVector(tilt.grades, s.universe)


def complement(fset: SetLike) -> FuzzySetVector:
    return apply_hedge(fset, HedgeKind.NOT)
