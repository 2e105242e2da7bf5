"""Reference reasoning methods: relation composition, CRI, TIP, QIP and AARS."""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .logic import Implication, TNorm, implication_array, residuated_tnorm, tnorm_array
from .measures import sm_from_dm
from .sets import DimensionMismatch, FuzzySetVector, SetLike, grades_of


class RelationKind(enum.Enum):
    RP = "rp"
    RA = "ra"
    RC = "rc"
    RM = "rm"
    RS = "rs"
    RG = "rg"
    RSS = "rss"
    RSG = "rsg"
    RGS = "rgs"
    RGG = "rgg"

    @classmethod
    def parse(cls, value: "str | RelationKind") -> "RelationKind":
        if isinstance(value, RelationKind):
            return value
        key = str(value).strip().lower().replace("_", "")
        for member in cls:
            if member.value == key:
                return member
        raise ValueError(f"unknown relation kind {value!r}")

    @property
    def is_sharp(self) -> bool:
        return self.value[1] in "sg"


_SHARP = {"s": Implication.SHARP_S, "g": Implication.SHARP_G}


@dataclass(frozen=True, eq=False)
class RelationMatrix:
    """A u x v grid of grades, rows indexed by the antecedent universe."""

    entries: np.ndarray

    def __post_init__(self) -> None:
        e = np.array(self.entries, dtype=float)
        if e.ndim != 2:
            raise ValueError("relation entries must be a 2-D grid")
        if np.any(e < 0.0) or np.any(e > 1.0):
            raise ValueError("relation entries must lie in [0, 1]")
        e.setflags(write=False)
        object.__setattr__(self, "entries", e)

    @property
    def shape(self) -> tuple[int, int]:
        return self.entries.shape  # type: ignore[return-value]


def relation_grid(kind: RelationKind | str, a, b) -> np.ndarray:
    """Relation value for every (a_i, b_j) pair; ``a`` and ``b`` broadcast."""
    kind = RelationKind.parse(kind)
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if kind is RelationKind.RP:
        return a * b
    if kind is RelationKind.RA:
        return np.minimum(1.0, 1.0 - a + b)
    if kind is RelationKind.RC:
        return np.minimum(a, b)
    if kind is RelationKind.RM:
        return np.maximum(np.minimum(a, b), 1.0 - a)
    first = implication_array(_SHARP[kind.value[1]], a, b)
    if len(kind.value) == 2:
        return first
    second = implication_array(_SHARP[kind.value[2]], 1.0 - a, 1.0 - b)
    return np.minimum(first, second)


def build_relation(kind: RelationKind | str, A: SetLike, B: SetLike) -> RelationMatrix:
    a, b = grades_of(A), grades_of(B)
    return RelationMatrix(relation_grid(kind, a[:, None], b[None, :]))


def _same_length(x: np.ndarray, y: np.ndarray, what: str) -> None:
    if x.size != y.size:
        raise DimensionMismatch(f"{what}: {x.size} vs {y.size}")


def relation_fmp(relation: RelationMatrix, Astar: SetLike) -> FuzzySetVector:
    """Sup-min composition of the premise with the relation rows."""
    s = grades_of(Astar)
    if s.size != relation.shape[0]:
        raise DimensionMismatch(f"premise has {s.size} grades, relation has {relation.shape[0]} rows")
    return FuzzySetVector(np.max(np.minimum(s[:, None], relation.entries), axis=0))


def relation_fmt(relation: RelationMatrix, Bstar: SetLike) -> FuzzySetVector:
    s = grades_of(Bstar)
    if s.size != relation.shape[1]:
        raise DimensionMismatch(f"premise has {s.size} grades, relation has {relation.shape[1]} columns")
    return FuzzySetVector(np.max(np.minimum(relation.entries, s[None, :]), axis=1))


def _rule_grid(A: SetLike, B: SetLike, impl: Implication) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    a, b = grades_of(A), grades_of(B)
    return a, b, implication_array(impl, a[:, None], b[None, :])


def cri_fmp(A: SetLike, Astar: SetLike, B: SetLike, impl: Implication | str,
            tnorm: TNorm | None = None) -> FuzzySetVector:
    impl = Implication.parse(impl)
    t = residuated_tnorm(impl) if tnorm is None else tnorm
    a, _, rule = _rule_grid(A, B, impl)
    s = grades_of(Astar)
    _same_length(a, s, "antecedent and premise")
    return FuzzySetVector(np.max(tnorm_array(t, s[:, None], rule), axis=0))


def cri_fmt(A: SetLike, B: SetLike, Bstar: SetLike, impl: Implication | str,
            tnorm: TNorm | None = None) -> FuzzySetVector:
    impl = Implication.parse(impl)
    t = residuated_tnorm(impl) if tnorm is None else tnorm
    _, b, rule = _rule_grid(A, B, impl)
    s = grades_of(Bstar)
    _same_length(b, s, "consequent and premise")
    return FuzzySetVector(np.max(tnorm_array(t, s[None, :], rule), axis=1))


def tip_fmp(A: SetLike, Astar: SetLike, B: SetLike, impl: Implication | str) -> FuzzySetVector:
    """Triple-implication FMP: the smallest B* making the full implication hold.

    For a residuated pair this is the sup-t composition with the
    residuated t-norm, so it coincides with ``cri_fmp``.
    """
    return cri_fmp(A, Astar, B, impl)


def tip_fmt(A: SetLike, B: SetLike, Bstar: SetLike, impl: Implication | str) -> FuzzySetVector:
    impl = Implication.parse(impl)
    _, b, rule = _rule_grid(A, B, impl)
    s = grades_of(Bstar)
    _same_length(b, s, "consequent and premise")
    return FuzzySetVector(np.min(implication_array(impl, rule, s[None, :]), axis=1))


def qip_fmp(A: SetLike, Astar: SetLike, B: SetLike, impl: Implication | str) -> FuzzySetVector:
    impl = Implication.parse(impl)
    t = residuated_tnorm(impl)
    a, _, rule = _rule_grid(A, B, impl)
    s = grades_of(Astar)
    _same_length(a, s, "antecedent and premise")
    lead = tnorm_array(t, s, implication_array(impl, s, a))
    return FuzzySetVector(np.max(tnorm_array(t, lead[:, None], rule), axis=0))


def qip_fmt(A: SetLike, B: SetLike, Bstar: SetLike, impl: Implication | str) -> FuzzySetVector:
    impl = Implication.parse(impl)
    t = residuated_tnorm(impl)
    a, b, rule = _rule_grid(A, B, impl)
    s = grades_of(Bstar)
    _same_length(b, s, "consequent and premise")
    lead = tnorm_array(t, a[:, None], rule)
    trail = implication_array(impl, b, s)
    return FuzzySetVector(np.max(tnorm_array(t, lead, trail[None, :]), axis=1))


class AarsForm(enum.Enum):
    REDUCTION = "reduction"
    MORE_OR_LESS = "more-or-less"

    @classmethod
    def parse(cls, value: "str | AarsForm") -> "AarsForm":
        if isinstance(value, AarsForm):
            return value
        key = str(value).strip().lower().replace("_", "-")
        for member in cls:
            if member.value == key:
                return member
        raise ValueError(f"unknown AARS form {value!r}")


def _aars(target: np.ndarray, sm: float, form: AarsForm) -> FuzzySetVector:
    if form is AarsForm.REDUCTION:
        return FuzzySetVector(target * sm)
    return FuzzySetVector(np.minimum(1.0, target / sm))


def aars_fmp(A: SetLike, Astar: SetLike, B: SetLike, form: AarsForm | str) -> FuzzySetVector:
    """Scale the consequent by the similarity of premise and antecedent."""
    a, s = grades_of(A), grades_of(Astar)
    _same_length(a, s, "antecedent and premise")
    return _aars(grades_of(B), sm_from_dm(s, a), AarsForm.parse(form))


def aars_fmt(A: SetLike, B: SetLike, Bstar: SetLike, form: AarsForm | str) -> FuzzySetVector:
    b, s = grades_of(B), grades_of(Bstar)
    _same_length(b, s, "consequent and premise")
    return _aars(grades_of(A), sm_from_dm(s, b), AarsForm.parse(form))
