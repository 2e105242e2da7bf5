"""Fuzzy implications and t-norms, scalar and broadcasting forms."""

from __future__ import annotations

import enum

import numpy as np


class Implication(enum.Enum):
    GODEL = "godel"
    GOGUEN = "goguen"
    LUKASIEWICZ = "lukasiewicz"
    R0 = "r0"
    SHARP_S = "sharp-s"
    SHARP_G = "sharp-g"

    @classmethod
    def parse(cls, name: "str | Implication") -> "Implication":
        if isinstance(name, Implication):
            return name
        key = name.strip().lower().replace("_", "-")
        aliases = {"gödel": "godel", "g": "godel", "go": "goguen", "gougen": "goguen",
                   "luk": "lukasiewicz", "łukasiewicz": "lukasiewicz", "l": "lukasiewicz",
                   "s": "sharp-s", "sharps": "sharp-s", "gr": "sharp-g", "sharpg": "sharp-g"}
        key = aliases.get(key, key)
        for member in cls:
            if member.value == key:
                return member
        raise ValueError(f"unknown implication {name!r}")


class TNorm(enum.Enum):
    MIN = "min"
    PRODUCT = "product"
    LUKASIEWICZ = "lukasiewicz"
    R0_CONJUNCTION = "r0"


def implication_array(kind: Implication, a, b) -> np.ndarray:
    """Elementwise ``a -> b`` with numpy broadcasting."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    a, b = np.broadcast_arrays(a, b)
    le = a <= b
    if kind is Implication.LUKASIEWICZ:
        return np.minimum(1.0, 1.0 - a + b)
    if kind is Implication.GODEL or kind is Implication.SHARP_G:
        return np.where(le, 1.0, b)
    if kind is Implication.GOGUEN:
        safe = np.where(le, 1.0, a)
        return np.where(le, 1.0, b / safe)
    if kind is Implication.R0:
        return np.where(le, 1.0, np.maximum(1.0 - a, b))
    if kind is Implication.SHARP_S:
        return np.where(le, 1.0, 0.0)
    raise ValueError(f"unsupported implication {kind!r}")


def tnorm_array(kind: TNorm, a, b) -> np.ndarray:
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if kind is TNorm.MIN:
        return np.minimum(a, b)
    if kind is TNorm.PRODUCT:
        return a * b
    if kind is TNorm.LUKASIEWICZ:
        return np.maximum(0.0, a + b - 1.0)
    if kind is TNorm.R0_CONJUNCTION:
        return np.where(a + b > 1.0, np.minimum(a, b), 0.0)
    raise ValueError(f"unsupported t-norm {kind!r}")


def implication_value(kind: Implication, a: float, b: float) -> float:
    return float(implication_array(kind, a, b))


def tnorm_value(kind: TNorm, a: float, b: float) -> float:
    return float(tnorm_array(kind, a, b))


# The sharp implications are not residua of any left-continuous t-norm;
# they are paired with min, which is the residuated partner of Godel.
_RESIDUATED = {
    Implication.GODEL: TNorm.MIN,
    Implication.GOGUEN: TNorm.PRODUCT,
    Implication.LUKASIEWICZ: TNorm.LUKASIEWICZ,
    Implication.R0: TNorm.R0_CONJUNCTION,
    Implication.SHARP_S: TNorm.MIN,
    Implication.SHARP_G: TNorm.MIN,
}


def residuated_tnorm(kind: Implication) -> TNorm:
    return _RESIDUATED[kind]
