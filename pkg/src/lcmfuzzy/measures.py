"""Distance and similarity measures between equal-length fuzzy sets."""

from __future__ import annotations

import numpy as np

from .logic import Implication, implication_array
from .sets import SetLike, grades_of, require_same_length

SIMILARITY_IDS = tuple(range(17, 26))


def _pair(p: SetLike, q: SetLike) -> tuple[np.ndarray, np.ndarray]:
    a, b = grades_of(p), grades_of(q)
    require_same_length(a, b, "fuzzy sets")
    return a, b


def dm_distance(p: SetLike, q: SetLike) -> float:
    """Root-mean-square difference of grades."""
    a, b = _pair(p, q)
    return float(np.sqrt(np.mean((a - b) ** 2)))


def sm_from_dm(p: SetLike, q: SetLike) -> float:
    return 1.0 / (1.0 + dm_distance(p, q))


def _ratio(num: float, den: float) -> float:
    # 0/0 means both sets are empty where it matters: count as agreement.
    return 1.0 if den == 0.0 else num / den


def _biimplication(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    fwd = implication_array(Implication.GODEL, a, b)
    back = implication_array(Implication.GODEL, b, a)
    return np.minimum(fwd, back)


def similarity(measure_id: int, p: SetLike, q: SetLike) -> float:
    """Evaluate one of the nine classic similarity measures, ids 17 to 25.

    17  1 - sum|a-b| / sum(a+b)
    18  mean(1 - |a-b|)
    19  1 - max|a-b|
    20  sum(ab) / max(sum a^2, sum b^2)
    21  sum min / sum max
    22  mean(min / max)
    23  max(min(a, b))
    24  mean of the Godel biimplication on grades and on complements
    25  cosine similarity of the (mu, 1-mu) pairs
    """
    a, b = _pair(p, q)
    if measure_id == 17:
        den = float((a + b).sum())
        return 1.0 if den == 0.0 else 1.0 - float(np.abs(a - b).sum()) / den
    if measure_id == 18:
        return float(np.mean(1.0 - np.abs(a - b)))
    if measure_id == 19:
        return float(1.0 - np.max(np.abs(a - b)))
    if measure_id == 20:
        return _ratio(float((a * b).sum()), float(max((a * a).sum(), (b * b).sum())))
    if measure_id == 21:
        return _ratio(float(np.minimum(a, b).sum()), float(np.maximum(a, b).sum()))
    if measure_id == 22:
        lo, hi = np.minimum(a, b), np.maximum(a, b)
        terms = np.where(hi == 0.0, 1.0, lo / np.where(hi == 0.0, 1.0, hi))
        return float(np.mean(terms))
    if measure_id == 23:
        return float(np.max(np.minimum(a, b)))
    if measure_id == 24:
        terms = 0.5 * (_biimplication(a, b) + _biimplication(1.0 - a, 1.0 - b))
        return float(np.mean(terms))
    if measure_id == 25:
        na, nb = 1.0 - a, 1.0 - b
        num = float((a * b + na * nb).sum())
        den = float(np.sqrt((a * a + na * na).sum() * (b * b + nb * nb).sum()))
        return min(1.0, num / den)
    raise ValueError(f"unknown similarity measure {measure_id}; expected 17..25")
