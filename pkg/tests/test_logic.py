import numpy as np
import pytest

from lcmfuzzy.logic import (Implication, TNorm, implication_array, implication_value,
                            residuated_tnorm, tnorm_array)

GRID = np.round(np.linspace(0, 1, 101), 10)


@pytest.mark.parametrize("kind", list(Implication))
def test_implication_is_one_when_antecedent_not_larger(kind):
    a, b = np.meshgrid(GRID, GRID, indexing="ij")
    out = implication_array(kind, a, b)
    assert np.all(out[a <= b] == 1.0)
    assert np.all((out >= 0) & (out <= 1))


def test_named_values():
    assert implication_value(Implication.LUKASIEWICZ, 0.8, 0.5) == pytest.approx(0.7)
    assert implication_value(Implication.SHARP_S, 0.3, 0.3) == 1.0
    assert implication_value(Implication.SHARP_S, 0.31, 0.3) == 0.0
    assert implication_value(Implication.SHARP_G, 0.6, 0.3) == pytest.approx(0.3)
    assert implication_value(Implication.GOGUEN, 0.5, 0.25) == pytest.approx(0.5)
    assert implication_value(Implication.R0, 0.7, 0.2) == pytest.approx(0.3)


@pytest.mark.parametrize("kind", [Implication.GODEL, Implication.GOGUEN,
                                  Implication.LUKASIEWICZ, Implication.R0])
def test_residuation_brute_force(kind):
    # a -> b is the largest c on the grid with T(a, c) <= b.
    t = residuated_tnorm(kind)
    for a in GRID[::5]:
        for b in GRID[::5]:
            ok = GRID[tnorm_array(t, a, GRID) <= b + 1e-12]
            assert implication_value(kind, a, b) == pytest.approx(ok.max(), abs=0.0101)


@pytest.mark.parametrize("t", list(TNorm))
def test_tnorm_properties(t):
    a, b = np.meshgrid(GRID[::10], GRID[::10], indexing="ij")
    out = tnorm_array(t, a, b)
    np.testing.assert_allclose(out, out.T)
    np.testing.assert_allclose(tnorm_array(t, GRID, 1.0), GRID)
    assert np.all(np.diff(out, axis=0) >= -1e-12)


def test_parse_aliases():
    assert Implication.parse("Gödel") is Implication.GODEL
    assert Implication.parse("gougen") is Implication.GOGUEN
    with pytest.raises(ValueError):
        Implication.parse("nope")
