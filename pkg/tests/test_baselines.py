import itertools

import numpy as np
import pytest

from lcmfuzzy.baselines import (RelationKind, aars_fmp, aars_fmt, build_relation, cri_fmp,
                                cri_fmt, qip_fmp, qip_fmt, relation_fmp, relation_fmt,
                                relation_grid, tip_fmp, tip_fmt)
from lcmfuzzy.logic import Implication, TNorm, implication_value, residuated_tnorm, tnorm_value
from lcmfuzzy.sets import DimensionMismatch

G = np.array([0, 0.25, 0.5, 0.75, 1])
RESIDUA = [Implication.GODEL, Implication.GOGUEN, Implication.LUKASIEWICZ, Implication.R0]


def test_rc_matrix_example():
    rel = build_relation("rc", [1, 0], [0.3, 1])
    np.testing.assert_allclose(rel.entries, [[0.3, 1], [0, 0]])


def test_rm_entry_against_formula_on_grid():
    assert relation_grid("rm", 0.2, 0.9) == pytest.approx(0.8)
    grid = np.round(np.linspace(0, 1, 11), 10)
    for a, b in itertools.product(grid, grid):
        assert relation_grid("rm", a, b) == pytest.approx(max(min(a, b), 1 - a))


def test_sharp_entries():
    assert relation_grid("rs", 0.5, 0.5) == 1.0
    assert relation_grid("rs", 0.6, 0.5) == 0.0
    assert relation_grid("rg", 0.6, 0.5) == 0.5


@pytest.mark.parametrize("kind", list(RelationKind))
def test_relations_stay_in_unit_interval(kind):
    a, b = np.meshgrid(np.linspace(0, 1, 21), np.linspace(0, 1, 21), indexing="ij")
    r = relation_grid(kind, a, b)
    assert np.all((r >= 0) & (r <= 1))


def test_sharp_relations_give_two_valued_outputs():
    b = np.linspace(0, 1, 11)
    for h in np.linspace(0, 1, 21):
        rs = relation_grid("rs", h, b)
        assert set(np.unique(rs)) <= {0.0, 1.0}
        rg = relation_grid("rg", h, b)
        assert np.all((rg == 1.0) | (rg == b))


def test_cri_sharp_g_on_identity_premise_returns_consequent():
    out = cri_fmp(G, G, G, Implication.SHARP_G, TNorm.MIN)
    np.testing.assert_allclose(out.grades, G)


def test_cri_sharp_s_on_negated_premise_is_all_ones():
    out = cri_fmp(G, 1 - G, G, Implication.SHARP_S, TNorm.MIN)
    np.testing.assert_array_equal(out.grades, np.ones(5))


def test_cri_singleton_premise_collapses_sup():
    a = np.array([0.2, 0.9, 0.6])
    b = np.array([0.0, 0.5, 1.0, 0.3])
    for i0 in range(3):
        s = np.zeros(3)
        s[i0] = 1.0
        out = cri_fmp(a, s, b, Implication.LUKASIEWICZ, TNorm.MIN)
        want = [implication_value(Implication.LUKASIEWICZ, a[i0], bj) for bj in b]
        np.testing.assert_allclose(out.grades, want)


def test_relation_fmt_examples():
    np.testing.assert_array_equal(relation_fmt(build_relation("rs", G, G), G).grades, np.ones(5))
    np.testing.assert_allclose(relation_fmt(build_relation("rss", G, G), 1 - G).grades, 1 - G)
    for impl in RESIDUA:
        np.testing.assert_array_equal(cri_fmt(G, G, np.zeros(5), impl, TNorm.MIN).grades,
                                      np.zeros(5))


def test_relation_fmp_shape_check():
    with pytest.raises(DimensionMismatch):
        relation_fmp(build_relation("rc", G, G), [0, 1])


def test_tip_fmp_equals_cri_and_is_reductive_for_normal_premise():
    for impl in RESIDUA:
        np.testing.assert_allclose(tip_fmp(G, G, G, impl).grades, cri_fmp(G, G, G, impl).grades)
    np.testing.assert_allclose(tip_fmp(G, G, G, Implication.GODEL).grades, G)


def _tip_fmt_loop(a, b, s, impl):
    out = []
    for ai in a:
        vals = [implication_value(impl, implication_value(impl, ai, bj), sj)
                for bj, sj in zip(b, s)]
        out.append(min(vals))
    return out


@pytest.mark.parametrize("impl", RESIDUA)
def test_tip_fmt_against_loop_oracle(impl):
    rng = np.random.default_rng(5)
    for _ in range(10):
        a, b, s = rng.random(4), rng.random(5), rng.random(5)
        np.testing.assert_allclose(tip_fmt(a, b, s, impl).grades, _tip_fmt_loop(a, b, s, impl),
                                   atol=1e-12)
    np.testing.assert_array_equal(tip_fmt(G, G, np.ones(5), impl).grades, np.ones(5))


def test_qip_godel_identity_premise_collapses():
    out = qip_fmp(G, G, G, Implication.GODEL)
    want = [max(min(ai, implication_value(Implication.GODEL, ai, bj)) for ai in G) for bj in G]
    np.testing.assert_allclose(out.grades, want)
    np.testing.assert_array_equal(qip_fmp(G, np.zeros(5), G, Implication.GODEL).grades,
                                  np.zeros(5))


@pytest.mark.parametrize("impl", RESIDUA)
def test_qip_fmt_against_loop_oracle(impl):
    t = residuated_tnorm(impl)
    rng = np.random.default_rng(9)
    a, b, s = rng.random(3), rng.random(4), rng.random(4)
    want = []
    for ai in a:
        want.append(max(tnorm_value(t, tnorm_value(t, ai, implication_value(impl, ai, bj)),
                                    implication_value(impl, bj, sj)) for bj, sj in zip(b, s)))
    np.testing.assert_allclose(qip_fmt(a, b, s, impl).grades, want, atol=1e-12)


def test_aars_examples():
    for form in ("reduction", "more-or-less"):
        np.testing.assert_allclose(aars_fmp(G, G, G, form).grades, G)
        np.testing.assert_allclose(aars_fmt(G, G, G, form).grades, G)
    # dm([1, 0], [0, 1]) = 1, so SM = 0.5
    out = aars_fmp([1, 0], [0, 1], [0, 0.4, 1], "reduction")
    np.testing.assert_allclose(out.grades, [0, 0.2, 0.5])
    out = aars_fmp([1, 0], [0, 1], [0, 0.4, 1], "more-or-less")
    np.testing.assert_allclose(out.grades, [0, 0.8, 1])


@pytest.mark.parametrize("impl", RESIDUA + [Implication.SHARP_S, Implication.SHARP_G])
def test_outputs_stay_in_unit_interval(impl):
    rng = np.random.default_rng(2)
    for _ in range(20):
        a, s, b = rng.random(5), rng.random(5), rng.random(4)
        for out in (cri_fmp(a, s, b, impl), tip_fmp(a, s, b, impl), qip_fmp(a, s, b, impl)):
            assert np.all((out.grades >= 0) & (out.grades <= 1))
