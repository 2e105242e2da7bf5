import dataclasses
import json

import numpy as np
import pytest

from lcmfuzzy.lcm import CaseTag
from lcmfuzzy.rpcf import (CaseSpec, ExperimentSpec, FixtureCheck, bundled_spec, bundled_specs,
                           check_reports, compare_methods, expected_target, hard_failures,
                           load_specs, premise_for, reductive_scorecard, rpcf, run_experiment,
                           specs_from_json)

A = [1, 0.3, 0, 0, 0]
B = [0, 0, 0, 0, 0, 0.3, 1]
G = [0, 0.25, 0.5, 0.75, 1]


def test_rpcf_examples():
    assert rpcf(B, B) == 100.0
    assert rpcf([0.072, 0, 0, 0, 0.072, 0.35, 1], [0, 0, 0, 0, 0, 0.09, 1]) == pytest.approx(94.23, abs=5e-3)
    assert rpcf([0, 0.087, 0.337, 0.587, 1], np.square(G)) == pytest.approx(97.28, abs=5e-3)


def test_rpcf_is_permutation_invariant():
    rng = np.random.default_rng(1)
    r, t = rng.random(8), rng.random(8)
    perm = rng.permutation(8)
    assert rpcf(r, t) == pytest.approx(rpcf(r[perm], t[perm]))


def test_expected_target_examples():
    assert expected_target(CaseTag.CASE1, A, B).grades.tolist() == B
    np.testing.assert_allclose(expected_target(2, A, B).grades, [0, 0, 0, 0, 0, 0.09, 1])
    np.testing.assert_allclose(expected_target(7, A, B).grades, [0, 0.49, 1, 1, 1])
    np.testing.assert_allclose(expected_target(7, A, B, convention="negated-hedge").grades,
                               [0, 0.91, 1, 1, 1])
    np.testing.assert_allclose(expected_target(5, A, B, tilt=[0, 0, 0, 0, 0, 0.2, 1]).grades,
                               [0, 0, 0, 0, 0, 0.2, 1])
    with pytest.raises(ValueError):
        expected_target(10, A, B)
    with pytest.raises(ValueError):
        expected_target(1, A, B, convention="other")


def test_premise_for_fmt_cases():
    b = np.asarray(G)
    np.testing.assert_allclose(premise_for(6, G, G).grades, 1 - b)
    np.testing.assert_allclose(premise_for(7, G, G).grades, 1 - b ** 2)
    np.testing.assert_allclose(premise_for(8, G, G).grades, 1 - np.sqrt(b))
    np.testing.assert_allclose(premise_for(9, G, G).grades, b)


def test_class_one_fmp_lcm_rows():
    rep = run_experiment(bundled_spec("fmp-class1"))
    got = [rep.case_rpcf("lcm:p3", n) for n in (1, 2, 3, 4)]
    np.testing.assert_allclose(got, [100, 94.24, 92.56, 63.53], atol=0.05)
    assert rep.average("lcm:p3") == pytest.approx(87.58, abs=0.05)
    assert rep.average("lcm:p2") == pytest.approx(87.96, abs=0.05)


def test_class_two_fmp_two_valued_average():
    rep = run_experiment(bundled_spec("fmp-class2"))
    assert rep.average("lcm:p2") == pytest.approx(96.39, abs=0.05)


def test_case_one_only_spec_scores_100():
    spec = ExperimentSpec("one", "fmp", A, B, (CaseSpec(CaseTag.CASE1),), ("lcm:p3", "lcm:p2"))
    rep = run_experiment(spec)
    assert rep.averages() == {"lcm:p3": 100.0, "lcm:p2": 100.0}


def test_spec_validation():
    with pytest.raises(ValueError):
        ExperimentSpec("bad", "fmp", A, B, (CaseSpec(CaseTag.CASE6),))
    with pytest.raises(ValueError):
        ExperimentSpec("bad", "fmp", A, B, (CaseSpec(CaseTag.CASE5),), klass=1)
    with pytest.raises(ValueError):
        ExperimentSpec("bad", "sideways", A, B, ())
    with pytest.raises(ValueError):
        specs_from_json({"name": "x"})


def test_spec_dict_round_trip(tmp_path):
    spec = bundled_spec("grid-fmp")
    again = ExperimentSpec.from_dict(json.loads(json.dumps(spec.to_dict())))
    assert again.to_dict() == spec.to_dict()
    path = tmp_path / "spec.json"
    path.write_text(json.dumps([spec.to_dict()]))
    assert [s.name for s in load_specs(path)] == ["grid-fmp"]
    path.write_text("[{")
    with pytest.raises(ValueError, match="line 1"):
        load_specs(path)


def test_comparison_rows_and_lcm_summary():
    specs = [s for s in bundled_specs() if not s.name.startswith("grid-")]
    comp = compare_methods(specs, ["lcm:p3", "lcm:p2", "cri:godel"])
    row = comp.row("lcm:p3", 1)
    assert row.fmp == pytest.approx(87.58, abs=0.05)
    assert row.fr == pytest.approx((row.fmp + row.fmt) / 2)
    assert {r.method for r in comp.rows} == {"lcm:p3", "lcm:p2", "cri:godel"}
    lcm = comp.family("lcm")
    assert lcm.fmp == pytest.approx(92.07, abs=0.2)
    assert lcm.fmt == pytest.approx(89.05, abs=0.2)


def test_bundled_fixtures_have_no_hard_failures():
    reports = [run_experiment(s) for s in bundled_specs()]
    checks = check_reports(reports)
    assert len(checks) > 40
    assert hard_failures(checks) == []


def test_fixture_check_flags_deviation():
    rep = run_experiment(bundled_spec("grid-fmp"))
    cells = [{"spec": "grid-fmp", "method": "lcm:p3", "quantity": "average",
              "expected": 50.0, "tol": 0.05}]
    (check,) = check_reports([rep], cells)
    assert isinstance(check, FixtureCheck) and not check.ok
    assert hard_failures([check]) == [check]
    soft = dataclasses.replace(check, soft=True)
    assert hard_failures([soft]) == []


def test_scorecard_reductive_methods():
    card = reductive_scorecard(["lcm:p3", "rel:rs", "rel:rss", "rel:ra"])
    # Hedged premises are only approximated by the distance method; the
    # identity premise is exact.
    assert card["lcm:p3"] == (25.0, 25.0)
    assert card["rel:rs"] == (75.0, 75.0)
    assert card["rel:rss"] == (100.0, 100.0)
    assert card["rel:ra"] == (0.0, 0.0)
