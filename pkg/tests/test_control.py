import math

import numpy as np
import pytest

from lcmfuzzy.control import (ControllerConfig, PlantParams, SimulationError, centroid,
                              convergence_probe, default_rule_table, fuzzify, infer_increment,
                              plant_step, probe_outputs, run_closed_loop, triangular_partition)
from lcmfuzzy.lcm import fmp_lcm

U = np.linspace(-4, 4, 9)


def test_alpha_value():
    assert PlantParams().alpha == pytest.approx(0.951229, abs=5e-7)
    assert PlantParams().delay_steps == 2


def test_plant_validation():
    with pytest.raises(ValueError):
        PlantParams(time_constant=0)
    with pytest.raises(ValueError):
        PlantParams(dead_time=1.5)


def test_free_decay():
    plant = PlantParams()
    y = 40.0
    for k in range(1, 30):
        y = plant_step(y, [0.0] * k, plant)
        assert y == pytest.approx(40 * plant.alpha ** k)


def test_constant_input_converges_monotonically():
    plant = PlantParams()
    c, y, ys = 7.5, 0.0, []
    for k in range(1, 600):
        y = plant_step(y, [c] * k, plant)
        ys.append(y)
    assert np.all(np.diff(ys) >= 0)
    assert abs(ys[-1] - c) < 1e-6 * c


def test_dead_time_delays_input():
    plant = PlantParams()
    assert plant_step(0.0, [5.0], plant) == 0.0
    assert plant_step(0.0, [5.0, 5.0], plant) == 0.0
    assert plant_step(0.0, [5.0, 5.0, 5.0], plant) == pytest.approx(5 * (1 - plant.alpha))


def test_fuzzify_grid_tie_and_clamp():
    np.testing.assert_array_equal(fuzzify(1.0, U).grades, np.eye(9)[5])
    np.testing.assert_array_equal(fuzzify(0.5, U).grades, np.eye(9)[4])
    np.testing.assert_array_equal(fuzzify(99.0, U).grades, np.eye(9)[8])
    np.testing.assert_array_equal(fuzzify(-99.0, U).grades, np.eye(9)[0])
    tri = fuzzify(0.0, U, "triangular", 2.0).grades
    np.testing.assert_allclose(tri[3:6], [0.5, 1, 0.5])
    with pytest.raises(ValueError):
        fuzzify(0.0, U, "gaussian")


def test_partition_and_table():
    sets = triangular_partition(U)
    assert sets.shape == (5, 9)
    np.testing.assert_allclose(sets.sum(axis=0), 1.0)
    table = default_rule_table()
    assert table[0, 0] == 0 and table[4, 4] == 4 and table[2, 2] == 2
    np.testing.assert_array_equal(table, table.T)


def _single_rule(backend):
    spike = np.eye(9)[6][None, :]
    out = np.clip(1 - np.abs(U - 2) / 2, 0, 1)[None, :]
    return ControllerConfig(U, U, U, spike, spike, out, [[0]], backend=backend), out[0]


@pytest.mark.parametrize("backend", ["rel:rc", "lcm:p3"])
def test_exact_match_returns_consequent_centroid(backend):
    cfg, out = _single_rule(backend)
    inc = infer_increment(cfg, U[6], U[6])
    assert not inc.stalled
    assert inc.du == pytest.approx(centroid(out, U))


def test_stall_when_nothing_fires():
    cfg, _ = _single_rule("rel:rc")
    inc = infer_increment(cfg, U[0], U[0])
    assert inc.stalled and inc.du == 0.0


def test_actuation_is_integrated_increment():
    cfg = ControllerConfig(rho=0.5)
    tr = run_closed_loop(PlantParams(), cfg, 40)
    np.testing.assert_allclose(tr.u, np.cumsum(0.5 * tr.du))
    np.testing.assert_allclose(tr.e, 40 - tr.y)


def test_tiny_gain_gives_free_response():
    plant = PlantParams()
    tr = run_closed_loop(plant, ControllerConfig(rho=1e-12), 50, y0=40.0)
    np.testing.assert_allclose(tr.y, 40 * plant.alpha ** np.arange(50), atol=1e-9)


def test_default_loop_settles_and_csv_is_stable():
    tr = run_closed_loop(PlantParams(), ControllerConfig(), 300)
    assert abs(tr.y[-1] - 40) < 2
    text = tr.to_csv()
    assert text.splitlines()[0] == "k,y,e,de,du,u"
    assert len(text.splitlines()) == 301
    assert text == run_closed_loop(PlantParams(), ControllerConfig(), 300).to_csv()


def test_runaway_gain_raises():
    with pytest.raises(SimulationError):
        run_closed_loop(PlantParams(), ControllerConfig(rho=1e12), 200)


def test_probe_classification():
    labels = {r.backend: r.classification for r in convergence_probe()}
    for kind in ("rs", "rg", "rss", "rsg", "rgs", "rgg"):
        assert labels[f"rel:{kind}"] == "non-converging"
    for kind in ("rc", "rp", "ra", "rm"):
        assert labels[f"rel:{kind}"] == "converging"
    assert labels["lcm:p3"] == "converging"


def test_sharp_g_probe_grades_are_one_or_consequent():
    cfg = ControllerConfig()
    a, b = cfg.error_sets[1], cfg.output_sets[1]
    for o in probe_outputs("rel:rg", a, b, cfg.error_universe):
        assert np.all((o == 1.0) | (o == b))


def test_rc_probe_tracks_each_matching_degree():
    cfg = ControllerConfig()
    a, b = cfg.error_sets[1], cfg.output_sets[1]
    outs = probe_outputs("rel:rc", a, b, cfg.error_universe)
    hs = {float(np.max(np.minimum(fuzzify(x, cfg.error_universe).grades, a)))
          for x in cfg.error_universe}
    below = {h for h in hs if h < b.max()}
    distinct = {tuple(np.round(o, 12)) for o in outs}
    assert len(distinct) >= len(below)


def test_lcm_distances_distinguish_inputs():
    universe = np.linspace(0, 1, 11)
    a = np.clip(universe ** 2, 0, 1)
    b = np.clip(1 - np.abs(universe - 0.5) * 2, 0, 1)
    dists = [fmp_lcm(a, fuzzify(x, universe).grades, b).distance for x in universe]
    assert len({round(d, 12) for d in dists}) == len(dists)


def test_config_from_dict():
    cfg = ControllerConfig.from_dict({
        "universes": {"error": {"min": -10, "max": 10, "points": 21}},
        "rho": 0.5, "backend": "lcm:p2"})
    assert cfg.error_universe.size == 21 and cfg.error_sets.shape == (5, 21)
    assert cfg.backend == "lcm:p2" and math.isclose(cfg.rho, 0.5)
    with pytest.raises(ValueError):
        ControllerConfig.from_dict({"backend": "cri:godel"})
    with pytest.raises(ValueError):
        ControllerConfig.from_dict({"table": [[0, 1], [1, 2]]})
