import math
import os
from pathlib import Path

import numpy as np
import pytest

import cues_sim

ROOT = Path(os.environ.get("CUES_SOURCE_DIR", Path(__file__).resolve().parents[2]))
SCENARIOS = ROOT / "scenarios"


def test_validate_fixture():
    info = cues_sim.validate(SCENARIOS / "calm_mission.json")
    assert info["mode"] == "search"
    assert info["objects"] == 1


def test_short_run_shapes():
    run = cues_sim.simulate(SCENARIOS / "transect_sand.json", duration=1.0)
    assert run.states.shape == (100, len(run.columns))
    assert run.columns[0] == "t" and "hex_x" in run.columns
    assert run.metrics["steps"] == 100
    assert np.all(np.diff(run.column("t")) > 0)


def test_transect_rate():
    run = cues_sim.simulate(SCENARIOS / "transect_sand.json", duration=600.0)
    assert run.metrics["coverage"]["area_per_hour_m2"] == pytest.approx(360.0, rel=0.01)


def test_seed_determinism(tmp_path):
    a = cues_sim.simulate(SCENARIOS / "loiter_pier.json", seed=4, duration=20.0, out=tmp_path / "a")
    b = cues_sim.read_run_dir(tmp_path / "a")
    assert np.array_equal(a.states, b.states, equal_nan=True)
    assert a.events == b.events
    c = cues_sim.simulate(SCENARIOS / "loiter_pier.json", seed=5, duration=20.0)
    assert not np.array_equal(a.column("est_x"), c.column("est_x"))


def test_scenario_error(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"run": {"seed": 1}, "mission": {"swath": -1}}')
    with pytest.raises(cues_sim.ScenarioError, match="mission.swath"):
        cues_sim.validate(bad)


def test_pure_functions():
    assert cues_sim.wrap_angle(3 * math.pi) == pytest.approx(math.pi)
    q = cues_sim.leg_ik([0.15, 0.02, -0.06])
    assert np.allclose(cues_sim.leg_fk(*q), [0.15, 0.02, -0.06], atol=1e-12)
    wp = cues_sim.lawnmower(0, 0, 20, 10, 5)
    assert len(wp) == 8
    assert cues_sim.swept_area([(0, 0), (10, 0)], 1.0) == pytest.approx(10.0)
