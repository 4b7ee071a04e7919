import math
import os
from pathlib import Path

import numpy as np
import pytest

import serpent

SCENARIOS = Path(os.environ.get("SERPENT_SCENARIO_DIR", Path(__file__).resolve().parents[2] / "scenarios"))


def test_straight_chain_lies_along_minus_x():
    out = serpent.forward_kinematics([0, 0, 0], [0, 0, 0, 1], np.zeros(11))
    pos = out["positions"]
    assert pos.shape == (13, 3)
    assert pos[1, 0] == pytest.approx(-0.1565)
    assert pos[-1, 0] == pytest.approx(-0.1565 - 11 * 0.1230)
    assert len(out["frames"]) == 13
    assert np.allclose(out["frames"][0], np.eye(4))


def test_bad_quaternion_raises():
    with pytest.raises(serpent.SerpentError):
        serpent.forward_kinematics([0, 0, 0], [0, 0, 0, 2], np.zeros(11))
    with pytest.raises(ValueError):
        serpent.forward_kinematics([0, 0, 0], [0, 0, 0, 1], np.full(11, 2.0))


def test_blend_and_steering():
    assert serpent.blend_weight(0.0) == 1.0
    assert serpent.blend_weight(0.75) == 0.5
    assert serpent.blend_weight(2.0) == 0.0
    out = serpent.modify_amplitudes(np.full(11, math.radians(45)), math.radians(5))
    assert out[1] == pytest.approx(math.radians(55))
    assert out[9] == pytest.approx(math.radians(35))


def test_error_stats():
    r = serpent.error_stats([0.03, 0.04])
    assert r["mean"] == pytest.approx(0.035)
    assert r["rmse"] == pytest.approx(math.sqrt(0.00125))
    assert r["max"] == 0.04


def test_scenario_runs_and_converges():
    sc = serpent.load_scenario(str(SCENARIOS / "single_waypoint.cfg"))
    out = serpent.run(sc)
    assert out["converged"]
    assert out["distance"][-1] <= 0.2
    assert len(out["t"]) == len(out["x"])
    assert np.all(np.diff(out["t"]) > 0)
    again = serpent.run(sc)
    assert np.array_equal(out["x"], again["x"])


def test_parse_errors_carry_the_line():
    with pytest.raises(ValueError, match=":2: duplicate key 'seed'"):
        serpent.parse_scenario("seed = 1\nseed = 2\n[waypoints]\nwp1 = 0, 0, 0\n")
