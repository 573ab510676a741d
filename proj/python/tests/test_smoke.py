import json
import math

import pytest

import ffvc


def test_circle_points_and_profile():
    pts = ffvc.points(5, "circle:1")
    assert sorted(pts) == [(0, 1), (0, 4), (1, 0), (4, 0)]
    prof = ffvc.intersection_profile(11, "circle:1")
    assert prof["max"] <= 2


def test_salem_and_character_sums():
    r = ffvc.salem_check(7, "circle:1")
    assert r["pass"]
    assert abs(abs(ffvc.gauss_sum(13, 2)) - math.sqrt(13)) < 1e-9
    assert abs(ffvc.kloosterman(13, 1, 1)) <= 2 * math.sqrt(13)


def test_shatter_and_verify():
    out = ffvc.shatter(11, "sym-parabola", 4)
    assert out["status"] == "Found"
    w = out["witness"]
    centers = [tuple(w["witnesses"][str(mask)]) for mask in range(16)]
    assert ffvc.verify_witness(11, "sym-parabola", [tuple(x) for x in w["points"]], centers)
    assert ffvc.shatter(11, "polygraph:0,0,1", 3)["status"] == "ExhaustedNo"
    assert ffvc.vc_bounds(11, "circle:1", 4)["exact"] == 3


def test_presets_and_random():
    ok, _ = ffvc.reproduce_f11_table()
    assert ok
    assert ffvc.reproduce_x_tuple(17)[0]
    a = ffvc.random_trials(11, seed=3, trials=5)
    b = ffvc.random_trials(11, seed=3, trials=5)
    assert a["trial_seeds"] == b["trial_seeds"]
    assert ffvc.sample_subset(7, 5, 1) == ffvc.sample_subset(7, 5, 1)


def test_cli_and_errors():
    code, out, _ = ffvc.run_cli(["edge-count", "-p", "5", "--curve", "circle:1", "--format", "json"])
    assert code == 0
    assert json.loads(out)["result"]["nu"] == 100
    code, _, err = ffvc.run_cli(["salem-check", "-p", "4", "--curve", "circle:1"])
    assert code == 2 and "-p" in err
    with pytest.raises(ffvc.FfvcError):
        ffvc.points(9, "circle:1")
