"""End-to-end smoke tests for the Python bindings."""

import json
import math

import pytest

import interlocksim as il

STRAIGHT5 = json.dumps(
    {"name": "s5", "tool_engaged": False,
     "program": [{"primitive": "straight", "cycles": 5}]}
)


def test_closed_form_angles():
    g = il.VehicleGeometry()
    wt = il.WeightTransferModel()
    assert math.degrees(il.alpha(g, il.AnchorSide.LEFT)) == pytest.approx(
        -20.99862474008509, abs=1e-12
    )
    assert math.degrees(il.beta(g, wt, il.AnchorSide.LEFT)) == pytest.approx(
        -31.83732941909568, abs=1e-12
    )
    assert math.degrees(
        il.cycle_turn_angle(g, wt, il.TurnDirection.LEFT)
    ) == pytest.approx(52.83595415918077, abs=1e-12)


def test_straight_run_summary():
    summary = il.run_simulation(program_json=STRAIGHT5)
    assert summary["net_advance_m"] == pytest.approx(5.0008, abs=1e-9)
    assert summary["duration_s"] == pytest.approx(349.6666666666667, abs=1e-9)
    assert summary["mean_power_w"] == pytest.approx(74.58531935176359, abs=1e-9)
    assert summary["config_hash"].startswith("0x")


def test_runs_are_deterministic():
    a = il.run_simulation(program_json=STRAIGHT5)
    b = il.run_simulation(program_json=STRAIGHT5)
    assert a == b


def test_integrator_matches_closed_form():
    g = il.VehicleGeometry()
    start = il.Pose()
    spike_y = -g.spike_half_spacing  # right spike
    end = il.integrate_anchored_motion(
        start, g.x_extended, spike_y, -g.stroke, steps=2000
    )
    assert end.heading == pytest.approx(
        il.alpha(g, il.AnchorSide.RIGHT), abs=1e-9
    )


def test_plan_goal_emits_program_json():
    program = json.loads(il.plan_goal("mission", row_length=4.5, rows=2))
    kinds = [step["primitive"] for step in program["program"]]
    assert kinds == ["straight", "turn_left", "straight"]
    assert program["program"][0]["cycles"] == 5
    assert program["program"][1]["cycles"] == 3
    assert program["tool_engaged"] is True


def test_calibration_recovers_weight_transfer():
    result = il.calibrate_config(
        per_cycle_deg=60.30003138780291, free=["wt_axial"], tol=1e-9
    )
    assert result["residual"] <= 1e-9
    config = json.loads(result["config_json"])
    assert config["weight_transfer"]["y_extended"] == pytest.approx(
        0.255544, abs=1e-4
    )


def test_fused_rmse_within_budget():
    assert il.fused_position_rmse(program_json=STRAIGHT5) <= 0.005


def test_error_mapping():
    with pytest.raises(ValueError):
        il.run_simulation(program_json='{"program": []}')
    with pytest.raises(ValueError):
        il.run_simulation(
            config_json='{"geometry": {"stroke": -1}}', program_json=STRAIGHT5
        )
    bad_soil = json.dumps({"soil": {"base_slip": 0.107}})
    assert il.run_simulation(bad_soil, STRAIGHT5)["net_advance_m"] > 0


def test_default_config_round_trips():
    config = json.loads(il.default_config_json())
    assert config["geometry"]["stroke"] == 1.12
    assert config["sensors"]["prism_rate_hz"] == 5.0
