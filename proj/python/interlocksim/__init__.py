"""Push-pull interlock drive simulator: closed-form kinematics, cycle
simulation, planning, calibration, and sensor fusion."""

from ._core import (
    AnchorSide,
    ConfigError,
    Pose,
    SimulationError,
    SoilModel,
    SpikeMode,
    TurnDirection,
    VehicleGeometry,
    WeightTransferModel,
    alpha,
    beta,
    calibrate_config,
    cycle_turn_angle,
    default_config_json,
    effective_slip,
    fused_position_rmse,
    holding_force,
    integrate_anchored_motion,
    passive_penetration_depth,
    plan_goal,
    run_simulation,
    simulate_to_files,
    straight_cycle_advance,
)

__all__ = [
    "AnchorSide",
    "ConfigError",
    "Pose",
    "SimulationError",
    "SoilModel",
    "SpikeMode",
    "TurnDirection",
    "VehicleGeometry",
    "WeightTransferModel",
    "alpha",
    "beta",
    "calibrate_config",
    "cycle_turn_angle",
    "default_config_json",
    "effective_slip",
    "fused_position_rmse",
    "holding_force",
    "integrate_anchored_motion",
    "passive_penetration_depth",
    "plan_goal",
    "run_simulation",
    "simulate_to_files",
    "straight_cycle_advance",
]
