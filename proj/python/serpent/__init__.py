"""Waypoint tracking for a sidewinding snake robot."""

from ._serpent import (
    Scenario,
    SerpentError,
    blend_weight,
    error_stats,
    forward_kinematics,
    load_scenario,
    modify_amplitudes,
    parse_scenario,
    run,
)

__all__ = [
    "Scenario",
    "SerpentError",
    "blend_weight",
    "error_stats",
    "forward_kinematics",
    "load_scenario",
    "modify_amplitudes",
    "parse_scenario",
    "run",
]
