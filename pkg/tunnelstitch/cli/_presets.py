"""Experiment presets for the three tunnel scenarios and the short spiral variant."""
from typing import Dict, Tuple

import numpy as np

from tunnelstitch.cli._config import ExperimentConfig, apply_overrides, format_value
from tunnelstitch.trajectory import frames_for_rotations

#: Rotation per frame of the spiral scenarios in rad
SPIRAL_YAW_STEP = 0.524

_STATIONARY_CENTER = (
    "trajectory.mode=stationary",
    "trajectory.n_frames=12",
    f"trajectory.yaw_step={format_value(np.deg2rad(30.0))}",
    "mode=corrected",
)

# A stationary rotation away from the tunnel axis is a spiral without forward motion
_STATIONARY_OFF_CENTER = (
    "trajectory.mode=spiral",
    "trajectory.n_frames=12",
    f"trajectory.yaw_step={format_value(np.deg2rad(30.0))}",
    "trajectory.translation_step=(0.0, 0.0, 0.0)",
    "trajectory.initial_t=(0.5, 0.0, 0.5)",
    "mode=corrected",
)


def _jittered_spiral(rotations: int) -> Tuple[str, ...]:
    return (
        "trajectory.mode=spiral",
        f"trajectory.n_frames={frames_for_rotations(SPIRAL_YAW_STEP, rotations)}",
        f"trajectory.yaw_step={SPIRAL_YAW_STEP!r}",
        "trajectory.translation_step=(0.0, 0.1, 0.0)",
        "trajectory.initial_t=(0.0, 0.0, 0.0)",
        "trajectory.noise_std_translation=(0.02, 0.02, 0.03)",
        f"trajectory.noise_std_rotation={format_value(np.deg2rad(2.0))}",
        "trajectory.seed=0",
        "mode=corrected",
    )


#: Overrides of each preset on top of the default config
PRESETS: Dict[str, Tuple[str, ...]] = {
    "fig5": _STATIONARY_CENTER,
    "fig7": _STATIONARY_OFF_CENTER,
    "fig8": _jittered_spiral(10),
    "fig8_four": _jittered_spiral(4),
}


def preset_config(name: str) -> ExperimentConfig:
    """Return the config of a named preset.

    Examples
    --------
    >>> preset_config("fig8").trajectory.n_frames
    120

    """
    if name not in PRESETS:
        raise KeyError(f"Unknown preset '{name}'. Available presets: {sorted(PRESETS)}.")
    return apply_overrides(ExperimentConfig(), PRESETS[name])
