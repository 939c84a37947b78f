"""Camera trajectories through the tunnel and their file format."""

from tunnelstitch.trajectory._config import FramePose, TrajectoryConfig, frames_for_rotations
from tunnelstitch.trajectory._generate import (
    SpiralTrajectory,
    StationaryTrajectory,
    draw_pose_noise,
    generate_spiral,
    generate_stationary,
    generate_trajectory,
)
from tunnelstitch.trajectory._trajectory_io import load_trajectory, save_trajectory

__all__ = [
    "FramePose",
    "SpiralTrajectory",
    "StationaryTrajectory",
    "TrajectoryConfig",
    "draw_pose_noise",
    "frames_for_rotations",
    "generate_spiral",
    "generate_stationary",
    "generate_trajectory",
    "load_trajectory",
    "save_trajectory",
]
