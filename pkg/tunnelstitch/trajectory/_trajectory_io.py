"""Reading and writing of trajectory files.

A trajectory file is UTF-8 text.
The first line is the header `tunnelstitch-trajectory v1`.
Every following line holds one frame::

    k r11 r12 r13 r21 r22 r23 r31 r32 r33 tx ty tz | r11 ... tz

The 12 numbers after the frame index are the ground truth pose, the optional 12 numbers after the `|` are the
planned pose.
Lines starting with `#` and empty lines are ignored.
All numbers are written with the shortest representation that reads back to the identical double.
"""
from pathlib import Path
from typing import List, Sequence, Union

import numpy as np

from tunnelstitch.geometry import Pose
from tunnelstitch.trajectory._config import FramePose
from tunnelstitch.utils.consts import PLANNED_POSE_SEPARATOR, TRAJECTORY_HEADER
from tunnelstitch.utils.exceptions import ParseError, ValidationError

PathLike = Union[str, Path]

_N_POSE_VALUES = 12


def _format_pose(pose: Pose) -> str:
    values = np.concatenate([pose.rotation.ravel(), pose.translation.ravel()])
    return " ".join(repr(float(v)) for v in values)


def save_trajectory(frames: Sequence[FramePose], path: PathLike):
    """Write a list of frame poses to a trajectory file.

    The parent directory needs to exist.
    """
    path = Path(path)
    if not path.parent.is_dir():
        raise FileNotFoundError(f"The directory {path.parent} does not exist.")
    lines = [TRAJECTORY_HEADER]
    for frame in frames:
        line = f"{int(frame.index)} {_format_pose(frame.pose)}"
        if frame.planned_pose is not None:
            line += f" {PLANNED_POSE_SEPARATOR} {_format_pose(frame.planned_pose)}"
        lines.append(line)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def _parse_pose(tokens: List[str], path: Path, line_number: int) -> Pose:
    if len(tokens) != _N_POSE_VALUES:
        raise ParseError(f"Expected {_N_POSE_VALUES} pose values, got {len(tokens)}.", path, line_number)
    try:
        values = np.array([float(t) for t in tokens])
    except ValueError as e:
        raise ParseError(f"Invalid number in pose: {e}", path, line_number) from e
    pose = Pose(R=values[:9].reshape(3, 3), t=values[9:])
    try:
        pose.validate()
    except ValidationError as e:
        raise ValidationError(f"{path}:{line_number}: {e}") from e
    return pose


def load_trajectory(path: PathLike) -> List[FramePose]:
    """Read a trajectory file.

    Frames without a planned pose use the ground truth pose as planned pose.

    Raises
    ------
    ParseError
        If the header is missing, a line is malformed or the frame indices are not 0, 1, 2, ...
    ValidationError
        If a rotation is not orthonormal with determinant +1

    """
    path = Path(path)
    lines = path.read_text(encoding="utf-8").splitlines()
    if not lines or lines[0].strip() != TRAJECTORY_HEADER:
        raise ParseError(f"The file does not start with the header '{TRAJECTORY_HEADER}'.", path, 1)
    frames = []
    for line_number, line in enumerate(lines[1:], start=2):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        ground_truth, *rest = line.split(PLANNED_POSE_SEPARATOR)
        if len(rest) > 1:
            raise ParseError(f"More than one '{PLANNED_POSE_SEPARATOR}' in line.", path, line_number)
        tokens = ground_truth.split()
        try:
            index = int(tokens[0])
        except (IndexError, ValueError) as e:
            raise ParseError("Each line needs to start with an integer frame index.", path, line_number) from e
        if index != len(frames):
            raise ParseError(f"Expected frame index {len(frames)}, got {index}.", path, line_number)
        pose = _parse_pose(tokens[1:], path, line_number)
        planned_pose = _parse_pose(rest[0].split(), path, line_number) if rest else pose
        frames.append(FramePose(index, pose, planned_pose))
    return frames
