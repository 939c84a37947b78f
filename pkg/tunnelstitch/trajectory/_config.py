"""Parameters of a camera trajectory."""
from typing import NamedTuple, Tuple

import numpy as np
from typing_extensions import Literal, Self

from tunnelstitch.base import BaseParameters
from tunnelstitch.geometry import Pose
from tunnelstitch.utils.consts import TRAJECTORY_MODES
from tunnelstitch.utils.exceptions import ValidationError

Vector = Tuple[float, float, float]


class FramePose(NamedTuple):
    """The pose of a single frame of a trajectory.

    Parameters
    ----------
    index
        Frame number, starting at 0
    pose
        The ground truth pose the frame was captured with
    planned_pose
        The noise free pose the frame was planned for

    """

    index: int
    pose: Pose
    planned_pose: Pose


class TrajectoryConfig(BaseParameters):
    """All parameters needed to generate a camera trajectory.

    Parameters
    ----------
    mode
        "stationary": the camera stays at the tunnel axis and rotates by `yaw_step` per frame.
        "spiral": the camera rotates by `yaw_step` and moves by `translation_step` per frame.
    n_frames
        The number of frames
    yaw_step
        Rotation about the tunnel axis per frame in rad
    translation_step
        Movement per frame in m (world frame)
    initial_t
        Camera position of the first frame in m
    noise_std_translation
        Standard deviation of the gaussian jitter added to the position along x, y and z in m
    noise_std_rotation
        Standard deviation of the gaussian jitter around each of the three axes in rad
    seed
        Key of the counter based random generator.
        The noise of a frame only depends on the seed and the frame index.
    accumulate_noise
        If True, the jitter of each frame is added on top of the jitter of all previous frames (random walk).
        Otherwise, each frame is perturbed independently around its planned pose.

    """

    def __init__(
        self,
        mode: Literal["stationary", "spiral"] = "stationary",
        n_frames: int = 12,
        yaw_step: float = np.deg2rad(30.0),
        translation_step: Vector = (0.0, 0.10, 0.0),
        initial_t: Vector = (0.0, 0.0, 0.0),
        noise_std_translation: Vector = (0.0, 0.0, 0.0),
        noise_std_rotation: float = 0.0,
        seed: int = 0,
        accumulate_noise: bool = False,
    ):
        self.mode = mode
        self.n_frames = n_frames
        self.yaw_step = yaw_step
        self.translation_step = translation_step
        self.initial_t = initial_t
        self.noise_std_translation = noise_std_translation
        self.noise_std_rotation = noise_std_rotation
        self.seed = seed
        self.accumulate_noise = accumulate_noise

    @property
    def has_noise(self) -> bool:
        """True if any noise standard deviation is larger than 0."""
        return bool(np.any(np.asarray(self.noise_std_translation) > 0) or self.noise_std_rotation > 0)

    def validate(self) -> Self:
        """Check the mode, a positive frame count, finite steps and non-negative noise."""
        if self.mode not in TRAJECTORY_MODES:
            raise ValidationError(f"The trajectory mode must be one of {TRAJECTORY_MODES}. Got {self.mode}.")
        if int(self.n_frames) != self.n_frames or self.n_frames < 1:
            raise ValidationError(f"n_frames must be a positive integer. Got {self.n_frames}.")
        if not np.isfinite(self.yaw_step):
            raise ValidationError(f"yaw_step must be finite. Got {self.yaw_step}.")
        for name in ("translation_step", "initial_t", "noise_std_translation"):
            value = np.asarray(getattr(self, name), dtype=float)
            if value.shape != (3,) or not np.all(np.isfinite(value)):
                raise ValidationError(f"{name} must be a finite 3-vector. Got {getattr(self, name)}.")
        if np.any(np.asarray(self.noise_std_translation) < 0) or not self.noise_std_rotation >= 0:
            raise ValidationError("The noise standard deviations must not be negative.")
        if int(self.seed) != self.seed or not 0 <= self.seed < 2**64:
            raise ValidationError(f"The seed must be an unsigned 64 bit integer. Got {self.seed}.")
        return self


def frames_for_rotations(yaw_step: float, rotations: float) -> int:
    """Number of frames needed to complete the given number of full rotations.

    Examples
    --------
    >>> frames_for_rotations(0.524, 10)
    120

    """
    return int(np.ceil(rotations * 2 * np.pi / abs(yaw_step)))
