"""Generation of the camera pose sequences."""
from typing import List, Optional, Tuple

import numpy as np
from tpcp import cf
from typing_extensions import Self

from tunnelstitch.base import BaseTrajectoryGenerator
from tunnelstitch.geometry import CylinderModel, Pose
from tunnelstitch.trajectory._config import FramePose, TrajectoryConfig
from tunnelstitch.utils.exceptions import TrajectoryError
from tunnelstitch.utils.rotations import small_angle_perturbation, yaw_matrix

#: Counter channels of the noise generator
_TRANSLATION_CHANNEL = 0
_ROTATION_CHANNEL = 1


def _noise_stream(seed: int, index: int, channel: int) -> np.random.Generator:
    # The lowest counter word is left free for the draws of a single stream
    return np.random.Generator(np.random.Philox(key=int(seed), counter=[0, int(index), int(channel), 0]))


def draw_pose_noise(
    seed: int, index: int, std_translation, std_rotation: float
) -> Tuple[np.ndarray, np.ndarray]:
    """Draw the pose jitter of a single frame.

    The noise is drawn from a counter based generator (Philox) keyed by the seed.
    Every frame and every channel (translation, rotation) uses its own counter, so the noise of a frame does not
    depend on the order in which frames are generated.

    Parameters
    ----------
    seed
        The key of the generator
    index
        The frame index
    std_translation
        Standard deviations of the position jitter along x, y, z in m
    std_rotation
        Standard deviation of the rotation jitter around each axis in rad

    Returns
    -------
    delta_t
        The position offset in m
    delta_r
        The rotation matrix of the orientation jitter (x, then y, then z)

    """
    std_translation = np.asarray(std_translation, dtype=float)
    delta_t = _noise_stream(seed, index, _TRANSLATION_CHANNEL).standard_normal(3) * std_translation
    angles = _noise_stream(seed, index, _ROTATION_CHANNEL).standard_normal(3) * std_rotation
    return delta_t, small_angle_perturbation(angles)


def generate_stationary(yaw_step: float, n: int) -> List[FramePose]:
    """Generate a camera that stays at the tunnel axis and rotates by `yaw_step` per frame.

    Frame `k` has the rotation `R_y(k * yaw_step)` and no translation.
    The planned pose is the pose itself.

    Examples
    --------
    >>> frames = generate_stationary(np.deg2rad(30), 12)
    >>> len(frames)
    12

    """
    if int(n) != n or n < 1:
        raise ValueError(f"The number of frames must be a positive integer. Got {n}.")
    frames = []
    for k in range(int(n)):
        pose = Pose(R=yaw_matrix(yaw_step * k), t=np.zeros(3))
        frames.append(FramePose(k, pose, pose))
    return frames


def _planned_spiral(cfg: TrajectoryConfig) -> List[Pose]:
    initial_t = np.asarray(cfg.initial_t, dtype=float)
    step = np.asarray(cfg.translation_step, dtype=float)
    return [Pose(R=yaw_matrix(cfg.yaw_step * k), t=initial_t + k * step) for k in range(int(cfg.n_frames))]


def generate_spiral(cfg: TrajectoryConfig, radius: Optional[float] = None) -> List[FramePose]:
    """Generate a camera that rotates and moves along the tunnel with optional gaussian jitter.

    The planned pose of frame `k` is `(R_y(k * yaw_step), initial_t + k * translation_step)`.
    The ground truth pose adds the position jitter in the world frame and composes the rotation jitter onto the
    planned rotation (`R = R_planned @ R_noise`).

    Parameters
    ----------
    cfg
        The trajectory parameters. The mode is ignored.
    radius
        If provided, all ground truth positions are checked to lie strictly inside a tunnel with this radius.

    Raises
    ------
    TrajectoryError
        If any jittered camera center leaves the tunnel. The error lists all offending frames.

    """
    cfg.validate()
    planned = _planned_spiral(cfg)
    frames = []
    acc_t = np.zeros(3)
    acc_r = np.eye(3)
    for k, planned_pose in enumerate(planned):
        if not cfg.has_noise:
            frames.append(FramePose(k, planned_pose, planned_pose))
            continue
        delta_t, delta_r = draw_pose_noise(cfg.seed, k, cfg.noise_std_translation, cfg.noise_std_rotation)
        if cfg.accumulate_noise:
            acc_t = acc_t + delta_t
            acc_r = acc_r @ delta_r
            delta_t, delta_r = acc_t, acc_r
        pose = Pose(R=planned_pose.rotation @ delta_r, t=planned_pose.translation + delta_t)
        frames.append(FramePose(k, pose, planned_pose))

    if radius is not None:
        outside = [f.index for f in frames if not f.pose.translation[0] ** 2 + f.pose.translation[2] ** 2 < radius**2]
        if outside:
            raise TrajectoryError(
                f"{len(outside)} camera position(s) lie on or outside the tunnel of radius {radius}: frames {outside}",
                frames=outside,
            )
    return frames


def generate_trajectory(cfg: TrajectoryConfig, radius: Optional[float] = None) -> List[FramePose]:
    """Generate the trajectory described by `cfg.mode`."""
    cfg.validate()
    if cfg.mode == "stationary":
        return generate_stationary(cfg.yaw_step, cfg.n_frames)
    return generate_spiral(cfg, radius=radius)


class StationaryTrajectory(BaseTrajectoryGenerator):
    """A camera at the tunnel center that rotates about the tunnel axis.

    Parameters
    ----------
    yaw_step
        Rotation per frame in rad
    n_frames
        Number of frames

    Attributes
    ----------
    frames_
        The list of :class:`~tunnelstitch.trajectory.FramePose`

    Examples
    --------
    >>> traj = StationaryTrajectory(yaw_step=np.deg2rad(30), n_frames=12).generate()
    >>> traj.frames_[6].pose.R.round(12)
    array([[-1.,  0.,  0.],
           [ 0.,  1.,  0.],
           [-0.,  0., -1.]])

    """

    yaw_step: float
    n_frames: int

    frames_: List[FramePose]

    def __init__(self, yaw_step: float = np.deg2rad(30.0), n_frames: int = 12):
        self.yaw_step = yaw_step
        self.n_frames = n_frames

    def generate(self, **_) -> Self:
        """Generate the poses.

        Returns
        -------
        self
            The class instance with all result attributes populated

        """
        self.frames_ = generate_stationary(self.yaw_step, self.n_frames)
        return self


class SpiralTrajectory(BaseTrajectoryGenerator):
    """A camera that rotates and moves along the tunnel, optionally with gaussian jitter.

    Parameters
    ----------
    config
        The trajectory parameters. The mode is ignored.
    cylinder
        The tunnel. All jittered camera centers must lie inside.

    Attributes
    ----------
    frames_
        The list of :class:`~tunnelstitch.trajectory.FramePose`

    See Also
    --------
    tunnelstitch.trajectory.generate_spiral: The underlying function

    """

    config: TrajectoryConfig
    cylinder: CylinderModel

    frames_: List[FramePose]

    def __init__(
        self,
        config: TrajectoryConfig = cf(TrajectoryConfig(mode="spiral", yaw_step=0.524, n_frames=120)),
        cylinder: CylinderModel = cf(CylinderModel()),
    ):
        self.config = config
        self.cylinder = cylinder

    def generate(self, **_) -> Self:
        """Generate the poses.

        Returns
        -------
        self
            The class instance with all result attributes populated

        """
        self.cylinder.validate()
        self.frames_ = generate_spiral(self.config, radius=self.cylinder.radius)
        return self
