"""Parameter objects and small value types describing the camera and the tunnel."""
from typing import NamedTuple, Union

import numpy as np
from tpcp import cf
from typing_extensions import Self

from tunnelstitch.base import BaseParameters
from tunnelstitch.utils.consts import ORTHONORMAL_TOL
from tunnelstitch.utils.datatype_helper import is_rotation_matrix, is_translation
from tunnelstitch.utils.exceptions import ValidationError
from tunnelstitch.utils.rotations import yaw_matrix

ArrayOrFloat = Union[float, np.ndarray]


class CylinderPoint(NamedTuple):
    """A point on the tunnel wall given by azimuth (rad, [0, 2pi)) and height (world y in m)."""

    theta: ArrayOrFloat
    height: ArrayOrFloat


class PixelCoord(NamedTuple):
    """A continuous pixel coordinate (u = column, v = row)."""

    u: ArrayOrFloat
    v: ArrayOrFloat


class SolveCoefficients(NamedTuple):
    """The world frame direction of a pixel ray, i.e. R applied to the normalized camera ray."""

    c1: ArrayOrFloat
    c2: ArrayOrFloat
    c3: ArrayOrFloat


class CameraIntrinsics(BaseParameters):
    """The intrinsic parameters of an ideal pinhole camera.

    Pixel centers are at integer coordinates, `u` grows with the camera x-axis and `v` with the camera y-axis.

    Parameters
    ----------
    f
        Focal length in pixels
    cx
        Principal point (column) in pixels.
        If None, the image center `(width - 1) / 2` is used.
    cy
        Principal point (row) in pixels.
        If None, the image center `(height - 1) / 2` is used.
    width
        Image width in pixels
    height
        Image height in pixels

    """

    def __init__(self, f: float = 320.0, cx=None, cy=None, width: int = 640, height: int = 480):
        self.f = f
        self.cx = cx
        self.cy = cy
        self.width = width
        self.height = height

    @classmethod
    def from_hfov(cls, hfov: float, width: int = 640, height: int = 480) -> Self:
        """Create centered intrinsics from a horizontal field of view in rad."""
        if not 0 < hfov < np.pi:
            raise ValidationError(f"The horizontal field of view must be in (0, pi). Got {hfov}.")
        return cls(f=float(width / 2 / np.tan(hfov / 2)), width=width, height=height)

    @property
    def principal_point(self):
        """The principal point with the image center filled in for unset values."""
        cx = (self.width - 1) / 2 if self.cx is None else self.cx
        cy = (self.height - 1) / 2 if self.cy is None else self.cy
        return float(cx), float(cy)

    @property
    def matrix(self) -> np.ndarray:
        """The 3x3 camera matrix K."""
        cx, cy = self.principal_point
        return np.array([[self.f, 0.0, cx], [0.0, self.f, cy], [0.0, 0.0, 1.0]])

    def validate(self) -> Self:
        """Check f > 0, a non-empty image and a principal point inside the image."""
        if not (np.isfinite(self.f) and self.f > 0):
            raise ValidationError(f"The focal length must be positive. Got {self.f}.")
        if int(self.width) != self.width or int(self.height) != self.height or self.width < 1 or self.height < 1:
            raise ValidationError(f"The image size must be positive integers. Got {self.width}x{self.height}.")
        cx, cy = self.principal_point
        if not (0 <= cx < self.width and 0 <= cy < self.height):
            raise ValidationError(
                f"The principal point ({cx}, {cy}) must lie inside the image of size {self.width}x{self.height}."
            )
        return self


class CylinderModel(BaseParameters):
    """The tunnel: a cylinder of radius `radius` (m) around the world y-axis.

    Parameters
    ----------
    radius
        The tunnel radius in m

    """

    def __init__(self, radius: float = 3.0):
        self.radius = radius

    def validate(self) -> Self:
        """Check radius > 0."""
        if not (np.isfinite(self.radius) and self.radius > 0):
            raise ValidationError(f"The cylinder radius must be positive. Got {self.radius}.")
        return self

    def contains(self, t: np.ndarray) -> bool:
        """Check if a point lies strictly inside the tunnel."""
        t = np.asarray(t, dtype=float)
        return bool(t[0] ** 2 + t[2] ** 2 < self.radius**2)


class Pose(BaseParameters):
    """A rigid transformation from the camera frame into the world frame (X_w = R X_c + t).

    Parameters
    ----------
    R
        The 3x3 orthonormal rotation matrix
    t
        The translation in m

    """

    def __init__(self, R: np.ndarray = cf(np.eye(3)), t: np.ndarray = cf(np.zeros(3))):  # noqa: N803
        self.R = R
        self.t = t

    @classmethod
    def from_yaw(cls, yaw: float, t=(0.0, 0.0, 0.0)) -> Self:
        """Create a pose rotated by `yaw` (rad) about the tunnel axis."""
        return cls(R=yaw_matrix(yaw), t=np.array(t, dtype=float))

    @property
    def rotation(self) -> np.ndarray:
        """R as float array."""
        return np.asarray(self.R, dtype=float)

    @property
    def translation(self) -> np.ndarray:
        """t as float array."""
        return np.asarray(self.t, dtype=float)

    def camera_to_world(self, points: np.ndarray) -> np.ndarray:
        """Transform points with shape (..., 3) from the camera frame into the world frame."""
        return np.asarray(points, dtype=float) @ self.rotation.T + self.translation

    def world_to_camera(self, points: np.ndarray) -> np.ndarray:
        """Transform points with shape (..., 3) from the world frame into the camera frame."""
        return (np.asarray(points, dtype=float) - self.translation) @ self.rotation

    def validate(self, tol: float = ORTHONORMAL_TOL) -> Self:
        """Check that R is orthonormal with det +1 and t is a finite 3-vector."""
        is_rotation_matrix(np.asarray(self.R, dtype=float), tol=tol, raise_exception=True)
        is_translation(np.asarray(self.t, dtype=float), raise_exception=True)
        return self

    def is_identical(self, other: "Pose") -> bool:
        """Check for elementwise exact equality with another pose."""
        return np.array_equal(self.rotation, other.rotation) and np.array_equal(self.translation, other.translation)
