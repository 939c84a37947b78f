"""Closed form mapping between image pixels and points on the tunnel wall.

All functions accept scalars or arrays of equal shape and are vectorized over them.
Scalar inputs return python floats.

Conventions:

- A point on the wall with azimuth `theta` and height `y` is `(r sin(theta), y, r cos(theta))` in world coordinates.
  `theta = 0` is the +z direction, `theta = pi / 2` the +x direction.
- The camera ray of pixel `(u, v)` is `((u - cx) / f, (v - cy) / f, 1)`, so the camera frame point at depth `z_c` is
  `z_c` times this ray.
- Camera poses map camera into world coordinates: `X_w = R X_c + t`.
"""
from typing import Optional, Tuple, Union

import numpy as np
from typing_extensions import Literal

from tunnelstitch.geometry._models import (
    ArrayOrFloat,
    CameraIntrinsics,
    CylinderModel,
    CylinderPoint,
    PixelCoord,
    Pose,
    SolveCoefficients,
)
from tunnelstitch.utils.exceptions import AxisParallelRayError, CameraOutsideTunnelError, UndefinedAzimuthError

OnInvalid = Literal["raise", "nan"]

_TWO_PI = 2 * np.pi


def _maybe_scalar(value: np.ndarray) -> ArrayOrFloat:
    if np.ndim(value) == 0:
        return float(value)
    return value


def _check_on_invalid(on_invalid: str):
    if on_invalid not in ("raise", "nan"):
        raise ValueError(f'`on_invalid` must be one of ("raise", "nan"). Got {on_invalid}.')


def wrap_to_2pi(theta: ArrayOrFloat) -> ArrayOrFloat:
    """Normalize angles to [0, 2pi).

    Examples
    --------
    >>> wrap_to_2pi(-np.pi / 2) == 1.5 * np.pi
    True
    >>> wrap_to_2pi(-1e-17)
    0.0

    """
    wrapped = np.mod(theta, _TWO_PI)
    # np.mod can round tiny negative values up to exactly 2pi
    wrapped = np.where(wrapped >= _TWO_PI, 0.0, wrapped)
    return _maybe_scalar(wrapped)


def pixel_to_camera_ray(intr: CameraIntrinsics, p: Union[PixelCoord, Tuple]) -> np.ndarray:
    """Return the camera frame ray of a pixel, normalized to a z-component of exactly 1.

    Parameters
    ----------
    intr
        The camera intrinsics
    p
        The pixel coordinate(s)

    Returns
    -------
    ray
        Array with shape (..., 3)

    Examples
    --------
    >>> intr = CameraIntrinsics(f=100, cx=320, cy=240)
    >>> pixel_to_camera_ray(intr, PixelCoord(370, 190))
    array([ 0.5, -0.5,  1. ])

    """
    cx, cy = intr.principal_point
    u, v = np.broadcast_arrays(np.asarray(p[0], dtype=float), np.asarray(p[1], dtype=float))
    return np.stack([(u - cx) / intr.f, (v - cy) / intr.f, np.ones_like(u)], axis=-1)


def project_unit_cylinder(x: np.ndarray, on_invalid: OnInvalid = "raise") -> CylinderPoint:
    """Project 3D point(s) onto the unit cylinder around the y-axis.

    The point is divided by its distance to the y-axis, the azimuth is taken from the x and z component.

    Parameters
    ----------
    x
        Point(s) with shape (..., 3)
    on_invalid
        What to do with points on the axis (x = z = 0).
        "raise" raises an :class:`~tunnelstitch.utils.exceptions.UndefinedAzimuthError`, "nan" returns NaN for
        these points.

    Returns
    -------
    CylinderPoint
        The azimuth in [0, 2pi) and the height on the unit cylinder

    Examples
    --------
    >>> project_unit_cylinder(np.array([0, -1.0, -4.0]))
    CylinderPoint(theta=3.141592653589793, height=-0.25)

    """
    _check_on_invalid(on_invalid)
    x = np.asarray(x, dtype=float)
    rho = np.hypot(x[..., 0], x[..., 2])
    invalid = rho == 0
    if on_invalid == "raise" and np.any(invalid):
        raise UndefinedAzimuthError("The azimuth of a point on the cylinder axis (x = z = 0) is undefined.")
    with np.errstate(divide="ignore", invalid="ignore"):
        theta = np.where(invalid, np.nan, wrap_to_2pi(np.arctan2(x[..., 0], x[..., 2])))
        height = np.where(invalid, np.nan, x[..., 1] / rho)
    return CylinderPoint(_maybe_scalar(theta), _maybe_scalar(height))


def unwrap_to_plane(theta: ArrayOrFloat, h: ArrayOrFloat, intr: CameraIntrinsics) -> PixelCoord:
    """Map a unit cylinder point to the planar unwrapped image: (f theta + cx, f h + cy).

    Negative angles are allowed, which is what a single image centered around theta = 0 needs.

    Examples
    --------
    >>> unwrap_to_plane(0.5, 0.2, CameraIntrinsics(f=100, cx=320, cy=240))
    PixelCoord(u=370.0, v=260.0)

    """
    cx, cy = intr.principal_point
    u = intr.f * np.asarray(theta, dtype=float) + cx
    v = intr.f * np.asarray(h, dtype=float) + cy
    return PixelCoord(_maybe_scalar(u), _maybe_scalar(v))


def solve_coefficients(intr: CameraIntrinsics, pose: Pose, p: Union[PixelCoord, Tuple]) -> SolveCoefficients:
    """Rotate the normalized camera ray of a pixel into the world frame.

    Examples
    --------
    >>> c = solve_coefficients(CameraIntrinsics(f=100, cx=320, cy=240), Pose(), PixelCoord(420, 240))
    >>> tuple(round(v, 12) for v in c)
    (1.0, 0.0, 1.0)

    """
    ray = pixel_to_camera_ray(intr, p)
    c = ray @ pose.rotation.T
    return SolveCoefficients(_maybe_scalar(c[..., 0]), _maybe_scalar(c[..., 1]), _maybe_scalar(c[..., 2]))


def _check_camera_inside(pose: Pose, cyl: CylinderModel):
    t = pose.translation
    if not t[0] ** 2 + t[2] ** 2 < cyl.radius**2:
        raise CameraOutsideTunnelError(
            f"The camera center ({t[0]}, {t[1]}, {t[2]}) is on or outside the tunnel wall of radius {cyl.radius}."
        )


def solve_depth(
    c: SolveCoefficients, pose: Pose, cyl: CylinderModel, on_invalid: OnInvalid = "raise"
) -> ArrayOrFloat:
    """Solve for the camera frame depth z_c at which the ray hits the tunnel wall.

    The intersection satisfies `(c1 z_c + t_x)^2 + (c3 z_c + t_z)^2 = r^2`, a quadratic in z_c.
    Because the camera is inside the tunnel, the two roots have opposite signs and the positive one is returned.
    It is evaluated in a cancellation free form.

    Parameters
    ----------
    c
        The world frame ray coefficients from :func:`solve_coefficients`
    pose
        The camera pose
    cyl
        The tunnel
    on_invalid
        What to do with rays parallel to the tunnel axis (c1 = c3 = 0).
        "raise" raises an :class:`~tunnelstitch.utils.exceptions.AxisParallelRayError`, "nan" returns NaN.
        A camera outside the tunnel always raises a
        :class:`~tunnelstitch.utils.exceptions.CameraOutsideTunnelError`.

    Examples
    --------
    >>> solve_depth(SolveCoefficients(0.0, 0.0, 1.0), Pose(), CylinderModel(radius=3))
    3.0

    """
    _check_on_invalid(on_invalid)
    _check_camera_inside(pose, cyl)
    t = pose.translation
    c1 = np.asarray(c.c1, dtype=float)
    c3 = np.asarray(c.c3, dtype=float)
    a = c1**2 + c3**2
    invalid = a == 0
    if on_invalid == "raise" and np.any(invalid):
        raise AxisParallelRayError("A ray parallel to the tunnel axis (c1 = c3 = 0) never hits the wall.")
    half_b = c1 * t[0] + c3 * t[2]
    # Constant term is negative for a camera inside the tunnel
    const = t[0] ** 2 + t[2] ** 2 - cyl.radius**2
    sqrt_disc = np.sqrt(half_b**2 - a * const)
    with np.errstate(divide="ignore", invalid="ignore"):
        z_c = np.where(half_b <= 0, (sqrt_disc - half_b) / a, -const / (half_b + sqrt_disc))
    z_c = np.where(invalid, np.nan, z_c)
    return _maybe_scalar(z_c)


def solve_theta(c: SolveCoefficients, z_c: ArrayOrFloat, pose: Pose, cyl: CylinderModel) -> ArrayOrFloat:
    """Recover the azimuth of the wall point from the solved depth.

    The azimuth is the two-argument arctangent of the world x and z coordinate of the intersection, normalized to
    [0, 2pi).
    `cyl` is accepted for symmetry with the other solver steps; the radius cancels out of the arctangent.
    """
    t = pose.translation
    x_w = np.asarray(c.c1, dtype=float) * z_c + t[0]
    z_w = np.asarray(c.c3, dtype=float) * z_c + t[2]
    return wrap_to_2pi(np.arctan2(x_w, z_w))


def solve_height(c: SolveCoefficients, z_c: ArrayOrFloat, pose: Pose) -> ArrayOrFloat:
    """Recover the world height (y) of the wall point: c2 z_c + t_y."""
    return _maybe_scalar(np.asarray(c.c2, dtype=float) * z_c + pose.translation[1])


def pixel_to_cylinder(
    intr: CameraIntrinsics,
    pose: Pose,
    cyl: CylinderModel,
    p: Union[PixelCoord, Tuple],
    on_invalid: OnInvalid = "raise",
) -> CylinderPoint:
    """Find the point on the tunnel wall seen by a pixel.

    Parameters
    ----------
    intr
        The camera intrinsics
    pose
        The camera pose
    cyl
        The tunnel
    p
        The pixel coordinate(s)
    on_invalid
        See :func:`solve_depth`.
        With "nan", invalid pixels have NaN azimuth and height.

    Examples
    --------
    >>> intr = CameraIntrinsics(f=100, cx=320, cy=240)
    >>> pixel_to_cylinder(intr, Pose.from_yaw(np.pi / 2), CylinderModel(3), (320, 240))
    CylinderPoint(theta=1.5707963267948966, height=0.0)

    """
    c = solve_coefficients(intr, pose, p)
    z_c = solve_depth(c, pose, cyl, on_invalid=on_invalid)
    return CylinderPoint(solve_theta(c, z_c, pose, cyl), solve_height(c, z_c, pose))


def cylinder_to_pixel(
    intr: CameraIntrinsics, pose: Pose, cyl: CylinderModel, cp: Union[CylinderPoint, Tuple]
) -> Optional[PixelCoord]:
    """Project a point on the tunnel wall into the image of a camera.

    A point is visible if it lies in front of the camera (camera frame z > 0) and its projection falls into
    [0, width) x [0, height).
    As the camera is inside the tunnel, no part of the wall can occlude another one.

    Returns
    -------
    PixelCoord or None
        For scalar input None is returned if the point is not visible.
        For array input the pixel coordinates of not visible points are NaN.

    """
    theta = np.asarray(cp[0], dtype=float)
    height = np.asarray(cp[1], dtype=float)
    theta, height = np.broadcast_arrays(theta, height)
    world = np.stack([cyl.radius * np.sin(theta), height, cyl.radius * np.cos(theta)], axis=-1)
    cam = pose.world_to_camera(world)
    cx, cy = intr.principal_point
    z = cam[..., 2]
    with np.errstate(divide="ignore", invalid="ignore"):
        u = intr.f * cam[..., 0] / z + cx
        v = intr.f * cam[..., 1] / z + cy
    visible = (z > 0) & (u >= 0) & (u < intr.width) & (v >= 0) & (v < intr.height)
    if theta.ndim == 0:
        if not visible:
            return None
        return PixelCoord(float(u), float(v))
    return PixelCoord(np.where(visible, u, np.nan), np.where(visible, v, np.nan))
