"""A set of util functions that ease handling rotations.

All util functions use :class:`scipy.spatial.transform.Rotation` to represent rotations.
The tunnel axis is the world y-axis, so most camera rotations of interest are yaw rotations about y.
"""
from typing import Union

import numpy as np
from numpy.linalg import norm
from scipy.spatial.transform import Rotation

from tunnelstitch.utils.vector_math import find_orthogonal, normalize, row_wise_dot


def rotation_from_angle(axis: np.ndarray, angle: Union[float, np.ndarray]) -> Rotation:
    """Create a rotation based on a rotation axis and a angle.

    Parameters
    ----------
    axis : array with shape (3,) or (n, 3)
        normalized rotation axis ([x, y ,z]) or array of rotation axis
    angle : float or array with shape (n,)
        rotation angle or array of angeles in rad

    Returns
    -------
    rotation(s) : Rotation object with len n

    Examples
    --------
    >>> rot = rotation_from_angle(np.array([0, 1, 0]), np.deg2rad(90))
    >>> rot.apply(np.array([0, 0, 1.])).round()
    array([1., 0., 0.])

    """
    angle = np.atleast_2d(angle)
    axis = np.atleast_2d(axis)
    return Rotation.from_rotvec(np.squeeze(axis * angle.T))


def yaw_matrix(yaw: float) -> np.ndarray:
    """Return the rotation matrix about the world y-axis (tunnel axis).

    The matrix is built from `cos` and `sin` directly, so `yaw_matrix(0)` is exactly the identity and the third
    column is exactly `(sin(yaw), 0, cos(yaw))`.

    Examples
    --------
    >>> yaw_matrix(np.pi / 2).round(12)
    array([[ 0.,  0.,  1.],
           [ 0.,  1.,  0.],
           [-1.,  0.,  0.]])

    """
    c = np.cos(yaw)
    s = np.sin(yaw)
    return np.array([[c, 0.0, s], [0.0, 1.0, 0.0], [-s, 0.0, c]])


def yaw_from_matrix(rot_matrix: np.ndarray) -> float:
    """Extract the heading of the camera optical axis around the tunnel axis.

    The heading is the azimuth of the camera z-axis (third column of R) projected onto the x-z plane, normalized to
    [0, 2pi).
    """
    rot_matrix = np.asarray(rot_matrix, dtype=float)
    return float(np.mod(np.arctan2(rot_matrix[0, 2], rot_matrix[2, 2]), 2 * np.pi))


def small_angle_perturbation(angles: np.ndarray) -> np.ndarray:
    """Build a rotation matrix from per-axis perturbation angles.

    The rotations are applied about the x-axis first, then y and finally z (extrinsic "xyz" convention).

    Parameters
    ----------
    angles
        Rotation angles around x, y, z in rad.

    """
    return Rotation.from_euler("xyz", np.asarray(angles, dtype=float)).as_matrix()


def find_shortest_rotation(v1: np.ndarray, v2: np.ndarray) -> Rotation:
    """Find a rotation that rotates v1 into v2 via the shortest way.

    Parameters
    ----------
    v1 : vector with shape (3,)
        axis ([x, y ,z])
    v2 : vector with shape (3,)
        axis ([x, y ,z])

    Returns
    -------
    rotation
        Shortest rotation that rotates v1 into v2

    Examples
    --------
    >>> goal = np.array([0, 0, 1])
    >>> start = np.array([1, 0, 0])
    >>> rot = find_shortest_rotation(start, goal)
    >>> rot.apply(start).round(12)
    array([0., 0., 1.])

    """
    if (not np.isclose(norm(v1, axis=-1), 1)) or (not np.isclose(norm(v2, axis=-1), 1)):
        raise ValueError("v1 and v2 must be normalized")
    axis = find_orthogonal(v1, v2)
    angle = find_unsigned_3d_angle(v1, v2)
    return rotation_from_angle(axis, angle)


def find_unsigned_3d_angle(v1: np.ndarray, v2: np.ndarray) -> Union[np.ndarray, float]:
    """Find the angle (in rad) between two  3D vectors.

    Parameters
    ----------
    v1 : vector with shape (3,)  or array of vectors
        axis ([x, y ,z]) or array of axis
    v2 : vector with shape (3,) or array of vectors
        axis ([x, y ,z]) or array of axis

    Returns
    -------
        angle or array of angles between two vectors

    Examples
    --------
    >>> float(find_unsigned_3d_angle(np.array([-1, 0, 0]), np.array([0, 0, 2])).round(6))
    1.570796

    """
    v1_, v2_ = np.atleast_2d(v1, v2)
    v1_ = normalize(v1_)
    v2_ = normalize(v2_)
    out = np.arccos(np.clip(row_wise_dot(v1_, v2_), -1.0, 1.0))
    if out.size == 1:
        return float(out[0])
    return out


def angle_diff(a: Union[float, np.ndarray], b: Union[float, np.ndarray]) -> Union[float, np.ndarray]:
    """Calculate the real distance bewteen two signed angle values.

    This returns the shorter of the two possible angle differences on a unit circle.

    Examples
    --------
    >>> np.round(angle_diff(0, -np.pi / 2), 2)
    1.57
    >>> np.round(angle_diff(1.5 * np.pi, 0), 2)
    -1.57
    >>> angle_diff(-np.pi, +np.pi)
    0.0

    """
    diff = a - b
    return (diff + np.pi) % (2 * np.pi) - np.pi


def is_orthonormal(rot_matrix: np.ndarray, tol: float) -> bool:
    """Check RᵀR = I and det(R) = +1 elementwise within `tol`."""
    rot_matrix = np.asarray(rot_matrix, dtype=float)
    if rot_matrix.shape != (3, 3) or not np.all(np.isfinite(rot_matrix)):
        return False
    return bool(
        np.all(np.abs(rot_matrix.T @ rot_matrix - np.eye(3)) <= tol) and abs(np.linalg.det(rot_matrix) - 1.0) <= tol
    )
