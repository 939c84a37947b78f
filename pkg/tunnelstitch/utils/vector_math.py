"""A set of helper functions to handle common vector operations.

All functions accept a single vector with shape (3,) or a stack of vectors with shape (n, 3), so that whole images
worth of rays can be handled in one call.
"""
from typing import Union

import numpy as np
from numpy.linalg import norm


def row_wise_dot(v1, v2, squeeze=False):
    """Calculate row wise dot product of two vectors."""
    v1, v2 = np.atleast_2d(v1, v2)
    out = np.sum(v1 * v2, axis=-1)
    if squeeze:
        return np.squeeze(out)
    return out


def normalize(v: np.ndarray) -> np.ndarray:
    """Normalize a vector or every row of a stack of vectors.

    Rows with norm 0 become NaN.

    Examples
    --------
    >>> normalize(np.array([0, 3.0, 4.0]))
    array([0. , 0.6, 0.8])
    >>> normalize(np.array([[2, 0, 0], [0, 0, 0]]))
    array([[ 1.,  0.,  0.],
           [nan, nan, nan]])

    """
    v = np.asarray(v, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        return v / norm(v, axis=-1, keepdims=True)


def is_almost_parallel_or_antiparallel(
    v1: np.ndarray, v2: np.ndarray, rtol: float = 1.0e-5, atol: float = 1.0e-8
) -> Union[np.bool_, np.ndarray]:
    """Check if two vectors are either parallel or antiparallel.

    Examples
    --------
    >>> is_almost_parallel_or_antiparallel(np.array([0, 1.0, 0]), np.array([0, -2.0, 0]))
    True
    >>> is_almost_parallel_or_antiparallel(np.array([0, 1.0, 0]), np.array([1.0, 0, 0]))
    False

    """
    return np.isclose(np.abs(row_wise_dot(normalize(v1), normalize(v2), squeeze=True)), 1, rtol=rtol, atol=atol)


def find_orthogonal(v1: np.ndarray, v2: np.ndarray) -> np.ndarray:
    """Return a unit vector orthogonal to two 1D vectors.

    For (anti)parallel inputs any vector in the orthogonal plane of `v1` is returned.

    Examples
    --------
    >>> find_orthogonal(np.array([0, 1.0, 0]), np.array([0, 0, 1.0]))
    array([1., 0., 0.])

    """
    v1 = np.asarray(v1, dtype=float)
    v2 = np.asarray(v2, dtype=float)
    if v1.ndim > 1 or v2.ndim > 1:
        raise ValueError(f"v1 and v2 need to be at max 1D (currently {v1.ndim}D and {v2.ndim}D")
    if is_almost_parallel_or_antiparallel(v1, v2):
        helper = np.array([0, 1.0, 0]) if is_almost_parallel_or_antiparallel(v1, np.array([1.0, 0, 0])) else None
        if helper is None:
            helper = np.array([1.0, 0, 0])
        return normalize(np.cross(v1, helper))
    return normalize(np.cross(v1, v2))


def project_onto_plane(v: np.ndarray, plane_normal: np.ndarray) -> np.ndarray:
    """Remove the component along `plane_normal` from `v`.

    Examples
    --------
    >>> project_onto_plane(np.array([1.0, 2.0, 3.0]), np.array([0, 1.0, 0]))
    array([1., 0., 3.])

    """
    n = normalize(plane_normal)
    v = np.asarray(v, dtype=float)
    return v - row_wise_dot(v, n)[..., None].reshape(v.shape[:-1] + (1,)) * n
