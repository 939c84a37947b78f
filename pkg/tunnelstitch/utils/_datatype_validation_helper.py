"""Internal helpers for data validation."""
from typing import Tuple, Union

import numpy as np

from tunnelstitch.utils.exceptions import ValidationError


def _assert_is_dtype(obj, dtype: Union[type, Tuple[type, ...]]):
    """Check if an object has a specific dtype."""
    if not isinstance(obj, dtype):
        raise ValidationError(f"The dataobject is expected to be one of ({dtype},). But it is a {type(obj)}")


def _assert_has_shape(arr: np.ndarray, expected: Tuple[int, ...], name: str = "array"):
    """Check the shape of an array.

    `-1` entries in `expected` match any size.
    """
    if arr.ndim != len(expected) or any(e not in (-1, s) for e, s in zip(expected, arr.shape)):
        readable = tuple("n" if e == -1 else e for e in expected)
        raise ValidationError(f"The {name} is expected to have the shape {readable}. But it has {arr.shape}.")


def _assert_is_finite(arr: np.ndarray, name: str = "array"):
    if not np.all(np.isfinite(arr)):
        raise ValidationError(f"The {name} contains non-finite values.")


def _assert_in_range(arr: np.ndarray, low: float, high: float, name: str = "array"):
    if arr.size > 0 and (np.min(arr) < low or np.max(arr) > high):
        raise ValidationError(f"The values of the {name} are expected to be in [{low}, {high}].")
