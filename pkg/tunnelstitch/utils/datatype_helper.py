"""A couple of helper functions that check the typical tunnelstitch data formats.

All checks follow the same convention: they return `True` or `False`, or raise a
:class:`~tunnelstitch.utils.exceptions.ValidationError` with a descriptive message if `raise_exception=True`.

In memory, images are float arrays with shape `(height, width, 3)` and values in [0, 1].
Masks are boolean arrays with shape `(height, width)`.
"""
import numpy as np

from tunnelstitch.utils._datatype_validation_helper import (
    _assert_has_shape,
    _assert_in_range,
    _assert_is_dtype,
    _assert_is_finite,
)
from tunnelstitch.utils.consts import ORTHONORMAL_TOL
from tunnelstitch.utils.exceptions import ValidationError
from tunnelstitch.utils.rotations import is_orthonormal


def is_rotation_matrix(rot_matrix, tol: float = ORTHONORMAL_TOL, raise_exception: bool = False) -> bool:
    """Check if an object is a proper 3x3 rotation matrix.

    The matrix must satisfy RᵀR = I and det(R) = +1 elementwise within `tol`.

    Parameters
    ----------
    rot_matrix
        The object to check
    tol
        The elementwise tolerance
    raise_exception
        If True an exception is raised if the object does not pass the validation.
        If False, the function will return simply True or False.

    """
    try:
        _assert_is_dtype(rot_matrix, np.ndarray)
        _assert_has_shape(rot_matrix, (3, 3), "rotation matrix")
        _assert_is_finite(rot_matrix, "rotation matrix")
        if not is_orthonormal(rot_matrix, tol):
            raise ValidationError(
                f"The matrix is not orthonormal with determinant +1 (tolerance {tol}). "
                f"Its determinant is {np.linalg.det(rot_matrix)}."
            )
    except ValidationError as e:
        if raise_exception is True:
            raise ValidationError(
                "The passed object is not a valid rotation matrix. "
                "The validation failed with the following error:\n\n{}".format(str(e))
            ) from e
        return False
    return True


def is_translation(vec, raise_exception: bool = False) -> bool:
    """Check if an object is a finite 3-vector."""
    try:
        _assert_is_dtype(vec, np.ndarray)
        _assert_has_shape(vec, (3,), "translation")
        _assert_is_finite(vec, "translation")
    except ValidationError as e:
        if raise_exception is True:
            raise ValidationError(
                "The passed object is not a valid translation. "
                "The validation failed with the following error:\n\n{}".format(str(e))
            ) from e
        return False
    return True


def is_image(image, height: int = -1, width: int = -1, raise_exception: bool = False) -> bool:
    """Check if an object is a float RGB image with values in [0, 1].

    Parameters
    ----------
    image
        The object to check
    height
        The expected height. -1 means any.
    width
        The expected width. -1 means any.
    raise_exception
        If True an exception is raised if the object does not pass the validation.
        If False, the function will return simply True or False.

    """
    try:
        _assert_is_dtype(image, np.ndarray)
        _assert_has_shape(image, (height, width, 3), "image")
        if not np.issubdtype(image.dtype, np.floating):
            raise ValidationError(f"The image is expected to have a floating point dtype. But it is {image.dtype}.")
        _assert_is_finite(image, "image")
        _assert_in_range(image, 0.0, 1.0, "image")
    except ValidationError as e:
        if raise_exception is True:
            raise ValidationError(
                "The passed object does not seem to be an image. "
                "The validation failed with the following error:\n\n{}".format(str(e))
            ) from e
        return False
    return True


def is_mask(mask, height: int = -1, width: int = -1, raise_exception: bool = False) -> bool:
    """Check if an object is a boolean 2D mask."""
    try:
        _assert_is_dtype(mask, np.ndarray)
        _assert_has_shape(mask, (height, width), "mask")
        if mask.dtype != np.bool_:
            raise ValidationError(f"The mask is expected to be boolean. But it is {mask.dtype}.")
    except ValidationError as e:
        if raise_exception is True:
            raise ValidationError(
                "The passed object does not seem to be a mask. "
                "The validation failed with the following error:\n\n{}".format(str(e))
            ) from e
        return False
    return True
