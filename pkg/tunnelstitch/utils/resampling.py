"""Sampling of images at continuous pixel coordinates."""
import numpy as np
from scipy.ndimage import map_coordinates
from typing_extensions import Literal

from tunnelstitch.utils.consts import INTERPOLATIONS

_ORDER = {"bilinear": 1, "nearest": 0}


def sample_image(
    image: np.ndarray, u: np.ndarray, v: np.ndarray, interpolation: Literal["bilinear", "nearest"] = "bilinear"
) -> np.ndarray:
    """Sample an RGB image at continuous pixel coordinates.

    Pixel centers are at integer coordinates.
    Coordinates outside the image are clamped to the closest border pixel, so callers need to mask them themselves.

    Parameters
    ----------
    image
        Image with shape (height, width, channels)
    u
        Column coordinates
    v
        Row coordinates, same shape as `u`
    interpolation
        "bilinear" or "nearest"

    Returns
    -------
    samples
        Array with shape u.shape + (channels,)

    """
    if interpolation not in INTERPOLATIONS:
        raise ValueError(f"`interpolation` must be one of {INTERPOLATIONS}. Got {interpolation}.")
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    coords = np.stack([v.ravel(), u.ravel()])
    out = np.empty((u.size, image.shape[2]), dtype=float)
    for channel in range(image.shape[2]):
        out[:, channel] = map_coordinates(
            image[:, :, channel], coords, order=_ORDER[interpolation], mode="nearest", prefilter=False
        )
    return out.reshape(u.shape + (image.shape[2],))
