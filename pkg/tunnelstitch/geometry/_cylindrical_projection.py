"""Warp of a single planar image onto its unwrapped unit cylinder."""
from typing import Optional, Tuple

import numpy as np
from typing_extensions import Literal

from tunnelstitch.geometry._models import CameraIntrinsics
from tunnelstitch.utils.datatype_helper import is_image
from tunnelstitch.utils.resampling import sample_image


def cylindrical_projection(
    image: np.ndarray,
    intr: CameraIntrinsics,
    out_intr: Optional[CameraIntrinsics] = None,
    interpolation: Literal["bilinear", "nearest"] = "bilinear",
) -> Tuple[np.ndarray, np.ndarray]:
    """Project a single image onto a unit cylinder around the camera and unwrap it.

    Every pixel `(u, v)` of the output corresponds to the unit cylinder point with azimuth `(u - cx) / f` and height
    `(v - cy) / f` (using `out_intr`).
    This point is projected back into the input image and sampled (inverse warping).
    Straight vertical lines of the scene stay straight; the bending of horizontal lines shows why this view is only
    correct for a camera on the tunnel axis.

    Parameters
    ----------
    image
        Float RGB image with shape (intr.height, intr.width, 3)
    intr
        The intrinsics of the input image
    out_intr
        The intrinsics of the unwrapped image.
        If None, `intr` is used, which keeps the image size.
    interpolation
        "bilinear" or "nearest"

    Returns
    -------
    unwrapped
        The unwrapped image with shape (out_intr.height, out_intr.width, 3).
        Pixels without a source are black.
    valid_mask
        Boolean mask of the pixels that received a sample

    """
    intr.validate()
    is_image(image, height=intr.height, width=intr.width, raise_exception=True)
    out_intr = intr if out_intr is None else out_intr.validate()
    out_cx, out_cy = out_intr.principal_point
    cx, cy = intr.principal_point

    vv, uu = np.mgrid[0 : out_intr.height, 0 : out_intr.width].astype(float)
    theta = (uu - out_cx) / out_intr.f
    h = (vv - out_cy) / out_intr.f
    cos_theta = np.cos(theta)
    in_front = cos_theta > 0
    with np.errstate(divide="ignore", invalid="ignore"):
        src_u = intr.f * np.tan(theta) + cx
        src_v = intr.f * h / cos_theta + cy
    valid = in_front & (src_u >= 0) & (src_u <= intr.width - 1) & (src_v >= 0) & (src_v <= intr.height - 1)

    out = np.zeros((out_intr.height, out_intr.width, 3))
    out[valid] = sample_image(image, src_u[valid], src_v[valid], interpolation)
    return np.clip(out, 0.0, 1.0), valid
