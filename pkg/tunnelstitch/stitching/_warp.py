"""Forward warped boundaries and inverse warping of single frames into the panorama."""
import warnings
from dataclasses import dataclass
from typing import List, NamedTuple, Optional

import numpy as np
from typing_extensions import Literal

from tunnelstitch.geometry import CameraIntrinsics, CylinderModel, Pose, cylinder_to_pixel, pixel_to_cylinder
from tunnelstitch.stitching._panorama import Panorama, PanoramaSpec, cylinder_to_pano, pano_to_cylinder
from tunnelstitch.utils.consts import BOUNDARY_SAMPLES_PER_EDGE, STITCH_MODES
from tunnelstitch.utils.datatype_helper import is_image, is_mask
from tunnelstitch.utils.fast_raster import rasterize_polygon
from tunnelstitch.utils.resampling import sample_image
from tunnelstitch.utils.rotations import angle_diff, yaw_from_matrix, yaw_matrix

StitchMode = Literal["corrected", "egocentric", "baseline"]


class Frame(NamedTuple):
    """A captured image together with the pose it was taken from.

    Parameters
    ----------
    index
        The frame number
    image
        Float RGB image with shape (height, width, 3)
    pose
        The ground truth camera pose
    planned_pose
        The noise free pose the camera was supposed to have.
        Only required for the "baseline" stitching mode.
    valid
        Boolean (height, width) mask of the pixels that show the tunnel wall.
        None means all pixels are valid.

    """

    index: int
    image: np.ndarray
    pose: Pose
    planned_pose: Optional[Pose] = None
    valid: Optional[np.ndarray] = None


class WarpBoundary(NamedTuple):
    """The outline of the panorama region a frame can contribute to.

    Parameters
    ----------
    polygons
        Polygons in panorama coordinates (u, v) with shape (n, 2) each.
        A boundary crossing the theta = 0 seam is represented by the polygon and a copy shifted by one panorama
        width.
    full_circumference
        True if the image border winds around the tunnel axis (the camera looks along the tunnel).
        The polygons are then a single rectangle spanning all columns.

    """

    polygons: List[np.ndarray]
    full_circumference: bool = False

    def rasterize(self, spec: PanoramaSpec) -> np.ndarray:
        """Mark all panorama pixels whose center lies inside the boundary."""
        height, width = spec.shape
        mask = np.zeros((height, width), dtype=bool)
        for polygon in self.polygons:
            rasterize_polygon(polygon, height, width, out=mask)
        return mask


@dataclass
class FrameContribution:
    """The feather weighted samples a single frame adds to the panorama.

    `pixel_index` holds flat indices into the panorama raster (unique per frame).
    """

    index: int
    pixel_index: np.ndarray
    weighted_color: np.ndarray
    weight: np.ndarray
    boundary_index: np.ndarray


def effective_pose(frame: Frame, mode: StitchMode) -> Pose:
    """Return the pose the stitcher assumes for a frame.

    - "corrected": the ground truth pose.
    - "baseline": the planned pose.
    - "egocentric": only the heading of the ground truth pose around the tunnel axis, placed on the tunnel axis at
      the height of the camera. This projects every image onto a cylinder around the camera itself.
    """
    if mode not in STITCH_MODES:
        raise ValueError(f"`mode` must be one of {STITCH_MODES}. Got {mode}.")
    if mode == "corrected":
        return frame.pose
    if mode == "baseline":
        if frame.planned_pose is None:
            raise ValueError(f"Frame {frame.index} has no planned pose, which is required for the baseline mode.")
        return frame.planned_pose
    t = frame.pose.translation
    return Pose(R=yaw_matrix(yaw_from_matrix(frame.pose.rotation)), t=np.array([0.0, t[1], 0.0]))


def image_border_samples(intr: CameraIntrinsics, samples_per_edge: int = BOUNDARY_SAMPLES_PER_EDGE) -> np.ndarray:
    """Sample the border of the image clockwise, starting at the top left pixel center.

    Returns
    -------
    samples
        (4 * samples_per_edge, 2) array of (u, v) coordinates

    """
    w = intr.width - 1.0
    h = intr.height - 1.0
    s = np.arange(samples_per_edge) / samples_per_edge
    top = np.stack([s * w, np.zeros_like(s)], axis=1)
    right = np.stack([np.full_like(s, w), s * h], axis=1)
    bottom = np.stack([w - s * w, np.full_like(s, h)], axis=1)
    left = np.stack([np.zeros_like(s), h - s * h], axis=1)
    return np.concatenate([top, right, bottom, left])


def frame_height_range(frame: Frame, intr: CameraIntrinsics, cyl: CylinderModel):
    """The min and max wall height seen by the border of a frame from its ground truth pose."""
    samples = image_border_samples(intr)
    cp = pixel_to_cylinder(intr, frame.pose, cyl, (samples[:, 0], samples[:, 1]), on_invalid="nan")
    heights = np.asarray(cp.height)[np.isfinite(cp.height)]
    if heights.size == 0:
        return None
    return float(np.min(heights)), float(np.max(heights))


def forward_warp_boundary(
    frame: Frame, intr: CameraIntrinsics, cyl: CylinderModel, spec: PanoramaSpec, mode: StitchMode = "corrected"
) -> WarpBoundary:
    """Map the border of a frame into the panorama.

    The four corners and `BOUNDARY_SAMPLES_PER_EDGE` samples per edge are mapped onto the wall and into panorama
    coordinates.
    Straight image edges become curves under this warp, which is why corners alone are not sufficient.
    Border samples whose ray never hits the wall are dropped with a warning.

    Parameters
    ----------
    frame
        The frame
    intr
        The camera intrinsics
    cyl
        The tunnel
    spec
        A resolved panorama spec
    mode
        The stitching mode that selects the pose (see :func:`effective_pose`)

    """
    pose = effective_pose(frame, mode)
    samples = image_border_samples(intr)
    cp = pixel_to_cylinder(intr, pose, cyl, (samples[:, 0], samples[:, 1]), on_invalid="nan")
    theta = np.asarray(cp.theta)
    height = np.asarray(cp.height)
    valid = np.isfinite(theta) & np.isfinite(height)
    if not np.all(valid):
        warnings.warn(
            f"{np.sum(~valid)} border samples of frame {frame.index} do not hit the tunnel wall and are ignored.",
            stacklevel=2,
        )
    theta = theta[valid]
    height = height[valid]
    if theta.size < 3:
        return WarpBoundary(polygons=[])

    _, v = cylinder_to_pano(spec, (theta, height))
    theta_unwrapped = np.unwrap(theta)
    winding = np.sum(angle_diff(np.diff(np.append(theta, theta[0])), 0.0))
    if abs(winding) > np.pi:
        # The axis is inside the field of view. The frame sees the whole band on one side of its border.
        center_c2 = pose.rotation[1, 2]
        v_lo, v_hi = (np.min(v), spec.height) if center_c2 > 0 else (-1.0, np.max(v))
        rect = np.array([[-1.0, v_lo], [spec.width, v_lo], [spec.width, v_hi], [-1.0, v_hi]])
        return WarpBoundary(polygons=[rect], full_circumference=True)

    u = spec.width * theta_unwrapped / (2 * np.pi)
    u = u - spec.width * np.floor(np.min(u) / spec.width)
    polygon = np.stack([u, v], axis=1)
    polygons = [polygon]
    if np.max(u) >= spec.width:
        polygons.append(polygon - np.array([spec.width, 0.0]))
    return WarpBoundary(polygons=polygons)


def feather_weight(intr: CameraIntrinsics, u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Blend weight of image samples, growing linearly with the distance to the closest image border.

    The weight is `(d + 1) / (min(width, height) / 2 + 1)` with `d` the distance to the border in pixels,
    so it is close to 1 at the image center of a square image and positive for every sample inside the image.
    """
    d = np.minimum(np.minimum(u, intr.width - 1 - u), np.minimum(v, intr.height - 1 - v))
    return np.maximum(d + 1.0, 1e-6) / (min(intr.width, intr.height) / 2 + 1.0)


def _dilate_circular(mask: np.ndarray) -> np.ndarray:
    """Grow a mask by one pixel (8-neighbourhood). Columns wrap around."""
    out = mask.copy()
    horizontal = mask | np.roll(mask, 1, axis=1) | np.roll(mask, -1, axis=1)
    out |= horizontal
    out[1:] |= horizontal[:-1]
    out[:-1] |= horizontal[1:]
    return out


def warp_frame(
    frame: Frame,
    intr: CameraIntrinsics,
    cyl: CylinderModel,
    spec: PanoramaSpec,
    mode: StitchMode = "corrected",
    interpolation: Literal["bilinear", "nearest"] = "bilinear",
    boundary: Optional[WarpBoundary] = None,
) -> FrameContribution:
    """Calculate the contribution of a single frame to the panorama by inverse warping.

    Every panorama pixel inside the (one pixel dilated) forward warped boundary is mapped onto the wall and back into
    the frame.
    Visible positions are sampled and weighted with the feather weight.
    Pixels that do not map into the frame contribute nothing, and neither do samples that touch a pixel outside the
    valid mask of the frame.
    """
    is_image(frame.image, height=intr.height, width=intr.width, raise_exception=True)
    if frame.valid is not None:
        is_mask(frame.valid, height=intr.height, width=intr.width, raise_exception=True)
    pose = effective_pose(frame, mode)
    if boundary is None:
        boundary = forward_warp_boundary(frame, intr, cyl, spec, mode)
    boundary_mask = boundary.rasterize(spec)
    fill_mask = _dilate_circular(boundary_mask)

    rows, cols = np.nonzero(fill_mask)
    cp = pano_to_cylinder(spec, cols.astype(float), rows.astype(float))
    pixel = cylinder_to_pixel(intr, pose, cyl, (np.atleast_1d(cp.theta), np.atleast_1d(cp.height)))
    visible = np.isfinite(pixel.u)
    u = np.asarray(pixel.u)[visible]
    v = np.asarray(pixel.v)[visible]
    if frame.valid is not None:
        # An interpolated sample is only valid if every pixel it touches is
        valid = sample_image(frame.valid[:, :, None].astype(float), u, v, interpolation)[:, 0] > 1 - 1e-9
        visible[visible] = valid
        u = u[valid]
        v = v[valid]
    weight = feather_weight(intr, u, v)
    color = sample_image(frame.image, u, v, interpolation)
    return FrameContribution(
        index=frame.index,
        pixel_index=np.ravel_multi_index((rows[visible], cols[visible]), spec.shape),
        weighted_color=color * weight[:, None],
        weight=weight,
        boundary_index=np.flatnonzero(boundary_mask),
    )


def accumulate(pano: Panorama, contribution: FrameContribution) -> Panorama:
    """Add a frame contribution to the panorama buffers in place."""
    color = pano.color.reshape(-1, 3)
    weight = pano.weight.reshape(-1)
    color[contribution.pixel_index] += contribution.weighted_color
    weight[contribution.pixel_index] += contribution.weight
    pano.boundary_mask.reshape(-1)[contribution.boundary_index] = True
    return pano


def inverse_warp_fill(
    frame: Frame,
    intr: CameraIntrinsics,
    cyl: CylinderModel,
    boundary: WarpBoundary,
    pano: Panorama,
    mode: StitchMode = "corrected",
    interpolation: Literal["bilinear", "nearest"] = "bilinear",
) -> Panorama:
    """Fill all panorama pixels inside the boundary of a frame by inverse warping.

    The samples are accumulated into `pano` in place (weighted color and weight).
    Use :attr:`Panorama.image` to get the normalized colors.
    """
    contribution = warp_frame(frame, intr, cyl, pano.spec, mode, interpolation, boundary=boundary)
    return accumulate(pano, contribution)
