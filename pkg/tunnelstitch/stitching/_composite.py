"""Compositing of many frames into a single panorama."""
import warnings
from typing import Iterable, List, Optional, Sequence

import numpy as np
from joblib import Memory, Parallel, delayed
from typing_extensions import Literal

from tunnelstitch.geometry import CameraIntrinsics, CylinderModel
from tunnelstitch.stitching._panorama import Panorama, PanoramaSpec
from tunnelstitch.stitching._warp import (
    Frame,
    FrameContribution,
    StitchMode,
    accumulate,
    effective_pose,
    frame_height_range,
    warp_frame,
)
from tunnelstitch.utils.exceptions import CoverageError


def resolve_panorama_spec(
    spec: PanoramaSpec,
    cyl: CylinderModel,
    frames: Iterable[Frame] = (),
    intr: Optional[CameraIntrinsics] = None,
) -> PanoramaSpec:
    """Fill in the unset values of a panorama spec.

    A missing scale is replaced by `width / (2 pi r)`.
    A missing height band is derived from the lowest and highest wall point seen by the border of any frame.
    The ground truth poses are used independent of the stitching mode, so all modes of one dataset share the same
    panorama raster.
    The upper end is moved up so the band is a whole number of rows.

    Returns
    -------
    spec
        A new, resolved spec. The input is not modified.

    """
    spec.validate()
    cyl.validate()
    scale = spec.default_scale(cyl) if spec.scale is None else float(spec.scale)
    y_min, y_max = spec.y_min, spec.y_max
    if y_min is None or y_max is None:
        frames = list(frames)
        if not frames or intr is None:
            raise ValueError("The panorama height band can only be derived from frames and camera intrinsics.")
        ranges = [r for r in (frame_height_range(f, intr, cyl) for f in frames) if r is not None]
        if not ranges:
            raise CoverageError("None of the frames sees the tunnel wall. The panorama band can not be derived.")
        ranges = np.array(ranges)
        if y_min is None:
            y_min = float(np.min(ranges[:, 0]))
        if y_max is None:
            y_max = float(np.max(ranges[:, 1]))
        if y_max <= y_min:
            raise CoverageError(f"The derived panorama band [{y_min}, {y_max}] is empty.")
        n_rows = max(int(np.ceil((y_max - y_min) * scale)), 1)
        y_max = y_min + n_rows / scale
    return spec.clone().set_params(y_min=y_min, y_max=y_max, scale=scale).validate()


def _check_frames(frames: Sequence[Frame], mode: StitchMode) -> List[Frame]:
    if len(frames) == 0:
        raise ValueError("At least one frame is required for stitching.")
    indices = [f.index for f in frames]
    if len(set(indices)) != len(indices):
        raise ValueError("The frame indices need to be unique.")
    for f in frames:
        effective_pose(f, mode).validate()
    return sorted(frames, key=lambda f: f.index)


def warp_all(
    frames: Sequence[Frame],
    intr: CameraIntrinsics,
    cyl: CylinderModel,
    spec: PanoramaSpec,
    mode: StitchMode = "corrected",
    interpolation: Literal["bilinear", "nearest"] = "bilinear",
    n_jobs: Optional[int] = 1,
    memory: Optional[Memory] = None,
) -> List[FrameContribution]:
    """Warp every frame into the panorama. The result is sorted by frame index."""
    if memory is None:
        memory = Memory(None)
    cached_warp = memory.cache(warp_frame)
    frames = _check_frames(frames, mode)
    return Parallel(n_jobs=n_jobs)(
        delayed(cached_warp)(frame, intr, cyl, spec, mode, interpolation) for frame in frames
    )


def reduce_contributions(spec: PanoramaSpec, contributions: Iterable[FrameContribution]) -> Panorama:
    """Sum frame contributions in ascending frame order, so the result does not depend on the processing order."""
    pano = Panorama(spec)
    for contribution in sorted(contributions, key=lambda c: c.index):
        if contribution.weight.size == 0:
            warnings.warn(f"Frame {contribution.index} does not contribute any pixel to the panorama.", stacklevel=2)
        accumulate(pano, contribution)
    return pano


def composite(
    frames: Sequence[Frame],
    intr: CameraIntrinsics,
    cyl: CylinderModel,
    spec: PanoramaSpec,
    mode: StitchMode = "corrected",
    interpolation: Literal["bilinear", "nearest"] = "bilinear",
    n_jobs: Optional[int] = 1,
) -> Panorama:
    """Stitch posed frames into a cylindrical panorama.

    Each frame is mapped into the panorama by its forward warped boundary and filled by inverse warping.
    The feather weighted samples of all frames are summed and normalized by :attr:`Panorama.image`.

    Parameters
    ----------
    frames
        The frames. Their order does not matter.
    intr
        The intrinsics shared by all frames
    cyl
        The tunnel
    spec
        The panorama spec. Unset values are resolved with :func:`resolve_panorama_spec`.
    mode
        "corrected" uses the ground truth poses, "egocentric" projects each frame around the camera position,
        "baseline" uses the planned poses.
    interpolation
        "bilinear" or "nearest" sampling of the frames
    n_jobs
        Number of parallel workers for the per-frame warps

    Raises
    ------
    CoverageError
        If no panorama pixel receives a contribution

    """
    intr.validate()
    frames = _check_frames(frames, mode)
    spec = resolve_panorama_spec(spec, cyl, frames, intr)
    contributions = warp_all(frames, intr, cyl, spec, mode, interpolation, n_jobs=n_jobs)
    pano = reduce_contributions(spec, contributions)
    if not np.any(pano.coverage):
        raise CoverageError(f"No panorama pixel is covered by any of the {len(frames)} frames in mode '{mode}'.")
    return pano
