"""The stitcher algorithm class."""
from typing import Optional, Sequence

import numpy as np
import pandas as pd
from joblib import Memory
from tpcp import cf
from typing_extensions import Literal, Self

from tunnelstitch.base import BaseStitcher
from tunnelstitch.evaluation_utils._scores import psnr
from tunnelstitch.geometry import CameraIntrinsics, CylinderModel
from tunnelstitch.stitching._composite import _check_frames, reduce_contributions, resolve_panorama_spec, warp_all
from tunnelstitch.stitching._panorama import Panorama, PanoramaSpec
from tunnelstitch.stitching._warp import Frame, FrameContribution
from tunnelstitch.utils.consts import INTERPOLATIONS, STITCH_MODES
from tunnelstitch.utils.exceptions import CoverageError

FRAME_STATS_COLS = ["n_pixels", "boundary_area", "mean_weight", "psnr"]


class CylindricalStitcher(BaseStitcher):
    """Stitch posed frames of a tunnel into a cylindrical panorama using the known geometry.

    No image features are used.
    Every frame is placed by its pose: the border of the frame is forward warped into the panorama to find the
    region it can contribute to, and every panorama pixel in this region is inverse warped into the frame and sampled.
    Overlapping frames are blended with feather weights that decay towards the image borders.

    Parameters
    ----------
    intrinsics
        The camera intrinsics shared by all frames
    cylinder
        The tunnel model
    panorama_spec
        The panorama raster.
        Unset values (height band, scale) are derived from the frames.
    mode
        "corrected" uses the ground truth pose of each frame.
        "egocentric" ignores the offset of the camera from the tunnel axis and projects each frame onto a cylinder
        around the camera.
        "baseline" uses the planned pose of each frame.
    interpolation
        "bilinear" or "nearest" sampling of the frames
    n_jobs
        The number of parallel workers for the per-frame warps.
        The result is identical for any value.
    memory
        An optional `joblib.Memory` object that can be provided to cache the per-frame warps.

    Attributes
    ----------
    panorama_
        The stitched :class:`~tunnelstitch.stitching.Panorama` (accumulation buffers, coverage and boundary mask)
    frame_stats_
        A `pd.DataFrame` indexed by frame index with the number of filled pixels, the rasterized boundary area, the
        mean feather weight and the PSNR of the frame contribution against the reference (NaN without reference)

    Other Parameters
    ----------------
    frames
        The frames passed to the stitch method
    reference
        The optional reference panorama passed to the stitch method

    Examples
    --------
    >>> stitcher = CylindricalStitcher(mode="corrected", panorama_spec=PanoramaSpec(width=600))
    >>> stitcher = stitcher.stitch(frames)
    >>> panorama = stitcher.panorama_.image
    >>> covered = stitcher.panorama_.coverage.mean()

    """

    intrinsics: CameraIntrinsics
    cylinder: CylinderModel
    panorama_spec: PanoramaSpec
    mode: Literal["corrected", "egocentric", "baseline"]
    interpolation: Literal["bilinear", "nearest"]
    n_jobs: Optional[int]
    memory: Optional[Memory]

    panorama_: Panorama
    frame_stats_: pd.DataFrame

    frames: Sequence[Frame]
    reference: Optional[np.ndarray]

    def __init__(
        self,
        intrinsics: CameraIntrinsics = cf(CameraIntrinsics()),
        cylinder: CylinderModel = cf(CylinderModel()),
        panorama_spec: PanoramaSpec = cf(PanoramaSpec()),
        mode: Literal["corrected", "egocentric", "baseline"] = "corrected",
        interpolation: Literal["bilinear", "nearest"] = "bilinear",
        n_jobs: Optional[int] = 1,
        memory: Optional[Memory] = None,
    ):
        self.intrinsics = intrinsics
        self.cylinder = cylinder
        self.panorama_spec = panorama_spec
        self.mode = mode
        self.interpolation = interpolation
        self.n_jobs = n_jobs
        self.memory = memory

    def stitch(self, frames: Sequence[Frame], *, reference: Optional[np.ndarray] = None, **_) -> Self:
        """Stitch the frames.

        Parameters
        ----------
        frames
            The frames. Their order does not matter.
        reference
            An optional ground truth panorama with the shape of the resolved panorama spec.
            If provided, the PSNR of every frame contribution is reported in `frame_stats_`.

        Returns
        -------
        self
            The class instance with all result attributes populated

        """
        self.frames = frames
        self.reference = reference

        if self.mode not in STITCH_MODES:
            raise ValueError(f"`mode` must be one of {STITCH_MODES}. Got {self.mode}.")
        if self.interpolation not in INTERPOLATIONS:
            raise ValueError(f"`interpolation` must be one of {INTERPOLATIONS}. Got {self.interpolation}.")
        self.intrinsics.validate()
        sorted_frames = _check_frames(frames, self.mode)
        spec = resolve_panorama_spec(self.panorama_spec, self.cylinder, sorted_frames, self.intrinsics)
        if reference is not None and reference.shape != spec.shape + (3,):
            raise ValueError(
                f"The reference shape {reference.shape} does not match the panorama shape {spec.shape + (3,)}."
            )

        contributions = warp_all(
            sorted_frames,
            self.intrinsics,
            self.cylinder,
            spec,
            self.mode,
            self.interpolation,
            n_jobs=self.n_jobs,
            memory=self.memory,
        )
        self.panorama_ = reduce_contributions(spec, contributions)
        if not np.any(self.panorama_.coverage):
            raise CoverageError(
                f"No panorama pixel is covered by any of the {len(sorted_frames)} frames in mode '{self.mode}'."
            )
        self.frame_stats_ = self._frame_stats(contributions, reference)
        return self

    @staticmethod
    def _frame_stats(
        contributions: Sequence[FrameContribution], reference: Optional[np.ndarray]
    ) -> pd.DataFrame:
        rows = []
        flat_reference = None if reference is None else reference.reshape(-1, 3)
        for c in contributions:
            frame_psnr = np.nan
            if flat_reference is not None and c.weight.size > 0:
                colors = c.weighted_color / c.weight[:, None]
                frame_psnr = psnr(colors[:, None, :], flat_reference[c.pixel_index][:, None, :])
            rows.append(
                {
                    "frame": c.index,
                    "n_pixels": int(c.weight.size),
                    "boundary_area": int(c.boundary_index.size),
                    "mean_weight": float(np.mean(c.weight)) if c.weight.size else 0.0,
                    "psnr": frame_psnr,
                }
            )
        return pd.DataFrame(rows, columns=["frame", *FRAME_STATS_COLS]).set_index("frame")
