"""Feature-less stitching of posed tunnel images into a cylindrical panorama."""

from tunnelstitch.stitching._composite import composite, reduce_contributions, resolve_panorama_spec, warp_all
from tunnelstitch.stitching._panorama import Panorama, PanoramaSpec, cylinder_to_pano, pano_to_cylinder
from tunnelstitch.stitching._stitcher import CylindricalStitcher
from tunnelstitch.stitching._warp import (
    Frame,
    FrameContribution,
    WarpBoundary,
    effective_pose,
    feather_weight,
    forward_warp_boundary,
    image_border_samples,
    inverse_warp_fill,
    warp_frame,
)

__all__ = [
    "CylindricalStitcher",
    "Frame",
    "FrameContribution",
    "Panorama",
    "PanoramaSpec",
    "WarpBoundary",
    "composite",
    "cylinder_to_pano",
    "effective_pose",
    "feather_weight",
    "forward_warp_boundary",
    "image_border_samples",
    "inverse_warp_fill",
    "pano_to_cylinder",
    "reduce_contributions",
    "resolve_panorama_spec",
    "warp_all",
    "warp_frame",
]
