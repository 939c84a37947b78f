"""Helper functions to evaluate stitched panoramas against the ground truth texture."""

from tunnelstitch.evaluation_utils._scores import (
    band_coverage_fraction,
    complete_band,
    coverage_fraction,
    joint_mask,
    psnr,
)
from tunnelstitch.evaluation_utils._straightness import EdgeStraightness, edge_straightness

__all__ = [
    "EdgeStraightness",
    "band_coverage_fraction",
    "complete_band",
    "coverage_fraction",
    "edge_straightness",
    "joint_mask",
    "psnr",
]
