"""Synthetic views of a textured cylindrical tunnel.

The ray caster renders the dataset for the stitcher and the exact unwrapped wall, which serves as ground truth.
"""

from tunnelstitch.simulation._raycast import (
    RayCastRenderer,
    ray_cylinder_intersect,
    render_oracle_panorama,
    render_view,
)
from tunnelstitch.simulation._texture import (
    RenderConfig,
    TextureSpec,
    checkerboard_edges,
    inward_normal,
    surface_color,
)

__all__ = [
    "RayCastRenderer",
    "RenderConfig",
    "TextureSpec",
    "checkerboard_edges",
    "inward_normal",
    "ray_cylinder_intersect",
    "render_oracle_panorama",
    "render_view",
    "surface_color",
]
