"""Camera and tunnel geometry.

This module contains the closed form math that maps image pixels onto the wall of a cylindrical tunnel with known
radius and back, given the camera intrinsics and the camera pose.
"""

from tunnelstitch.geometry._cylindrical_projection import cylindrical_projection
from tunnelstitch.geometry._models import (
    CameraIntrinsics,
    CylinderModel,
    CylinderPoint,
    PixelCoord,
    Pose,
    SolveCoefficients,
)
from tunnelstitch.geometry._solver import (
    cylinder_to_pixel,
    pixel_to_camera_ray,
    pixel_to_cylinder,
    project_unit_cylinder,
    solve_coefficients,
    solve_depth,
    solve_height,
    solve_theta,
    unwrap_to_plane,
    wrap_to_2pi,
)

__all__ = [
    "CameraIntrinsics",
    "CylinderModel",
    "CylinderPoint",
    "PixelCoord",
    "Pose",
    "SolveCoefficients",
    "cylinder_to_pixel",
    "cylindrical_projection",
    "pixel_to_camera_ray",
    "pixel_to_cylinder",
    "project_unit_cylinder",
    "solve_coefficients",
    "solve_depth",
    "solve_height",
    "solve_theta",
    "unwrap_to_plane",
    "wrap_to_2pi",
]
