"""A minimal software ray caster for views of a textured tunnel."""
from typing import Optional, Tuple

import numpy as np
from joblib import Memory
from tpcp import cf
from typing_extensions import Self

from tunnelstitch.base import BaseRenderer
from tunnelstitch.geometry import CameraIntrinsics, CylinderModel, Pose, pixel_to_camera_ray, wrap_to_2pi
from tunnelstitch.simulation._texture import RenderConfig, TextureSpec, inward_normal, surface_color
from tunnelstitch.stitching import PanoramaSpec, pano_to_cylinder
from tunnelstitch.utils.consts import WORLD_AXIS
from tunnelstitch.utils.exceptions import CameraOutsideTunnelError
from tunnelstitch.utils.vector_math import row_wise_dot


def ray_cylinder_intersect(origin, direction, r: float):
    """Find the first intersection of a ray with an infinite cylinder around the world y-axis.

    The ray and its origin are split into the components along and perpendicular to the axis.
    Only the perpendicular part contributes to the quadratic `|o_perp + lambda d_perp|^2 = r^2`.

    Parameters
    ----------
    origin
        Ray origin(s) with shape (3,) or (..., 3) in m
    direction
        Ray direction(s) with the same shape. They do not need to be normalized.
    r
        Radius of the cylinder in m

    Returns
    -------
    lambda
        The smallest positive ray parameter of an intersection.
        For a single ray None is returned if there is no such intersection, for multiple rays these elements are NaN.

    Examples
    --------
    >>> ray_cylinder_intersect(np.array([0.0, 0, 0]), np.array([0.0, 0, 1]), 3.0)
    3.0
    >>> ray_cylinder_intersect(np.array([0.0, 0, 0]), np.array([0.0, 1, 0]), 3.0) is None
    True

    """
    origin = np.asarray(origin, dtype=float)
    direction = np.asarray(direction, dtype=float)
    single = direction.ndim == 1 and origin.ndim == 1
    origin, direction = np.broadcast_arrays(np.atleast_2d(origin), np.atleast_2d(direction))
    shape = direction.shape[:-1]
    origin = origin.reshape(-1, 3)
    direction = direction.reshape(-1, 3)

    perp = origin - row_wise_dot(origin, WORLD_AXIS)[:, None] * WORLD_AXIS
    ray_perp = direction - row_wise_dot(direction, WORLD_AXIS)[:, None] * WORLD_AXIS
    a = row_wise_dot(ray_perp, ray_perp)
    half_b = row_wise_dot(ray_perp, perp)
    c = row_wise_dot(perp, perp) - r**2
    discr = half_b**2 - a * c

    with np.errstate(divide="ignore", invalid="ignore"):
        sqrt_discr = np.sqrt(np.where(discr >= 0, discr, np.nan))
        # Both roots without cancellation
        q = -(half_b + np.copysign(sqrt_discr, half_b))
        roots = np.stack([q / a, c / q], axis=-1)
    roots = np.where((roots > 0) & np.isfinite(roots), roots, np.inf)
    lam = np.min(roots, axis=-1)
    lam = np.where((a > 0) & np.isfinite(lam), lam, np.nan).reshape(shape)

    if single:
        value = float(lam[0])
        return None if np.isnan(value) else value
    return lam


def _pixel_grid(intr: CameraIntrinsics) -> Tuple[np.ndarray, np.ndarray]:
    v, u = np.mgrid[0 : intr.height, 0 : intr.width].astype(float)
    return u, v


def render_view(
    intr: CameraIntrinsics, pose: Pose, cyl: CylinderModel, tex: TextureSpec, cfg: RenderConfig
) -> Tuple[np.ndarray, np.ndarray]:
    """Render the view of a camera inside the textured tunnel.

    Every pixel center casts the ray `R ((u - cx) / f, (v - cy) / f, 1)` from the camera center, which is
    intersected with the wall and shaded with :func:`~tunnelstitch.simulation.surface_color`.
    The texture is sampled exactly at the hit point (no anti-aliasing).

    Returns
    -------
    image
        The float RGB image with shape (height, width, 3). Pixels without a hit are black.
    valid_mask
        True for all pixels whose ray hit the wall

    Raises
    ------
    CameraOutsideTunnelError
        If the camera center is on or outside the wall

    """
    intr.validate()
    cyl.validate()
    tex.validate()
    cfg.validate()
    pose.validate()
    t = pose.translation
    if not cyl.contains(t):
        raise CameraOutsideTunnelError(
            f"The camera center ({t[0]}, {t[1]}, {t[2]}) is on or outside the tunnel wall of radius {cyl.radius}."
        )
    u, v = _pixel_grid(intr)
    direction = pixel_to_camera_ray(intr, (u, v)) @ pose.rotation.T
    lam = ray_cylinder_intersect(t, direction, cyl.radius)
    valid = np.isfinite(lam)

    hit = t + lam[valid][:, None] * direction[valid]
    theta = wrap_to_2pi(np.arctan2(hit[:, 0], hit[:, 2]))
    image = np.zeros((intr.height, intr.width, 3))
    image[valid] = surface_color(tex, cfg, theta, hit[:, 1], normal=inward_normal(theta), radius=cyl.radius)
    return image, valid


def render_oracle_panorama(
    cyl: CylinderModel, tex: TextureSpec, cfg: RenderConfig, pano_spec: PanoramaSpec
) -> np.ndarray:
    """Render the exact unwrapped wall texture on the raster of a panorama.

    Pixel `(u, v)` shows the wall at :func:`~tunnelstitch.stitching.pano_to_cylinder` of `(u, v)`.
    No camera is involved, so this is the ground truth for stitched panoramas.

    Parameters
    ----------
    pano_spec
        A resolved panorama spec (all of `y_min`, `y_max` and `scale` set)

    """
    cyl.validate()
    tex.validate()
    cfg.validate()
    pano_spec.validate()
    if not pano_spec.is_resolved:
        raise ValueError("The oracle panorama requires a resolved panorama spec (y_min, y_max and scale set).")
    v, u = np.mgrid[0 : pano_spec.height, 0 : pano_spec.width].astype(float)
    cp = pano_to_cylinder(pano_spec, u, v)
    return surface_color(tex, cfg, cp.theta, cp.height, radius=cyl.radius)


class RayCastRenderer(BaseRenderer):
    """Render views of a textured tunnel by casting one ray per pixel.

    Parameters
    ----------
    intrinsics
        The pinhole camera
    cylinder
        The tunnel
    texture
        The texture of the tunnel wall
    render_config
        The shading
    memory
        An optional `joblib.Memory` object that can be provided to cache the renders.

    Attributes
    ----------
    image_
        The rendered float RGB image
    valid_mask_
        Pixels whose ray hit the wall

    Other Parameters
    ----------------
    pose
        The camera pose passed to the render method

    Examples
    --------
    >>> renderer = RayCastRenderer(intrinsics=CameraIntrinsics(f=50, width=64, height=48))
    >>> renderer = renderer.render(Pose.from_yaw(np.pi / 6))
    >>> renderer.image_.shape
    (48, 64, 3)

    """

    intrinsics: CameraIntrinsics
    cylinder: CylinderModel
    texture: TextureSpec
    render_config: RenderConfig
    memory: Optional[Memory]

    image_: np.ndarray
    valid_mask_: np.ndarray

    pose: Pose

    def __init__(
        self,
        intrinsics: CameraIntrinsics = cf(CameraIntrinsics()),
        cylinder: CylinderModel = cf(CylinderModel()),
        texture: TextureSpec = cf(TextureSpec()),
        render_config: RenderConfig = cf(RenderConfig()),
        memory: Optional[Memory] = None,
    ):
        self.intrinsics = intrinsics
        self.cylinder = cylinder
        self.texture = texture
        self.render_config = render_config
        self.memory = memory

    def render(self, pose: Pose, **_) -> Self:
        """Render the view of a camera with the given pose.

        Parameters
        ----------
        pose
            The camera to world pose

        Returns
        -------
        self
            The class instance with all result attributes populated

        """
        self.pose = pose

        memory = self.memory
        if memory is None:
            memory = Memory(None)

        self.image_, self.valid_mask_ = memory.cache(render_view)(
            self.intrinsics, pose, self.cylinder, self.texture, self.render_config
        )
        return self
