"""The cylindrical panorama raster and its mapping onto the tunnel wall."""
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from typing_extensions import Self

from tunnelstitch.base import BaseParameters
from tunnelstitch.geometry import CylinderModel, CylinderPoint, wrap_to_2pi
from tunnelstitch.utils.exceptions import ValidationError


class PanoramaSpec(BaseParameters):
    """The raster of an unwrapped tunnel wall.

    Column `u` of the panorama corresponds to the azimuth `theta = 2 pi u / width`, row `v` to the world height
    `y = y_min + v / scale`.
    The panorama has `round((y_max - y_min) * scale)` rows.

    Parameters
    ----------
    width
        Number of columns spanning theta in [0, 2pi)
    y_min
        Lower end of the height band in m.
        If None, it is derived from the frames (see :func:`~tunnelstitch.stitching.resolve_panorama_spec`).
    y_max
        Upper end of the height band in m.
        If None, it is derived from the frames.
    scale
        Rows per m.
        If None, `width / (2 pi r)` is used, which samples the wall with the same density along both directions.

    """

    def __init__(
        self,
        width: int = 1200,
        y_min: Optional[float] = None,
        y_max: Optional[float] = None,
        scale: Optional[float] = None,
    ):
        self.width = width
        self.y_min = y_min
        self.y_max = y_max
        self.scale = scale

    @property
    def is_resolved(self) -> bool:
        """True if the band and the scale are set."""
        return self.y_min is not None and self.y_max is not None and self.scale is not None

    @property
    def height(self) -> int:
        """The number of rows. Only available for resolved specs."""
        if not self.is_resolved:
            raise ValueError("The panorama height is only defined after `y_min`, `y_max` and `scale` are set.")
        return int(round((self.y_max - self.y_min) * self.scale))

    @property
    def shape(self) -> Tuple[int, int]:
        """(height, width) of the raster."""
        return self.height, int(self.width)

    def validate(self) -> Self:
        """Check width >= 1, y_max > y_min and scale > 0 for all values that are set."""
        if int(self.width) != self.width or self.width < 1:
            raise ValidationError(f"The panorama width must be a positive integer. Got {self.width}.")
        if self.y_min is not None and self.y_max is not None and not self.y_max > self.y_min:
            raise ValidationError(f"y_max ({self.y_max}) must be larger than y_min ({self.y_min}).")
        if self.scale is not None and not (np.isfinite(self.scale) and self.scale > 0):
            raise ValidationError(f"The panorama scale must be positive. Got {self.scale}.")
        if self.is_resolved and self.height < 1:
            raise ValidationError("The panorama band is thinner than a single row.")
        return self

    def default_scale(self, cyl: CylinderModel) -> float:
        """The scale with equal sampling density around and along the tunnel."""
        return float(self.width / (2 * np.pi * cyl.radius))


def pano_to_cylinder(spec: PanoramaSpec, u, v) -> CylinderPoint:
    """Map panorama coordinates to the wall (azimuth wraps around, height is not clipped).

    Examples
    --------
    >>> pano_to_cylinder(PanoramaSpec(width=1200, y_min=0.0, y_max=1.0, scale=100.0), 600.0, 50.0)
    CylinderPoint(theta=3.141592653589793, height=0.5)

    """
    theta = wrap_to_2pi(2 * np.pi * np.asarray(u, dtype=float) / spec.width)
    height = spec.y_min + np.asarray(v, dtype=float) / spec.scale
    if np.ndim(height) == 0:
        height = float(height)
    return CylinderPoint(theta, height)


def cylinder_to_pano(spec: PanoramaSpec, cp) -> Tuple:
    """Map a wall point to panorama coordinates.

    `u` is in [0, width) and increases with theta.
    Heights outside [y_min, y_max] give rows outside the raster, which the caller needs to clip.
    """
    u = spec.width * np.asarray(wrap_to_2pi(cp[0]), dtype=float) / (2 * np.pi)
    u = np.where(u >= spec.width, 0.0, u)
    v = (np.asarray(cp[1], dtype=float) - spec.y_min) * spec.scale
    if np.ndim(u) == 0:
        return float(u), float(v)
    return u, v


@dataclass
class Panorama:
    """The accumulation buffers of a stitched panorama.

    Parameters
    ----------
    spec
        The resolved panorama spec
    color
        Sum of the feather weighted colors with shape (height, width, 3)
    weight
        Sum of the feather weights with shape (height, width)
    boundary_mask
        Union of the rasterized forward warped boundaries of all frames

    """

    spec: PanoramaSpec
    color: Optional[np.ndarray] = None
    weight: Optional[np.ndarray] = None
    boundary_mask: Optional[np.ndarray] = None

    def __post_init__(self):
        shape = self.spec.shape
        if self.color is None:
            self.color = np.zeros(shape + (3,))
        if self.weight is None:
            self.weight = np.zeros(shape)
        if self.boundary_mask is None:
            self.boundary_mask = np.zeros(shape, dtype=bool)
        if self.color.shape != shape + (3,) or self.weight.shape != shape or self.boundary_mask.shape != shape:
            raise ValidationError(f"All panorama buffers need to match the raster shape {shape}.")

    @property
    def coverage(self) -> np.ndarray:
        """Pixels that received any contribution (weight > 0)."""
        return self.weight > 0

    @property
    def image(self) -> np.ndarray:
        """The normalized colors. Uncovered pixels are black."""
        coverage = self.coverage
        out = np.zeros_like(self.color)
        out[coverage] = self.color[coverage] / self.weight[coverage][:, None]
        return np.clip(out, 0.0, 1.0)
