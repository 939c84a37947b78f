"""Procedural wall textures and shading of the tunnel."""
from typing import Optional, Tuple

import numpy as np
from typing_extensions import Literal, Self

from tunnelstitch.base import BaseParameters
from tunnelstitch.geometry import wrap_to_2pi
from tunnelstitch.utils.consts import DOWN_LIGHT_DIRECTION, SHADING_MODES, TEXTURE_KINDS
from tunnelstitch.utils.exceptions import ValidationError
from tunnelstitch.utils.rotations import angle_diff

Color = Tuple[float, float, float]

#: Allowed deviation of 2pi / tile_theta from an integer
_SEAMLESS_TOL = 1e-9


class TextureSpec(BaseParameters):
    """A procedural texture painted on the tunnel wall.

    All textures are defined in wall coordinates (azimuth and height), so they are seamless around the tunnel if an
    integer number of tiles fits the circumference.

    Parameters
    ----------
    kind
        "checkerboard": alternating tiles of the primary and the secondary color.
        "brick": bricks of the primary color separated by mortar of the secondary color, every second row shifted by
        half a brick.
        "solid": the primary color everywhere.
    tile_theta
        Width of a tile (brick) in rad. `2 pi / tile_theta` must be an integer.
    tile_y
        Height of a tile (brick row) in m
    primary
        RGB color in [0, 1]
    secondary
        RGB color in [0, 1]
    mortar_fraction
        Fraction of a brick (in both directions) covered by mortar. Only used for bricks.
    fault_marks
        Synthetic defects painted over the texture.
        Each mark is a tuple `(theta, y, radius, r, g, b)` describing a disk with `radius` in m around the wall point
        `(theta, y)`.

    """

    def __init__(
        self,
        kind: Literal["checkerboard", "brick", "solid"] = "checkerboard",
        tile_theta: float = 2 * np.pi / 16,
        tile_y: float = 1.0,
        primary: Color = (0.60, 0.55, 0.50),
        secondary: Color = (0.45, 0.40, 0.38),
        mortar_fraction: float = 0.08,
        fault_marks: Tuple[Tuple[float, ...], ...] = (),
    ):
        self.kind = kind
        self.tile_theta = tile_theta
        self.tile_y = tile_y
        self.primary = primary
        self.secondary = secondary
        self.mortar_fraction = mortar_fraction
        self.fault_marks = fault_marks

    @property
    def n_tiles_around(self) -> int:
        """Number of tiles around the circumference."""
        return int(round(2 * np.pi / self.tile_theta))

    def validate(self) -> Self:
        """Check the texture kind, a seamless tile width, positive tile sizes and valid colors."""
        if self.kind not in TEXTURE_KINDS:
            raise ValidationError(f"The texture kind must be one of {TEXTURE_KINDS}. Got {self.kind}.")
        if not (np.isfinite(self.tile_theta) and self.tile_theta > 0):
            raise ValidationError(f"tile_theta must be positive. Got {self.tile_theta}.")
        n = 2 * np.pi / self.tile_theta
        if abs(n - round(n)) > _SEAMLESS_TOL * max(n, 1.0):
            raise ValidationError(
                f"2pi / tile_theta must be an integer for a seamless texture. Got {n} tiles around the tunnel."
            )
        if not (np.isfinite(self.tile_y) and self.tile_y > 0):
            raise ValidationError(f"tile_y must be positive. Got {self.tile_y}.")
        for name in ("primary", "secondary"):
            color = np.asarray(getattr(self, name), dtype=float)
            if color.shape != (3,) or np.any(color < 0) or np.any(color > 1):
                raise ValidationError(f"The {name} color must be 3 values in [0, 1]. Got {getattr(self, name)}.")
        if not 0 <= self.mortar_fraction < 0.5:
            raise ValidationError(f"mortar_fraction must be in [0, 0.5). Got {self.mortar_fraction}.")
        for mark in self.fault_marks:
            mark = np.asarray(mark, dtype=float)
            if mark.shape != (6,) or mark[2] <= 0 or np.any(mark[3:] < 0) or np.any(mark[3:] > 1):
                raise ValidationError(
                    "Each fault mark must be (theta, y, radius, r, g, b) with a positive radius and a color in "
                    f"[0, 1]. Got {tuple(mark)}."
                )
        return self

    def vertical_edges(self) -> np.ndarray:
        """Azimuths of all tile edges along the tunnel (checkerboard)."""
        return np.arange(self.n_tiles_around) * (2 * np.pi / self.n_tiles_around)

    def horizontal_edges(self, y_min: float, y_max: float) -> np.ndarray:
        """Heights of all tile edges around the tunnel inside (y_min, y_max)."""
        first = np.floor(y_min / self.tile_y) + 1
        last = np.ceil(y_max / self.tile_y) - 1
        return np.arange(first, last + 1) * self.tile_y


class RenderConfig(BaseParameters):
    """The shading of the rendered wall.

    Parameters
    ----------
    shading
        "unlit" shows the plain texture.
        "lambertian-downward" multiplies the texture with `max(0, n . (-light_direction))`, where `n` is the wall
        normal pointing into the tunnel.
        The default light travels along +z, which is the floor direction (theta = 0), so the floor is bright and the
        ceiling dark.
    light_direction
        The unit direction the light travels in (world frame)
    ambient
        Constant light added to the lambertian term: `ambient + (1 - ambient) * lambert`

    """

    def __init__(
        self,
        shading: Literal["unlit", "lambertian-downward"] = "unlit",
        light_direction: Tuple[float, float, float] = DOWN_LIGHT_DIRECTION,
        ambient: float = 0.0,
    ):
        self.shading = shading
        self.light_direction = light_direction
        self.ambient = ambient

    def validate(self) -> Self:
        """Check the shading mode and a unit light direction."""
        if self.shading not in SHADING_MODES:
            raise ValidationError(f"The shading must be one of {SHADING_MODES}. Got {self.shading}.")
        light = np.asarray(self.light_direction, dtype=float)
        if light.shape != (3,) or not np.isclose(np.linalg.norm(light), 1.0, rtol=0, atol=1e-9):
            raise ValidationError(f"The light direction must be a unit 3-vector. Got {self.light_direction}.")
        if not 0 <= self.ambient <= 1:
            raise ValidationError(f"The ambient light must be in [0, 1]. Got {self.ambient}.")
        return self


def inward_normal(theta) -> np.ndarray:
    """The wall normal pointing towards the tunnel axis."""
    theta = np.asarray(theta, dtype=float)
    return -np.stack([np.sin(theta), np.zeros_like(theta), np.cos(theta)], axis=-1)


def _texture_color(tex: TextureSpec, theta: np.ndarray, y: np.ndarray) -> np.ndarray:
    primary = np.asarray(tex.primary, dtype=float)
    secondary = np.asarray(tex.secondary, dtype=float)
    if tex.kind == "solid":
        return np.broadcast_to(primary, theta.shape + (3,)).copy()
    n = tex.n_tiles_around
    pos_theta = theta / (2 * np.pi) * n
    pos_y = y / tex.tile_y
    row = np.floor(pos_y)
    if tex.kind == "checkerboard":
        col = np.mod(np.floor(pos_theta), n)
        is_primary = np.mod(col + row, 2) == 0
    else:
        # Every second row is shifted by half a brick
        shifted = pos_theta + 0.5 * np.mod(row, 2)
        frac_theta = shifted - np.floor(shifted)
        frac_y = pos_y - row
        is_primary = (frac_theta >= tex.mortar_fraction) & (frac_y >= tex.mortar_fraction)
    return np.where(is_primary[..., None], primary, secondary)


def _paint_fault_marks(tex: TextureSpec, color: np.ndarray, theta: np.ndarray, y: np.ndarray, radius: float):
    for mark in tex.fault_marks:
        m_theta, m_y, m_radius = mark[:3]
        arc = angle_diff(theta, m_theta) * radius
        inside = arc**2 + (y - m_y) ** 2 <= m_radius**2
        color[inside] = np.asarray(mark[3:], dtype=float)
    return color


def surface_color(
    tex: TextureSpec,
    cfg: RenderConfig,
    theta,
    y,
    normal: Optional[np.ndarray] = None,
    radius: Optional[float] = None,
) -> np.ndarray:
    """Calculate the color of the wall at the given wall coordinates.

    The texture is sampled at the exact position (no filtering), so the result is periodic in theta with 2pi.

    Parameters
    ----------
    tex
        The texture
    cfg
        The shading
    theta
        Azimuth(s) in rad
    y
        Height(s) in m
    normal
        Wall normal(s) with shape (..., 3) used for shading.
        If None, the inward normal of the cylinder is used.
    radius
        The tunnel radius in m.
        Only required if the texture has fault marks, as their size is given in m.

    Returns
    -------
    color
        RGB values with shape theta.shape + (3,)

    Examples
    --------
    >>> tex = TextureSpec(tile_theta=np.pi / 2, tile_y=1.0, primary=(1.0, 1.0, 1.0), secondary=(0.0, 0.0, 0.0))
    >>> surface_color(tex, RenderConfig(), 0.1, 0.1)
    array([1., 1., 1.])
    >>> surface_color(tex, RenderConfig(), 0.1 + np.pi / 2, 0.1)
    array([0., 0., 0.])

    """
    theta, y = np.broadcast_arrays(np.asarray(wrap_to_2pi(theta), dtype=float), np.asarray(y, dtype=float))
    color = _texture_color(tex, theta, y)
    if tex.fault_marks:
        if radius is None:
            raise ValueError("The tunnel radius is required to paint fault marks.")
        color = _paint_fault_marks(tex, color, theta, y, radius)
    if cfg.shading == "lambertian-downward":
        if normal is None:
            normal = inward_normal(theta)
        lambert = np.clip(np.asarray(normal, dtype=float) @ -np.asarray(cfg.light_direction, dtype=float), 0, None)
        color = color * (cfg.ambient + (1 - cfg.ambient) * lambert)[..., None]
    return np.clip(color, 0.0, 1.0)


def checkerboard_edges(tex: TextureSpec, spec) -> Tuple[np.ndarray, np.ndarray, Tuple[float, float]]:
    """Expected tile edge positions of a texture in a resolved panorama.

    Returns
    -------
    vertical_edges
        Columns of the edges along the tunnel
    horizontal_edges
        Rows of the edges around the tunnel
    tile_size
        (columns, rows) of a single tile

    """
    vertical = spec.width * tex.vertical_edges() / (2 * np.pi)
    horizontal = (tex.horizontal_edges(spec.y_min, spec.y_max) - spec.y_min) * spec.scale
    # Edges lie between two pixel centers
    return vertical - 0.5, horizontal - 0.5, (spec.width / tex.n_tiles_around, tex.tile_y * spec.scale)
