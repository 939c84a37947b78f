"""UV mapped tunnel meshes."""
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Tuple, Union

import numpy as np
from typing_extensions import Self

from tunnelstitch.base import BaseParameters
from tunnelstitch.utils.consts import MAX_SPAN_TURN_DEG, WORLD_AXIS
from tunnelstitch.utils.exceptions import MeshError, ParseError
from tunnelstitch.utils.rotations import find_shortest_rotation, find_unsigned_3d_angle
from tunnelstitch.utils.vector_math import normalize, row_wise_dot

PathLike = Union[str, Path]

#: Note added to the geometry file of curved tunnels
CURVED_TUNNEL_NOTE = (
    "visual-only: the texture is a panorama of a straight tunnel, stretched along the curve by arclength"
)


class TunnelCurve(BaseParameters):
    """The center line of a tunnel as a polyline.

    Parameters
    ----------
    waypoints
        Array with shape (n, 3) of points in m. At least 2, consecutive points must differ.

    """

    def __init__(self, waypoints: Optional[np.ndarray] = None):
        self.waypoints = waypoints

    @property
    def points(self) -> np.ndarray:
        """The waypoints as float array with shape (n, 3)."""
        return np.asarray(self.waypoints, dtype=float).reshape(-1, 3)

    def span_lengths(self) -> np.ndarray:
        """Length of each straight span in m."""
        return np.linalg.norm(np.diff(self.points, axis=0), axis=1)

    def validate(self) -> Self:
        """Check for at least 2 distinct consecutive waypoints and no span reversal."""
        if self.waypoints is None:
            raise MeshError("A tunnel curve needs waypoints.")
        points = np.asarray(self.waypoints, dtype=float)
        if points.ndim != 2 or points.shape[1] != 3 or not np.all(np.isfinite(points)):
            raise MeshError(f"The waypoints must be a finite array with shape (n, 3). Got shape {points.shape}.")
        if len(points) < 2:
            raise MeshError(f"A tunnel curve needs at least 2 waypoints. Got {len(points)}.")
        lengths = self.span_lengths()
        if np.any(lengths == 0):
            empty = np.flatnonzero(lengths == 0).tolist()
            raise MeshError(f"Consecutive waypoints must differ. Spans {empty} are empty.")
        directions = np.diff(points, axis=0) / lengths[:, None]
        if len(directions) > 1:
            turns = np.rad2deg(np.atleast_1d(find_unsigned_3d_angle(directions[:-1], directions[1:])))
            reversals = np.flatnonzero(turns >= MAX_SPAN_TURN_DEG)
            if reversals.size:
                raise MeshError(
                    f"The curve reverses at waypoint(s) {(reversals + 1).tolist()} "
                    f"(turn of {turns[reversals].round(1).tolist()} deg, limit {MAX_SPAN_TURN_DEG} deg)."
                )
        return self


@dataclass
class TunnelMesh:
    """A triangle mesh of a tunnel wall with texture coordinates.

    Parameters
    ----------
    vertices
        Array with shape (n, 3) in m
    uv
        Texture coordinates with shape (n, 2) in [0, 1]
    normals
        Unit normals with shape (n, 3), pointing into the tunnel
    faces
        Vertex indices (0 based) with shape (m, 3)
    material_name
        Name of the material that holds the panorama texture
    comment
        Optional note written into the header of the geometry file

    """

    vertices: np.ndarray
    uv: np.ndarray
    normals: np.ndarray
    faces: np.ndarray
    material_name: str = "tunnel_wall"
    comment: str = ""

    def validate(self) -> Self:
        """Check shapes, face indices and the UV range."""
        n = len(self.vertices)
        if self.vertices.shape != (n, 3) or self.uv.shape != (n, 2) or self.normals.shape != (n, 3):
            raise MeshError("vertices, uv and normals need the shapes (n, 3), (n, 2) and (n, 3).")
        if self.faces.ndim != 2 or self.faces.shape[1] != 3:
            raise MeshError(f"faces needs the shape (m, 3). Got {self.faces.shape}.")
        if self.faces.size and (self.faces.min() < 0 or self.faces.max() >= n):
            raise MeshError(f"Face indices must be in [0, {n}).")
        if np.any(self.uv < 0) or np.any(self.uv > 1):
            raise MeshError("All texture coordinates must be in [0, 1].")
        return self


def _ring_grid(radial_segments: int) -> Tuple[np.ndarray, np.ndarray]:
    j = np.arange(radial_segments + 1)
    theta = 2 * np.pi * j / radial_segments
    # Exact seam duplicate
    theta[-1] = 0.0
    return j / radial_segments, theta


def _faces(radial_segments: int, n_rings: int) -> np.ndarray:
    stride = radial_segments + 1
    k, j = np.meshgrid(np.arange(n_rings - 1), np.arange(radial_segments), indexing="ij")
    a = (k * stride + j).ravel()
    b = a + 1
    c = a + stride
    d = c + 1
    # Counter-clockwise when seen from the tunnel axis
    return np.concatenate([np.stack([a, c, b], axis=1), np.stack([b, c, d], axis=1)]).reshape(-1, 3)


def _check_segments(r: float, radial_segments: int, axial_segments: int, axial_name: str):
    if not (np.isfinite(r) and r > 0):
        raise MeshError(f"The tunnel radius must be positive. Got {r}.")
    if int(radial_segments) != radial_segments or radial_segments < 3:
        raise MeshError(f"At least 3 radial segments are required. Got {radial_segments}.")
    if int(axial_segments) != axial_segments or axial_segments < 1:
        raise MeshError(f"At least 1 {axial_name} is required. Got {axial_segments}.")


def build_straight_mesh(r: float, length: float, radial_segments: int = 64, axial_segments: int = 16) -> TunnelMesh:
    """Build a straight hollow cylinder along the world y-axis from y=0 to y=length.

    Vertex `j` of ring `k` lies at `(r sin(theta), y_k, r cos(theta))` with `theta = 2 pi j / radial_segments` and
    has the texture coordinate `(j / radial_segments, k / axial_segments)`.
    The first vertex of each ring is duplicated at the end with `u = 1` to close the texture seam.

    Examples
    --------
    >>> mesh = build_straight_mesh(3.0, 1.0, radial_segments=3, axial_segments=1)
    >>> len(mesh.vertices), len(mesh.faces)
    (8, 6)

    """
    _check_segments(r, radial_segments, axial_segments, "axial segment")
    if not (np.isfinite(length) and length > 0):
        raise MeshError(f"The tunnel length must be positive. Got {length}.")
    u, theta = _ring_grid(radial_segments)
    v = np.arange(axial_segments + 1) / axial_segments
    y = v * length

    vv, uu = np.meshgrid(v, u, indexing="ij")
    yy, tt = np.meshgrid(y, theta, indexing="ij")
    vertices = np.stack([r * np.sin(tt), yy, r * np.cos(tt)], axis=-1).reshape(-1, 3)
    normals = -np.stack([np.sin(tt), np.zeros_like(tt), np.cos(tt)], axis=-1).reshape(-1, 3)
    uv = np.stack([uu, vv], axis=-1).reshape(-1, 2)
    return TunnelMesh(vertices, uv, normals, _faces(radial_segments, axial_segments + 1))


def _initial_frame(direction: np.ndarray) -> np.ndarray:
    """Rows are the ring axes for sin(theta) and cos(theta), rotated from the straight tunnel (x and z)."""
    rot = find_shortest_rotation(WORLD_AXIS, direction)
    return rot.apply(np.array([[1.0, 0.0, 0.0], [0.0, 0.0, 1.0]]))


def _ring_offsets(frame: np.ndarray, theta: np.ndarray) -> np.ndarray:
    return np.sin(theta)[:, None] * frame[0] + np.cos(theta)[:, None] * frame[1]


def build_curved_mesh(
    curve: TunnelCurve, r: float, radial_segments: int = 64, segments_per_span: int = 16
) -> TunnelMesh:
    """Sweep a hollow cylinder along a polyline.

    Each span is a straight cylinder.
    The ring frame of the first span is the straight tunnel frame rotated onto the first span direction.
    At every joint it is rotated by the smallest rotation between the two span directions (parallel transport), so
    planar curves do not twist.
    The ring at a joint lies in the plane bisecting both spans and is shared by both, so the wall is closed at the
    joint.
    The texture coordinate `v` is the arclength along the center line divided by the total length.

    Parameters
    ----------
    curve
        The center line
    r
        The tunnel radius in m
    radial_segments
        Segments around the tunnel
    segments_per_span
        Segments along each straight span

    Raises
    ------
    MeshError
        For invalid parameters and curves that turn back by `MAX_SPAN_TURN_DEG` or more

    """
    _check_segments(r, radial_segments, segments_per_span, "segment per span")
    curve.validate()
    points = curve.points
    lengths = curve.span_lengths()
    directions = np.diff(points, axis=0) / lengths[:, None]
    arclength = np.concatenate([[0.0], np.cumsum(lengths)])
    total = arclength[-1]
    u, theta = _ring_grid(radial_segments)
    fractions = np.arange(segments_per_span + 1) / segments_per_span

    frame = _initial_frame(directions[0])
    rings = []
    ring_normals = []
    ring_v = []
    for i, (start, direction) in enumerate(zip(points[:-1], directions)):
        span = points[i + 1] - start
        offsets = r * _ring_offsets(frame, theta)
        # The first ring of all but the first span is the joint ring of the previous span
        first = 0 if i == 0 else 1
        last = segments_per_span if i == len(directions) - 1 else segments_per_span - 1
        for m in range(first, last + 1):
            rings.append(start + fractions[m] * span + offsets)
            ring_normals.append(-offsets / r)
            ring_v.append((arclength[i] + fractions[m] * lengths[i]) / total)
        if i == len(directions) - 1:
            break
        next_direction = directions[i + 1]
        bisector = normalize(direction + next_direction)
        joint = points[i + 1]
        # Move the ring along the incoming span onto the bisecting plane
        shift = -row_wise_dot(offsets, bisector) / np.dot(direction, bisector)
        rings.append(joint + offsets + shift[:, None] * direction)
        ring_normals.append(-offsets / r)
        ring_v.append(arclength[i + 1] / total)
        frame = find_shortest_rotation(direction, next_direction).apply(frame)

    vertices = np.concatenate(rings)
    normals = normalize(np.concatenate(ring_normals))
    uv = np.stack(np.meshgrid(u, np.clip(ring_v, 0.0, 1.0), indexing="xy"), axis=-1).reshape(-1, 2)
    return TunnelMesh(
        vertices, uv, normals, _faces(radial_segments, len(rings)), comment=CURVED_TUNNEL_NOTE
    )


def load_curve(path: PathLike) -> TunnelCurve:
    """Read a tunnel center line from a text file with one `x y z` triple (in m) per line.

    Lines starting with `#` and empty lines are ignored.

    Raises
    ------
    ParseError
        If a line does not hold exactly three numbers
    MeshError
        If the curve is invalid

    """
    path = Path(path)
    points: List[List[float]] = []
    for line_number, line in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if len(tokens) != 3:
            raise ParseError(f"Expected 3 coordinates (x y z), got {len(tokens)}.", path, line_number)
        try:
            points.append([float(t) for t in tokens])
        except ValueError as e:
            raise ParseError(f"Invalid coordinate: {e}", path, line_number) from e
    return TunnelCurve(np.array(points).reshape(-1, 3)).validate()
