"""Straightness of the tile edges of a stitched checkerboard."""
from typing import NamedTuple, Optional, Sequence, Tuple

import numpy as np

#: ITU-R BT.601 luma weights
_LUMA = np.array([0.299, 0.587, 0.114])


class EdgeStraightness(NamedTuple):
    """Largest deviation of stitched tile edges from a straight line in panorama pixels.

    Parameters
    ----------
    vertical
        Largest deviation over all edges along the tunnel (constant azimuth)
    horizontal
        Largest deviation over all edges around the tunnel (constant height)
    overall
        The larger of both values
    n_edges
        Number of edges that could be measured
    max_deviation
        Largest full range (max - min) of the detected positions of any edge.
        Unlike the other values it includes single outlier samples.

    """

    vertical: float
    horizontal: float
    overall: float
    n_edges: int
    max_deviation: float


def _edge_positions(luma: np.ndarray, valid: np.ndarray, min_step: float) -> np.ndarray:
    """Sub-pixel step position in each row of `luma` (window relative).

    The position is the centroid of the absolute first difference.
    Rows with invalid pixels or without a clear step are NaN.
    """
    grad = np.abs(np.diff(luma, axis=1))
    total = grad.sum(axis=1)
    centers = np.arange(grad.shape[1]) + 0.5
    with np.errstate(divide="ignore", invalid="ignore"):
        pos = (grad * centers).sum(axis=1) / total
    ok = np.all(valid, axis=1) & (np.max(grad, axis=1) >= min_step)
    return np.where(ok, pos, np.nan)


def _deviation(positions: np.ndarray, min_samples: int) -> Tuple[float, float]:
    """Robust (2.5th to 97.5th percentile) and full range of the positions."""
    positions = positions[np.isfinite(positions)]
    if positions.size < min_samples:
        return np.nan, np.nan
    lo, hi = np.percentile(positions, [2.5, 97.5])
    return float(hi - lo), float(np.ptp(positions))


def _family_deviation(
    luma: np.ndarray,
    coverage: np.ndarray,
    edges: Sequence[float],
    crossings: Sequence[float],
    window: int,
    crossing_margin: float,
    min_step: float,
    min_samples: int,
    wrap: bool,
) -> Tuple[Optional[float], Optional[float], int]:
    """Measure edges along the columns of `luma` (each edge is a column position, samples are rows).

    Returns the largest robust and the largest full deviation over all edges and the number of measured edges.
    """
    n_rows, n_cols = luma.shape
    crossings = np.asarray(crossings, dtype=float)
    rows = np.arange(n_rows)
    if crossings.size:
        near_crossing = np.min(np.abs(rows[:, None] - crossings[None, :]), axis=1) <= crossing_margin
    else:
        near_crossing = np.zeros(n_rows, dtype=bool)
    deviations = []
    full_deviations = []
    for edge in edges:
        cols = np.arange(int(np.floor(edge)) - window + 1, int(np.floor(edge)) + window + 1)
        if wrap:
            cols = np.mod(cols, n_cols)
        elif cols[0] < 0 or cols[-1] >= n_cols:
            continue
        positions = _edge_positions(luma[:, cols], coverage[:, cols], min_step)
        positions[near_crossing] = np.nan
        dev, full = _deviation(positions, min_samples)
        if np.isfinite(dev):
            deviations.append(dev)
            full_deviations.append(full)
    if not deviations:
        return None, None, 0
    return float(np.max(deviations)), float(np.max(full_deviations)), len(deviations)


def edge_straightness(
    image: np.ndarray,
    coverage: np.ndarray,
    vertical_edges: Sequence[float],
    horizontal_edges: Sequence[float],
    tile_size: Sequence[float],
    min_step: float = 0.03,
    min_samples: int = 10,
) -> EdgeStraightness:
    """Measure how straight the tile edges of a stitched checkerboard are.

    For every expected edge, the step position is detected in each row (vertical edges) or column (horizontal
    edges) of a window around the expected position.
    The window is smaller than half a tile, so only this edge is inside.
    Samples close to a crossing edge and windows that are not fully covered are ignored.
    The deviation of an edge is the range of its detected positions between the 2.5th and the 97.5th percentile,
    which is insensitive to single outliers.
    The largest full range is reported as well (`max_deviation`).

    Parameters
    ----------
    image
        The stitched panorama image with shape (height, width, 3)
    coverage
        Boolean coverage of the panorama
    vertical_edges
        Expected column positions of edges along the tunnel (in panorama pixels, pixel centers at integers)
    horizontal_edges
        Expected row positions of edges around the tunnel
    tile_size
        (columns, rows) size of a tile in panorama pixels
    min_step
        Smallest luminance step per pixel that counts as an edge
    min_samples
        Edges with fewer valid samples are ignored

    Returns
    -------
    EdgeStraightness
        The deviations are NaN if no edge of the respective family could be measured

    """
    luma = np.asarray(image, dtype=float) @ _LUMA
    coverage = np.asarray(coverage, dtype=bool)
    win_u = max(int(0.4 * tile_size[0]), 2)
    win_v = max(int(0.4 * tile_size[1]), 2)

    vertical, vertical_max, n_vertical = _family_deviation(
        luma, coverage, vertical_edges, horizontal_edges, win_u, 0.25 * tile_size[1], min_step, min_samples, wrap=True
    )
    horizontal, horizontal_max, n_horizontal = _family_deviation(
        luma.T,
        coverage.T,
        horizontal_edges,
        vertical_edges,
        win_v,
        0.25 * tile_size[0],
        min_step,
        min_samples,
        wrap=False,
    )
    values = [v for v in (vertical, horizontal) if v is not None]
    full = [v for v in (vertical_max, horizontal_max) if v is not None]
    return EdgeStraightness(
        vertical=np.nan if vertical is None else vertical,
        horizontal=np.nan if horizontal is None else horizontal,
        overall=float(np.max(values)) if values else np.nan,
        n_edges=n_vertical + n_horizontal,
        max_deviation=float(np.max(full)) if full else np.nan,
    )
