"""Fast scan-line rasterization of polygons using numba.

Pixel `(row, col)` is treated as the point `(x=col, y=row)`, i.e. pixel centers are at integer coordinates.
"""
import numpy as np
from numba import njit


@njit(cache=True)
def _fill_polygon(xs, ys, height, width, out):
    n = xs.shape[0]
    crossings = np.empty(n, dtype=np.float64)
    y_lo = max(int(np.ceil(np.min(ys))), 0)
    y_hi = min(int(np.floor(np.max(ys))), height - 1)
    for row in range(y_lo, y_hi + 1):
        y = float(row)
        n_cross = 0
        for k in range(n):
            x0 = xs[k]
            y0 = ys[k]
            x1 = xs[(k + 1) % n]
            y1 = ys[(k + 1) % n]
            # Half open rule, so shared vertices are only counted once
            if (y0 <= y < y1) or (y1 <= y < y0):
                crossings[n_cross] = x0 + (y - y0) * (x1 - x0) / (y1 - y0)
                n_cross += 1
        if n_cross < 2:
            continue
        cross = np.sort(crossings[:n_cross])
        for k in range(0, n_cross - 1, 2):
            c_lo = max(int(np.ceil(cross[k])), 0)
            c_hi = min(int(np.floor(cross[k + 1])), width - 1)
            for col in range(c_lo, c_hi + 1):
                out[row, col] = True
    return out


def rasterize_polygon(polygon: np.ndarray, height: int, width: int, out: np.ndarray = None) -> np.ndarray:
    """Mark all pixel centers inside a polygon using the even-odd rule.

    Parameters
    ----------
    polygon
        Vertices with shape (n, 2) as (x, y) pairs. The polygon is closed implicitly.
    height
        The height of the output mask
    width
        The width of the output mask
    out
        Optional mask with shape (height, width) the polygon is added to (logical or).

    Returns
    -------
    mask
        Boolean mask with shape (height, width)

    Examples
    --------
    >>> rasterize_polygon(np.array([[0.5, 0.5], [2.5, 0.5], [2.5, 1.5], [0.5, 1.5]]), 3, 4).astype(int)
    array([[0, 0, 0, 0],
           [0, 1, 1, 0],
           [0, 0, 0, 0]])

    """
    if out is None:
        out = np.zeros((height, width), dtype=np.bool_)
    polygon = np.asarray(polygon, dtype=np.float64)
    if polygon.ndim != 2 or polygon.shape[1] != 2:
        raise ValueError(f"The polygon is expected to have the shape (n, 2). But it has {polygon.shape}.")
    polygon = polygon[np.all(np.isfinite(polygon), axis=1)]
    if polygon.shape[0] < 3 or height < 1 or width < 1:
        return out
    return _fill_polygon(
        np.ascontiguousarray(polygon[:, 0]), np.ascontiguousarray(polygon[:, 1]), int(height), int(width), out
    )
