"""Image quality scores of stitched panoramas."""
import math
from typing import Optional, Union

import numpy as np

from tunnelstitch.utils.datatype_helper import is_mask


def _split_panorama(image):
    """Accept either a plain image or a panorama object (with `image` and `coverage`)."""
    if isinstance(image, np.ndarray):
        return image, None
    return image.image, image.coverage


def psnr(
    image,
    reference: np.ndarray,
    mask: Optional[np.ndarray] = None,
    max_value: float = 1.0,
) -> float:
    """Compute the peak signal-to-noise ratio between two images over a mask.

    The PSNR is `10 log10(max_value^2 / MSE)`, where the MSE is averaged over all masked pixels and color channels.

    Parameters
    ----------
    image
        Float RGB image with shape (height, width, 3) or a :class:`~tunnelstitch.stitching.Panorama`.
        For a panorama, its normalized image is used and the default mask is its coverage.
    reference
        The reference image with the same shape
    mask
        Boolean mask of the pixels to compare.
        If None, the coverage of a panorama or all pixels of a plain image are used.
    max_value
        The largest possible pixel value

    Returns
    -------
    psnr
        The PSNR in dB. `math.inf` if the images are identical within the mask.

    Raises
    ------
    ValueError
        If the shapes of the inputs do not match or the mask is empty

    Examples
    --------
    >>> ref = np.full((2, 2, 3), 0.5)
    >>> round(psnr(ref + 1 / 255, ref, max_value=1.0), 2)
    48.13
    >>> psnr(ref, ref)
    inf

    """
    image, coverage = _split_panorama(image)
    image = np.asarray(image, dtype=float)
    reference = np.asarray(reference, dtype=float)
    if image.shape != reference.shape:
        raise ValueError(f"The image shape {image.shape} does not match the reference shape {reference.shape}.")
    if mask is None:
        mask = coverage if coverage is not None else np.ones(image.shape[:2], dtype=bool)
    is_mask(mask, height=image.shape[0], width=image.shape[1], raise_exception=True)
    if not np.any(mask):
        raise ValueError("The PSNR is undefined for an empty mask.")
    mse = float(np.mean((image[mask] - reference[mask]) ** 2))
    if mse == 0:
        return math.inf
    return 10 * math.log10(max_value**2 / mse)


def coverage_fraction(coverage, region: Optional[np.ndarray] = None) -> float:
    """Calculate the fraction of a region that is covered.

    Parameters
    ----------
    coverage
        Boolean coverage mask or a :class:`~tunnelstitch.stitching.Panorama`
    region
        The region of interest.
        If None, the boundary mask of a panorama or the full image of a plain mask is used.

    Examples
    --------
    >>> coverage_fraction(np.array([[True, False], [True, True]]))
    0.75

    """
    if not isinstance(coverage, np.ndarray):
        if region is None:
            region = coverage.boundary_mask
        coverage = coverage.coverage
    if region is None:
        region = np.ones_like(coverage, dtype=bool)
    n_region = int(np.sum(region))
    if n_region == 0:
        return 0.0
    return float(np.sum(coverage & region) / n_region)


def complete_band(boundary_mask: np.ndarray) -> np.ndarray:
    """Return a mask of all rows that are inside the boundaries along the full circumference."""
    rows = np.all(boundary_mask, axis=1)
    return np.repeat(rows[:, None], boundary_mask.shape[1], axis=1)


def band_coverage_fraction(pano) -> float:
    """Fraction of the rows that are enclosed by the frame boundaries all around the tunnel that is covered."""
    region = complete_band(pano.boundary_mask)
    return coverage_fraction(pano.coverage, region)


def joint_mask(*coverages: Union[np.ndarray, object]) -> np.ndarray:
    """The intersection of multiple coverage masks or panoramas."""
    masks = [c if isinstance(c, np.ndarray) else c.coverage for c in coverages]
    return np.logical_and.reduce(masks)
