"""Reading and writing of images and masks.

In memory, images are float64 arrays with shape `(height, width, 3)` and values in [0, 1].
Quantization to 8 bit happens exactly once, when an image is written.
Colour images are written as binary PPM (P6) or PNG, masks as binary PGM (P5).
"""
from pathlib import Path
from typing import Union

import numpy as np
from PIL import Image

from tunnelstitch.utils.datatype_helper import is_image, is_mask

PathLike = Union[str, Path]

_FORMATS = {".ppm": "PPM", ".pgm": "PPM", ".pnm": "PPM", ".png": "PNG"}


def _image_format(path: Path) -> str:
    try:
        return _FORMATS[path.suffix.lower()]
    except KeyError as e:
        raise ValueError(
            f"Unsupported image file extension '{path.suffix}' of {path}. Supported are {sorted(_FORMATS)}."
        ) from e


def quantize(image: np.ndarray) -> np.ndarray:
    """Convert a float image in [0, 1] to uint8 (round half up, values outside [0, 1] are clipped)."""
    return np.clip(np.floor(np.asarray(image, dtype=float) * 255.0 + 0.5), 0, 255).astype(np.uint8)


def dequantize(image: np.ndarray) -> np.ndarray:
    """Convert an 8-bit image to float64 in [0, 1]."""
    return np.asarray(image, dtype=np.float64) / 255.0


def write_image(image: np.ndarray, path: PathLike) -> Path:
    """Write a float RGB image as 8-bit PPM or PNG, depending on the file extension.

    Parameters
    ----------
    image
        Float image with shape (height, width, 3) and values in [0, 1]
    path
        The output file. The parent directory must exist.

    Returns
    -------
    path
        The path the image was written to

    """
    path = Path(path)
    fmt = _image_format(path)
    is_image(image, raise_exception=True)
    if not path.parent.is_dir():
        raise FileNotFoundError(f"The output directory {path.parent} does not exist.")
    Image.fromarray(quantize(image)).save(path, format=fmt)
    return path


def read_image(path: PathLike) -> np.ndarray:
    """Read a PPM or PNG image as float RGB image in [0, 1]."""
    path = Path(path)
    _image_format(path)
    with Image.open(path) as img:
        data = np.asarray(img.convert("RGB"))
    return dequantize(data)


def write_mask(mask: np.ndarray, path: PathLike) -> Path:
    """Write a boolean mask as binary PGM (0 and 255)."""
    path = Path(path)
    is_mask(mask, raise_exception=True)
    if not path.parent.is_dir():
        raise FileNotFoundError(f"The output directory {path.parent} does not exist.")
    Image.fromarray(np.where(mask, 255, 0).astype(np.uint8)).save(path, format=_image_format(path))
    return path


def read_mask(path: PathLike) -> np.ndarray:
    """Read a mask written by :func:`write_mask`."""
    path = Path(path)
    with Image.open(path) as img:
        data = np.asarray(img.convert("L"))
    return data > 127
