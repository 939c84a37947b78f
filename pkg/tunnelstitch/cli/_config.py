"""The experiment config and its flat key=value file format.

A config file holds one `key=value` pair per line.
Dotted keys address nested parameters (`camera.f=400` sets the parameter `camera__f` of the
:class:`ExperimentConfig`).
Values are python literals (numbers, tuples, `None`, `True`); string parameters are taken verbatim.
Angles may be given in degrees by appending `_deg` to the key (`trajectory.yaw_step_deg=30`).
Lines starting with `#` and empty lines are ignored.
"""
import ast
from pathlib import Path
from typing import Any, Dict, Iterable, Optional, Union

import numpy as np
from tpcp import cf
from typing_extensions import Literal, Self

from tunnelstitch.base import BaseParameters
from tunnelstitch.geometry import CameraIntrinsics, CylinderModel
from tunnelstitch.simulation import RenderConfig, TextureSpec
from tunnelstitch.stitching import PanoramaSpec
from tunnelstitch.trajectory import TrajectoryConfig
from tunnelstitch.utils.consts import INTERPOLATIONS, STITCH_MODES
from tunnelstitch.utils.exceptions import ParseError, ValidationError

PathLike = Union[str, Path]

_DEG_SUFFIX = "_deg"


class ExperimentConfig(BaseParameters):
    """All parameters of a simulate, stitch and evaluate run.

    Parameters
    ----------
    cylinder
        The tunnel
    camera
        The camera intrinsics, including the image size
    texture
        The wall texture
    render
        The shading of the simulated views
    trajectory
        The camera trajectory, including the noise seed
    panorama
        The panorama raster. Unset values are derived from the frames.
    mode
        The stitching mode ("corrected", "egocentric" or "baseline")
    interpolation
        The resampling of the frames ("bilinear" or "nearest")
    n_jobs
        Parallel workers of the stitcher
    output_dir
        Directory for the generated dataset. If None, a directory below the output root is used.

    """

    def __init__(
        self,
        cylinder: CylinderModel = cf(CylinderModel()),
        camera: CameraIntrinsics = cf(CameraIntrinsics()),
        texture: TextureSpec = cf(TextureSpec()),
        render: RenderConfig = cf(RenderConfig()),
        trajectory: TrajectoryConfig = cf(TrajectoryConfig()),
        panorama: PanoramaSpec = cf(PanoramaSpec()),
        mode: Literal["corrected", "egocentric", "baseline"] = "corrected",
        interpolation: Literal["bilinear", "nearest"] = "bilinear",
        n_jobs: int = 1,
        output_dir: Optional[str] = None,
    ):
        self.cylinder = cylinder
        self.camera = camera
        self.texture = texture
        self.render = render
        self.trajectory = trajectory
        self.panorama = panorama
        self.mode = mode
        self.interpolation = interpolation
        self.n_jobs = n_jobs
        self.output_dir = output_dir

    def validate(self) -> Self:
        """Validate all nested parameter objects and the stitching options."""
        for component in (self.cylinder, self.camera, self.texture, self.render, self.trajectory, self.panorama):
            component.validate()
        if self.mode not in STITCH_MODES:
            raise ValidationError(f"The stitching mode must be one of {STITCH_MODES}. Got {self.mode}.")
        if self.interpolation not in INTERPOLATIONS:
            raise ValidationError(f"The interpolation must be one of {INTERPOLATIONS}. Got {self.interpolation}.")
        return self

    def flat_params(self) -> Dict[str, Any]:
        """All leaf parameters with dotted keys."""
        return {
            key.replace("__", "."): value
            for key, value in self.get_params(deep=True).items()
            if not isinstance(value, BaseParameters)
        }


def _to_python(value):
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, np.ndarray):
        return tuple(_to_python(v) for v in value.tolist())
    if isinstance(value, (tuple, list)):
        return tuple(_to_python(v) for v in value)
    return value


def format_value(value) -> str:
    """Format a parameter so that :func:`parse_value` reads back the identical value."""
    value = _to_python(value)
    if isinstance(value, str):
        return value
    return repr(value)


def parse_value(text: str, current=None):
    """Parse the text of a config value.

    If the current value of the parameter is a string, the text is used verbatim.
    Otherwise it is read as python literal, falling back to the verbatim text.
    """
    text = text.strip()
    if isinstance(current, str):
        return text
    try:
        return ast.literal_eval(text)
    except (ValueError, SyntaxError):
        return text


def _deg_to_rad(value):
    if isinstance(value, (tuple, list)):
        return tuple(_deg_to_rad(v) for v in value)
    return float(np.deg2rad(value))


def _resolve_override(config: ExperimentConfig, key: str, text: str):
    known = config.flat_params()
    key = key.strip()
    if key in known:
        return key, parse_value(text, known[key])
    if key.endswith(_DEG_SUFFIX) and key[: -len(_DEG_SUFFIX)] in known:
        value = parse_value(text)
        try:
            return key[: -len(_DEG_SUFFIX)], _deg_to_rad(value)
        except TypeError as e:
            raise ValueError(f"The value of '{key}' must be numeric. Got '{text}'.") from e
    raise KeyError(f"Unknown config key '{key}'.")


def apply_overrides(config: ExperimentConfig, overrides: Iterable[str]) -> ExperimentConfig:
    """Apply `key=value` strings to a copy of the config.

    Raises
    ------
    ParseError
        For overrides without `=`, unknown keys and non-numeric degree values

    """
    config = config.clone()
    for override in overrides:
        if "=" not in override:
            raise ParseError(f"Overrides must have the form key=value. Got '{override}'.")
        key, text = override.split("=", 1)
        try:
            key, value = _resolve_override(config, key, text)
        except (KeyError, ValueError) as e:
            raise ParseError(e.args[0]) from e
        config.set_params(**{key.replace(".", "__"): value})
    return config


def read_config(path: PathLike, base: Optional[ExperimentConfig] = None) -> ExperimentConfig:
    """Read a config file on top of `base` (default: the default config).

    Raises
    ------
    ParseError
        With the line number of malformed lines and unknown keys

    """
    path = Path(path)
    config = (base or ExperimentConfig()).clone()
    for line_number, line in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            config = apply_overrides(config, [line])
        except ParseError as e:
            raise ParseError(e.message, path, line_number) from e
    return config


def write_config(config: ExperimentConfig, path: PathLike) -> Path:
    """Write all leaf parameters of the config (angles in rad, full float precision)."""
    path = Path(path)
    if not path.parent.is_dir():
        raise FileNotFoundError(f"The output directory {path.parent} does not exist.")
    lines = ["# tunnelstitch experiment config"]
    lines += [f"{key}={format_value(value)}" for key, value in config.flat_params().items()]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path
