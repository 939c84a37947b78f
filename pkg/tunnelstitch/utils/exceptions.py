"""A set of custom exceptions."""
from pathlib import Path
from typing import Optional, Sequence, Union


class ValidationError(Exception):
    """An error indicating that data-object does not comply with the guidelines."""


class GeometryError(ValueError):
    """An error indicating that a geometric quantity is undefined for the given inputs."""


class CameraOutsideTunnelError(GeometryError):
    """The camera center is on or outside the tunnel wall."""


class AxisParallelRayError(GeometryError):
    """A viewing ray runs parallel to the tunnel axis and never hits the wall."""


class UndefinedAzimuthError(GeometryError):
    """A point lies on the cylinder axis, so its azimuth is undefined."""


class TrajectoryError(ValueError):
    """An error indicating that some frames of a trajectory are not usable."""

    def __init__(self, message: str, frames: Sequence[int] = ()):
        self.frames = list(frames)
        super().__init__(message)


class CoverageError(ValueError):
    """A panorama did not receive any contribution."""


class MeshError(ValueError):
    """Mesh parameters or a tunnel curve describe a degenerate mesh."""


class ParseError(ValueError):
    """An error while parsing one of the text formats of tunnelstitch."""

    def __init__(self, message: str, path: Optional[Union[str, Path]] = None, line_number: Optional[int] = None):
        self.message = message
        self.path = path
        self.line_number = line_number
        super().__init__()

    def __str__(self):
        """Return a string representation of the error."""
        location = ""
        if self.path is not None:
            location = str(self.path)
        if self.line_number is not None:
            location = f"{location}:{self.line_number}" if location else f"line {self.line_number}"
        if location:
            return f"{location}: {self.message}"
        return self.message
