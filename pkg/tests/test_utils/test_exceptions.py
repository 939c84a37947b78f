import pytest

from tunnelstitch.utils.exceptions import (
    AxisParallelRayError,
    CameraOutsideTunnelError,
    GeometryError,
    ParseError,
    TrajectoryError,
    UndefinedAzimuthError,
)


class TestParseError:
    @pytest.mark.parametrize(
        ("kwargs", "expected"),
        [
            ({}, "bad value"),
            ({"line_number": 3}, "line 3: bad value"),
            ({"path": "traj.txt"}, "traj.txt: bad value"),
            ({"path": "traj.txt", "line_number": 3}, "traj.txt:3: bad value"),
        ],
    )
    def test_location_prefix(self, kwargs, expected):
        assert str(ParseError("bad value", **kwargs)) == expected

    def test_is_value_error(self):
        error = ParseError("bad value", "a.cfg", 1)
        assert isinstance(error, ValueError)
        assert error.message == "bad value"


def test_geometry_errors_are_value_errors():
    for error in (CameraOutsideTunnelError, AxisParallelRayError, UndefinedAzimuthError):
        assert issubclass(error, GeometryError)
        assert issubclass(error, ValueError)


def test_trajectory_error_lists_frames():
    error = TrajectoryError("outside", frames=(3, 5))
    assert error.frames == [3, 5]
    assert str(error) == "outside"
