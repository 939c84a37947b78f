import numpy as np
import pytest
from numpy.testing import assert_array_equal

from tunnelstitch.geometry import CameraIntrinsics, cylindrical_projection
from tunnelstitch.utils.exceptions import ValidationError


@pytest.fixture()
def intr():
    return CameraIntrinsics(f=50.0, cx=32.0, cy=24.0, width=64, height=48)


def _column_image(intr):
    """An image whose color only depends on the column."""
    ramp = np.linspace(0, 1, intr.width)
    return np.broadcast_to(ramp[None, :, None], (intr.height, intr.width, 3)).copy()


class TestCylindricalProjection:
    def test_output_shape(self, intr):
        out_intr = CameraIntrinsics(f=40.0, width=80, height=30)
        unwrapped, valid = cylindrical_projection(_column_image(intr), intr, out_intr)

        assert unwrapped.shape == (30, 80, 3)
        assert valid.shape == (30, 80)
        assert valid.dtype == bool

    def test_principal_point_is_unchanged(self, intr):
        image = np.random.rand(intr.height, intr.width, 3)
        unwrapped, valid = cylindrical_projection(image, intr)

        assert valid[24, 32]
        assert_array_equal(unwrapped[24, 32], image[24, 32])

    def test_vertical_lines_stay_vertical(self, intr):
        unwrapped, valid = cylindrical_projection(_column_image(intr), intr)

        for col in range(intr.width):
            values = unwrapped[valid[:, col], col, 0]
            if len(values):
                assert np.ptp(values) < 1e-12

    def test_border_columns_have_no_source(self, intr):
        """Wide azimuths project outside of the planar image."""
        unwrapped, valid = cylindrical_projection(_column_image(intr), intr)

        assert not valid[:, 0].any()
        assert not valid[:, -1].any()
        assert_array_equal(unwrapped[~valid], 0.0)

    def test_nearest_interpolation(self, intr):
        image = np.random.rand(intr.height, intr.width, 3)
        unwrapped, valid = cylindrical_projection(image, intr, interpolation="nearest")

        # Every valid output color exists in the input
        colors = {tuple(c) for c in image.reshape(-1, 3)}
        assert all(tuple(c) in colors for c in unwrapped[valid])

    def test_wrong_image_shape_raises(self, intr):
        with pytest.raises(ValidationError):
            cylindrical_projection(np.zeros((10, 10, 3)), intr)
