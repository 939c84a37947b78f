import numpy as np
import pytest
from numpy.testing import assert_array_almost_equal, assert_array_equal

from tunnelstitch.geometry import CylinderModel
from tunnelstitch.stitching import Panorama, PanoramaSpec, cylinder_to_pano, pano_to_cylinder
from tunnelstitch.utils.exceptions import ValidationError


class TestPanoramaSpec:
    @pytest.mark.parametrize(
        "kwargs",
        [
            {"width": 0},
            {"width": 10.5},
            {"y_min": 1.0, "y_max": 1.0},
            {"y_min": 1.0, "y_max": 0.0},
            {"scale": -1.0},
            {"scale": np.nan},
            {"y_min": 0.0, "y_max": 0.001, "scale": 100.0},
        ],
    )
    def test_invalid(self, kwargs):
        with pytest.raises(ValidationError):
            PanoramaSpec(**kwargs).validate()

    def test_unresolved(self):
        spec = PanoramaSpec(width=100, y_min=0.0)

        assert spec.validate() is spec
        assert spec.is_resolved is False
        with pytest.raises(ValueError, match="height"):
            _ = spec.shape

    def test_shape(self):
        spec = PanoramaSpec(width=1200, y_min=-1.0, y_max=2.0, scale=100.0)

        assert spec.is_resolved
        assert spec.height == 300
        assert spec.shape == (300, 1200)

    def test_default_scale(self):
        assert PanoramaSpec(width=1200).default_scale(CylinderModel(3.0)) == pytest.approx(1200 / (6 * np.pi))


class TestMapping:
    @pytest.fixture()
    def spec(self):
        return PanoramaSpec(width=1200, y_min=-1.0, y_max=1.0, scale=100.0)

    def test_pano_to_cylinder(self, spec):
        cp = pano_to_cylinder(spec, np.array([0.0, 300.0, 600.0, 1200.0]), np.array([0.0, 100.0, 200.0, 50.0]))

        assert_array_almost_equal(cp.theta, [0.0, np.pi / 2, np.pi, 0.0])
        assert_array_almost_equal(cp.height, [-1.0, 0.0, 1.0, -0.5])

    def test_scalar(self, spec):
        cp = pano_to_cylinder(spec, 300.0, 100.0)

        assert isinstance(cp.height, float)
        assert cp.theta == pytest.approx(np.pi / 2)
        assert cylinder_to_pano(spec, cp) == pytest.approx((300.0, 100.0))

    def test_cylinder_to_pano_wraps(self, spec):
        u, v = cylinder_to_pano(spec, (np.array([-np.pi / 2, 2 * np.pi, -1e-17]), np.array([0.0, 3.0, -2.0])))

        assert_array_almost_equal(u, [900.0, 0.0, 0.0])
        assert np.all(u < spec.width)
        # Heights outside the band map outside of the raster
        assert_array_almost_equal(v, [100.0, 400.0, -100.0])

    def test_roundtrip(self, spec):
        u = np.random.uniform(0, 1200, 1000)
        v = np.random.uniform(0, 200, 1000)

        u2, v2 = cylinder_to_pano(spec, pano_to_cylinder(spec, u, v))

        assert_array_almost_equal(u2, u, decimal=9)
        assert_array_almost_equal(v2, v, decimal=9)


class TestPanorama:
    @pytest.fixture()
    def spec(self):
        return PanoramaSpec(width=4, y_min=0.0, y_max=3.0, scale=1.0)

    def test_empty_buffers(self, spec):
        pano = Panorama(spec)

        assert pano.color.shape == (3, 4, 3)
        assert pano.weight.shape == (3, 4)
        assert not pano.coverage.any()
        assert not pano.boundary_mask.any()
        assert_array_equal(pano.image, 0.0)

    def test_image_is_normalized(self, spec):
        pano = Panorama(spec)
        pano.color[1, 2] = [0.5, 1.0, 0.25]
        pano.weight[1, 2] = 2.0

        assert pano.coverage.sum() == 1
        assert_array_almost_equal(pano.image[1, 2], [0.25, 0.5, 0.125])
        assert_array_equal(pano.image[0, 0], 0.0)

    def test_wrong_buffer_shape(self, spec):
        with pytest.raises(ValidationError):
            Panorama(spec, weight=np.zeros((4, 3)))
