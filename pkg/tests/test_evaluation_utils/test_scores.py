import math

import numpy as np
import pytest
from numpy.testing import assert_array_equal

from tunnelstitch.evaluation_utils import band_coverage_fraction, complete_band, coverage_fraction, joint_mask, psnr
from tunnelstitch.stitching import Panorama, PanoramaSpec


def _checker(height=8, width=8):
    rows, cols = np.indices((height, width))
    return np.repeat(((rows + cols) % 2).astype(float)[..., None], 3, axis=2)


class TestPsnr:
    def test_offset_of_one_gray_level(self):
        reference = np.full((4, 4, 3), 0.5)

        assert psnr(reference + 1 / 255, reference) == pytest.approx(20 * np.log10(255), abs=1e-6)
        assert round(psnr(reference + 1 / 255, reference), 2) == 48.13

    def test_identical(self):
        image = np.random.rand(5, 6, 3)

        assert psnr(image, image.copy()) == math.inf

    def test_inverted_checker(self):
        checker = _checker()

        assert psnr(checker, 1 - checker) == pytest.approx(0.0)

    def test_max_value(self):
        reference = np.full((4, 4, 3), 128.0)

        assert psnr(reference + 1, reference, max_value=255) == pytest.approx(20 * np.log10(255))

    def test_mask(self):
        reference = np.zeros((4, 4, 3))
        image = reference.copy()
        image[0, 0] = 1.0
        mask = np.ones((4, 4), dtype=bool)

        assert psnr(image, reference, mask=mask) == pytest.approx(10 * np.log10(16))
        mask[0, 0] = False
        assert psnr(image, reference, mask=mask) == math.inf

    def test_panorama_uses_coverage(self):
        spec = PanoramaSpec(width=4, y_min=0.0, y_max=2.0, scale=1.0)
        pano = Panorama(spec)
        pano.color[0] = 0.5
        pano.weight[0] = 1.0
        reference = np.zeros((2, 4, 3))
        reference[0] = 0.5
        # The uncovered row is black in the image, but it does not count
        reference[1] = 1.0

        assert psnr(pano, reference) == math.inf

    def test_empty_mask(self):
        with pytest.raises(ValueError, match="empty mask"):
            psnr(np.zeros((2, 2, 3)), np.zeros((2, 2, 3)), mask=np.zeros((2, 2), dtype=bool))

    def test_shape_mismatch(self):
        with pytest.raises(ValueError, match="shape"):
            psnr(np.zeros((2, 2, 3)), np.zeros((2, 3, 3)))


class TestCoverage:
    def test_plain_mask(self):
        assert coverage_fraction(np.array([[True, False], [True, True]])) == 0.75

    def test_region(self):
        coverage = np.array([[True, False], [True, True]])
        region = np.array([[True, True], [False, False]])

        assert coverage_fraction(coverage, region) == 0.5
        assert coverage_fraction(coverage, np.zeros_like(region)) == 0.0

    def test_panorama_uses_boundary(self):
        pano = Panorama(PanoramaSpec(width=4, y_min=0.0, y_max=2.0, scale=1.0))
        pano.boundary_mask[0] = True
        pano.weight[0, :3] = 1.0
        pano.weight[1, 0] = 1.0

        assert coverage_fraction(pano) == 0.75

    def test_complete_band(self):
        boundary = np.array([[True, True, True], [True, False, True], [True, True, True]])

        band = complete_band(boundary)

        assert_array_equal(band, [[True] * 3, [False] * 3, [True] * 3])

    def test_band_coverage(self):
        pano = Panorama(PanoramaSpec(width=4, y_min=0.0, y_max=3.0, scale=1.0))
        pano.boundary_mask[1:] = True
        pano.boundary_mask[2, 0] = False
        pano.weight[1, :2] = 1.0
        pano.weight[0] = 1.0

        # Only row 1 is enclosed all around, half of it is covered
        assert band_coverage_fraction(pano) == 0.5

    def test_joint_mask(self):
        a = np.array([True, True, False])
        pano = Panorama(PanoramaSpec(width=3, y_min=0.0, y_max=1.0, scale=1.0))
        pano.weight[0, 1:] = 1.0

        assert_array_equal(joint_mask(a[None, :], pano), [[False, True, False]])
