import numpy as np
import pytest
from numpy.testing import assert_array_almost_equal, assert_array_equal

from tests.conftest import render_frames
from tunnelstitch.geometry import CameraIntrinsics, CylinderModel, Pose
from tunnelstitch.simulation import RenderConfig, TextureSpec, render_view
from tunnelstitch.stitching import (
    Frame,
    Panorama,
    PanoramaSpec,
    WarpBoundary,
    effective_pose,
    feather_weight,
    forward_warp_boundary,
    image_border_samples,
    inverse_warp_fill,
    warp_frame,
)
from tunnelstitch.trajectory import FramePose
from tunnelstitch.utils.exceptions import ValidationError
from tunnelstitch.utils.rotations import yaw_matrix

#: Camera looking along the tunnel axis (camera z = world +y)
LOOK_ALONG_AXIS = np.array([[1.0, 0, 0], [0, 0, 1.0], [0, -1.0, 0]])


@pytest.fixture()
def spec():
    return PanoramaSpec(width=600, y_min=-2.0, y_max=2.0, scale=600 / (6 * np.pi))


def _frame(pose, intr, index=0, planned_pose=None):
    return Frame(index, np.zeros((intr.height, intr.width, 3)), pose, planned_pose)


class TestEffectivePose:
    def test_corrected_and_baseline(self):
        pose = Pose.from_yaw(0.3, t=(0.5, 1.0, 0.5))
        planned = Pose.from_yaw(0.25, t=(0.0, 1.0, 0.0))
        frame = Frame(0, np.zeros((2, 2, 3)), pose, planned)

        assert effective_pose(frame, "corrected") is pose
        assert effective_pose(frame, "baseline") is planned

    def test_egocentric_keeps_heading_and_height(self):
        tilt = np.array([[1.0, 0, 0], [0, np.cos(0.1), -np.sin(0.1)], [0, np.sin(0.1), np.cos(0.1)]])
        pose = Pose(R=yaw_matrix(1.2) @ tilt, t=np.array([0.5, 1.0, 0.5]))
        frame = Frame(0, np.zeros((2, 2, 3)), pose)

        ego = effective_pose(frame, "egocentric")

        assert_array_almost_equal(ego.R, yaw_matrix(1.2))
        assert_array_equal(ego.t, [0.0, 1.0, 0.0])

    def test_baseline_needs_planned_pose(self):
        with pytest.raises(ValueError, match="planned pose"):
            effective_pose(Frame(3, np.zeros((2, 2, 3)), Pose()), "baseline")

    def test_invalid_mode(self):
        with pytest.raises(ValueError):
            effective_pose(Frame(0, np.zeros((2, 2, 3)), Pose()), "planned")


class TestImageBorderSamples:
    def test_samples(self):
        intr = CameraIntrinsics(f=50.0, width=64, height=48)
        samples = image_border_samples(intr, samples_per_edge=8)

        assert samples.shape == (32, 2)
        assert_array_equal(samples[0], [0, 0])
        assert_array_equal(samples[8], [63, 0])
        assert_array_equal(samples[16], [63, 47])
        assert_array_equal(samples[24], [0, 47])
        on_border = (samples[:, 0] == 0) | (samples[:, 0] == 63) | (samples[:, 1] == 0) | (samples[:, 1] == 47)
        assert on_border.all()


class TestFeatherWeight:
    def test_weights(self):
        intr = CameraIntrinsics(f=50.0, width=101, height=101)
        u = np.array([0.0, 10.0, 50.0, 100.0])
        v = np.array([50.0, 50.0, 50.0, 0.0])

        weight = feather_weight(intr, u, v)

        assert_array_almost_equal(weight, [1 / 51.5, 11 / 51.5, 51 / 51.5, 1 / 51.5])
        assert np.all(weight > 0)


class TestForwardWarpBoundary:
    def test_seam_crossing_frame_is_split(self, small_camera, cylinder, spec):
        boundary = forward_warp_boundary(_frame(Pose(), small_camera), small_camera, cylinder, spec)

        assert boundary.full_circumference is False
        assert len(boundary.polygons) == 2
        mask = boundary.rasterize(spec)
        middle = spec.height // 2
        # A 90 deg camera looking at theta = 0 covers about 75 columns to each side
        assert mask[middle, 0]
        assert mask[middle, 599]
        assert mask[middle, 70]
        assert not mask[middle, 80]
        assert not mask[middle, 300]

    def test_frame_inside_the_panorama(self, small_camera, cylinder, spec):
        boundary = forward_warp_boundary(_frame(Pose.from_yaw(np.pi), small_camera), small_camera, cylinder, spec)

        assert len(boundary.polygons) == 1
        u = boundary.polygons[0][:, 0]
        assert u.min() == pytest.approx(225, abs=1)
        assert u.max() == pytest.approx(375, abs=1)

    def test_looking_along_the_tunnel(self, small_camera, cylinder, spec):
        # Placed below the band, so the far end of the tunnel is inside it
        pose = Pose(R=LOOK_ALONG_AXIS, t=np.array([0.0, -3.0, 0.0]))
        boundary = forward_warp_boundary(_frame(pose, small_camera), small_camera, cylinder, spec)

        assert boundary.full_circumference is True
        mask = boundary.rasterize(spec)
        # Every column is covered from the closest wall point seen by the border up to the end of the panorama
        assert mask[-1].all()
        assert not mask[0].any()
        assert (mask == mask[:, :1]).all()

    def test_empty_boundary(self):
        assert not WarpBoundary(polygons=[]).rasterize(PanoramaSpec(width=10, y_min=0, y_max=1, scale=10)).any()


class TestWarpFrame:
    def test_single_frame(self, small_camera, cylinder, checkerboard, unlit, spec):
        pose = Pose.from_yaw(np.pi)
        frames = render_frames([FramePose(0, pose, pose)], small_camera, cylinder, checkerboard, unlit)

        contribution = warp_frame(frames[0], small_camera, cylinder, spec)

        assert contribution.index == 0
        assert len(np.unique(contribution.pixel_index)) == len(contribution.pixel_index)
        assert np.all(contribution.weight > 0)
        assert contribution.weighted_color.shape == (len(contribution.weight), 3)
        # Nearly the full rasterized boundary is filled
        filled = np.zeros(spec.shape, dtype=bool).ravel()
        filled[contribution.pixel_index] = True
        inside = filled[contribution.boundary_index]
        assert inside.mean() > 0.97

    def test_inverse_warp_fill_accumulates(self, small_camera, cylinder, checkerboard, unlit, spec):
        image, _ = render_view(small_camera, Pose(), cylinder, checkerboard, unlit)
        frame = Frame(0, image, Pose())
        boundary = forward_warp_boundary(frame, small_camera, cylinder, spec)
        pano = Panorama(spec)

        inverse_warp_fill(frame, small_camera, cylinder, boundary, pano)
        first = pano.weight.copy()
        inverse_warp_fill(frame, small_camera, cylinder, boundary, pano)

        assert first.max() > 0
        assert_array_almost_equal(pano.weight, 2 * first)
        assert pano.boundary_mask.any()
        # The same frame twice has the same normalized colors as once
        single = Panorama(spec)
        inverse_warp_fill(frame, small_camera, cylinder, boundary, single)
        assert_array_almost_equal(pano.image, single.image)

    def test_solid_wall_is_reproduced(self, small_camera, cylinder, spec):
        tex = TextureSpec(kind="solid", primary=(0.2, 0.5, 0.7))
        image, _ = render_view(small_camera, Pose.from_yaw(2.0, t=(0.4, 0.0, -0.3)), cylinder, tex, RenderConfig())
        frame = Frame(0, image, Pose.from_yaw(2.0, t=(0.4, 0.0, -0.3)))

        contribution = warp_frame(frame, small_camera, cylinder, spec)
        colors = contribution.weighted_color / contribution.weight[:, None]

        assert_array_almost_equal(colors, np.tile([0.2, 0.5, 0.7], (len(colors), 1)))

    def test_wrong_image_shape(self, small_camera, cylinder, spec):
        with pytest.raises(ValidationError, match="shape"):
            warp_frame(Frame(0, np.zeros((10, 10, 3)), Pose()), small_camera, cylinder, spec)

    def test_invalid_pixels_are_not_sampled(self, small_camera, cylinder, spec):
        tex = TextureSpec(kind="solid", primary=(0.2, 0.5, 0.7))
        pose = Pose.from_yaw(2.0, t=(0.4, 0.0, -0.3))
        image, valid = render_view(small_camera, pose, cylinder, tex, RenderConfig())
        valid[:, :40] = False
        image[~valid] = 1.0
        full = warp_frame(Frame(0, image, pose), small_camera, cylinder, spec)

        contribution = warp_frame(Frame(0, image, pose, valid=valid), small_camera, cylinder, spec)
        colors = contribution.weighted_color / contribution.weight[:, None]

        assert 0 < len(contribution.weight) < 0.9 * len(full.weight)
        assert np.isin(contribution.pixel_index, full.pixel_index).all()
        assert_array_almost_equal(colors, np.tile([0.2, 0.5, 0.7], (len(colors), 1)))

    def test_wrong_mask_shape(self, small_camera, cylinder, spec):
        image = np.zeros((small_camera.height, small_camera.width, 3))
        with pytest.raises(ValidationError, match="mask"):
            warp_frame(Frame(0, image, Pose(), valid=np.ones((10, 10), dtype=bool)), small_camera, cylinder, spec)


def _overlap_difference(first, second):
    """Mean absolute difference of the individual colors of two contributions over their shared pixels."""
    _, i, j = np.intersect1d(first.pixel_index, second.pixel_index, return_indices=True)
    first_color = first.weighted_color[i] / first.weight[i, None]
    second_color = second.weighted_color[j] / second.weight[j, None]
    return len(i), float(np.mean(np.abs(first_color - second_color)))


class TestSeamConsistency:
    @pytest.fixture()
    def neighbours(self, small_camera, cylinder, unlit):
        """Two frames 30 deg apart from different off-center positions."""
        tex = TextureSpec(kind="checkerboard", tile_theta=2 * np.pi / 8, tile_y=2.0)
        poses = [Pose.from_yaw(0.0, t=(0.5, 0.0, 0.5)), Pose.from_yaw(np.deg2rad(30), t=(0.4, 0.2, 0.3))]
        return render_frames([FramePose(k, p, p) for k, p in enumerate(poses)], small_camera, cylinder, tex, unlit)

    def test_overlap_agrees(self, neighbours, small_camera, cylinder, spec):
        first, second = (warp_frame(f, small_camera, cylinder, spec) for f in neighbours)
        n_shared, difference = _overlap_difference(first, second)

        assert n_shared > 1000
        assert difference < 2 / 255

    def test_wrong_pose_breaks_overlap(self, neighbours, small_camera, cylinder, spec):
        moved = neighbours[1]
        planned = Pose(R=yaw_matrix(np.deg2rad(5)) @ moved.pose.R, t=moved.pose.t)
        frames = [neighbours[0], moved._replace(planned_pose=planned)]
        first, second = (warp_frame(f, small_camera, cylinder, spec, mode="baseline") for f in frames)

        assert _overlap_difference(first, second)[1] > 2 / 255
