import numpy as np
import pytest
from numpy.testing import assert_array_almost_equal, assert_array_equal

from tunnelstitch.simulation import RenderConfig, TextureSpec, checkerboard_edges, inward_normal, surface_color
from tunnelstitch.stitching import PanoramaSpec
from tunnelstitch.utils.exceptions import ValidationError

WHITE = (1.0, 1.0, 1.0)
BLACK = (0.0, 0.0, 0.0)


@pytest.fixture()
def four_tiles():
    return TextureSpec(tile_theta=np.pi / 2, tile_y=1.0, primary=WHITE, secondary=BLACK)


class TestTextureSpec:
    @pytest.mark.parametrize(
        "kwargs",
        [
            {"kind": "marble"},
            {"tile_theta": 0.3},
            {"tile_theta": -np.pi / 2},
            {"tile_y": 0.0},
            {"primary": (1.0, 2.0, 0.0)},
            {"secondary": (1.0, 0.0)},
            {"mortar_fraction": 0.5},
            {"fault_marks": ((0.0, 0.0, -1.0, 1.0, 0.0, 0.0),)},
            {"fault_marks": ((0.0, 0.0, 1.0),)},
        ],
    )
    def test_invalid(self, kwargs):
        with pytest.raises(ValidationError):
            TextureSpec(**kwargs).validate()

    def test_default_is_valid(self):
        tex = TextureSpec().validate()
        assert tex.n_tiles_around == 16

    def test_vertical_edges(self, four_tiles):
        assert_array_almost_equal(four_tiles.vertical_edges(), [0, np.pi / 2, np.pi, 1.5 * np.pi])

    def test_horizontal_edges(self):
        tex = TextureSpec(tile_y=0.5)
        assert_array_almost_equal(tex.horizontal_edges(-0.7, 1.0), [-0.5, 0.0, 0.5])


class TestRenderConfig:
    @pytest.mark.parametrize(
        "kwargs", [{"shading": "phong"}, {"light_direction": (0.0, 0.0, 2.0)}, {"ambient": 1.5}]
    )
    def test_invalid(self, kwargs):
        with pytest.raises(ValidationError):
            RenderConfig(**kwargs).validate()


class TestSurfaceColor:
    @pytest.mark.parametrize(
        ("theta", "y", "expected"),
        [
            (0.1, 0.1, WHITE),
            (0.1 + np.pi / 2, 0.1, BLACK),
            (0.1, 1.1, BLACK),
            (0.1 + np.pi / 2, 1.1, WHITE),
            (0.1, -0.5, BLACK),
            (-0.1, 0.1, BLACK),
        ],
    )
    def test_checkerboard(self, four_tiles, theta, y, expected):
        assert_array_equal(surface_color(four_tiles, RenderConfig(), theta, y), expected)

    def test_periodic_in_theta(self, four_tiles):
        rng = np.random.default_rng(3)
        theta = rng.uniform(0, 2 * np.pi, 500)
        y = rng.uniform(-3, 3, 500)

        for tex in (four_tiles, TextureSpec(kind="brick")):
            assert_array_equal(
                surface_color(tex, RenderConfig(), theta, y), surface_color(tex, RenderConfig(), theta + 2 * np.pi, y)
            )

    def test_brick(self):
        tex = TextureSpec(kind="brick", tile_theta=np.pi / 2, mortar_fraction=0.1, primary=WHITE, secondary=BLACK)
        tile = np.pi / 2
        # Inside a brick
        assert_array_equal(surface_color(tex, RenderConfig(), 0.5 * tile, 0.5), WHITE)
        # Vertical mortar joint of the first row
        assert_array_equal(surface_color(tex, RenderConfig(), 0.05 * tile, 0.5), BLACK)
        # The second row is shifted by half a brick
        assert_array_equal(surface_color(tex, RenderConfig(), 0.05 * tile, 1.5), WHITE)
        assert_array_equal(surface_color(tex, RenderConfig(), 0.55 * tile, 1.5), BLACK)
        # Horizontal mortar joint
        assert_array_equal(surface_color(tex, RenderConfig(), 0.5 * tile, 1.05), BLACK)

    def test_solid(self):
        tex = TextureSpec(kind="solid", primary=(0.2, 0.4, 0.6))
        colors = surface_color(tex, RenderConfig(), np.linspace(0, 6, 7), np.linspace(-3, 3, 7))
        assert colors.shape == (7, 3)
        assert_array_equal(colors, np.tile([0.2, 0.4, 0.6], (7, 1)))

    def test_fault_marks(self):
        tex = TextureSpec(kind="solid", primary=WHITE, fault_marks=((0.0, 0.0, 0.5, 1.0, 0.0, 0.0),))
        # On a tunnel with r=3, 0.1 rad are 0.3 m along the wall
        theta = np.array([0.0, 0.1, 2 * np.pi - 0.1, 0.2, 0.0])
        y = np.array([0.0, 0.0, 0.0, 0.0, 0.6])
        colors = surface_color(tex, RenderConfig(), theta, y, radius=3.0)

        assert_array_equal(colors[:3], np.tile([1.0, 0.0, 0.0], (3, 1)))
        assert_array_equal(colors[3:], np.tile(WHITE, (2, 1)))

    def test_fault_marks_require_radius(self):
        tex = TextureSpec(fault_marks=((0.0, 0.0, 0.5, 1.0, 0.0, 0.0),))
        with pytest.raises(ValueError, match="radius"):
            surface_color(tex, RenderConfig(), 0.0, 0.0)

    def test_lambertian_floor_bright_ceiling_dark(self):
        tex = TextureSpec(kind="solid", primary=WHITE)
        cfg = RenderConfig(shading="lambertian-downward")
        colors = surface_color(tex, cfg, np.array([0.0, np.pi / 2, np.pi]), np.zeros(3))

        assert_array_almost_equal(colors[0], WHITE)
        assert_array_almost_equal(colors[1], BLACK)
        assert_array_equal(colors[2], BLACK)

    def test_ambient_light(self):
        tex = TextureSpec(kind="solid", primary=WHITE)
        cfg = RenderConfig(shading="lambertian-downward", ambient=0.25)
        colors = surface_color(tex, cfg, np.array([0.0, np.pi]), np.zeros(2))

        assert_array_almost_equal(colors, [[1.0, 1.0, 1.0], [0.25, 0.25, 0.25]])

    def test_explicit_normal(self):
        tex = TextureSpec(kind="solid", primary=WHITE)
        cfg = RenderConfig(shading="lambertian-downward")
        normal = np.array([0.0, 0.0, -1.0])
        # The normal overrides the one derived from theta
        assert_array_equal(surface_color(tex, cfg, np.pi, 0.0, normal=normal), WHITE)


class TestInwardNormal:
    def test_values(self):
        assert_array_almost_equal(inward_normal(0.0), [0, 0, -1])
        assert_array_almost_equal(inward_normal(np.pi / 2), [-1, 0, 0])
        assert inward_normal(np.zeros(5)).shape == (5, 3)


class TestCheckerboardEdges:
    def test_edges(self):
        tex = TextureSpec(tile_theta=2 * np.pi / 16, tile_y=1.0)
        spec = PanoramaSpec(width=1600, y_min=0.0, y_max=3.0, scale=100.0)

        vertical, horizontal, tile_size = checkerboard_edges(tex, spec)

        assert_array_almost_equal(vertical, np.arange(16) * 100 - 0.5)
        assert_array_almost_equal(horizontal, [99.5, 199.5])
        assert tile_size == pytest.approx((100.0, 100.0))
