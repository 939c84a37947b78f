import random
from typing import Any, Dict

import numpy as np
import pandas as pd
import pytest
from numpy.testing import assert_allclose, assert_array_equal
from pandas._testing import assert_frame_equal, assert_series_equal
from scipy.spatial.transform import Rotation
from tpcp import BaseTpcpObject

from tunnelstitch.geometry import CameraIntrinsics, CylinderModel, Pose
from tunnelstitch.simulation import RenderConfig, TextureSpec, render_view
from tunnelstitch.stitching import Frame
from tunnelstitch.trajectory import generate_stationary


@pytest.fixture(autouse=True)
def reset_random_seed():
    np.random.seed(10)
    random.seed(10)


@pytest.fixture()
def small_camera() -> CameraIntrinsics:
    """A 60 deg wide camera with a quarter of the default resolution."""
    return CameraIntrinsics(f=80.0, width=160, height=120)


@pytest.fixture()
def cylinder() -> CylinderModel:
    return CylinderModel(radius=3.0)


@pytest.fixture()
def checkerboard() -> TextureSpec:
    return TextureSpec(kind="checkerboard", tile_theta=2 * np.pi / 16, tile_y=1.0)


@pytest.fixture()
def unlit() -> RenderConfig:
    return RenderConfig()


def render_frames(poses, intr, cyl, tex, cfg):
    """Render a `Frame` for every `FramePose`."""
    frames = []
    for p in poses:
        image, valid = render_view(intr, p.pose, cyl, tex, cfg)
        frames.append(Frame(p.index, image, p.pose, p.planned_pose, valid))
    return frames


@pytest.fixture()
def stationary_frames(small_camera, cylinder, checkerboard, unlit):
    """12 frames rotated by 30 deg at the tunnel center."""
    return render_frames(generate_stationary(np.deg2rad(30), 12), small_camera, cylinder, checkerboard, unlit)


def random_rotation(rng: np.random.Generator) -> np.ndarray:
    return Rotation.random(random_state=rng.integers(0, 2**31)).as_matrix()


def random_pose_inside(rng: np.random.Generator, radius: float, max_fraction: float = 0.8) -> Pose:
    """A random rotation and a position with t_x^2 + t_z^2 <= max_fraction * r^2."""
    r = np.sqrt(rng.uniform(0, max_fraction)) * radius
    phi = rng.uniform(0, 2 * np.pi)
    t = np.array([r * np.sin(phi), rng.uniform(-2, 2), r * np.cos(phi)])
    return Pose(R=random_rotation(rng), t=t)


def _get_params_without_nested_class(instance: BaseTpcpObject) -> Dict[str, Any]:
    return {k: v for k, v in instance.get_params().items() if not hasattr(v, "get_params")}


def compare_algo_objects(a, b):
    parameters = _get_params_without_nested_class(a)
    b_parameters = _get_params_without_nested_class(b)

    assert set(parameters.keys()) == set(b_parameters.keys())

    for p, value in parameters.items():
        json_val = b_parameters[p]
        compare_val(value, json_val, p)


def compare_val(value, json_val, name):
    if isinstance(value, BaseTpcpObject):
        compare_algo_objects(value, json_val)
    elif isinstance(value, np.ndarray):
        assert_array_equal(value, json_val)
    elif isinstance(value, (tuple, list)):
        assert len(value) == len(json_val)
        for i, (v, j) in enumerate(zip(value, json_val)):
            compare_val(v, j, f"{name}_{i}")
    elif isinstance(value, Rotation):
        assert_allclose(value.as_quat(), json_val.as_quat(), atol=1e-12)
    elif isinstance(value, pd.DataFrame):
        assert_frame_equal(value, json_val, check_dtype=False)
    elif isinstance(value, pd.Series):
        assert_series_equal(value, json_val)
    else:
        assert value == json_val, name
