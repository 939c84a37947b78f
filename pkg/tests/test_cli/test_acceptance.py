"""Full resolution runs of the presets.

These take a few minutes. Deselect them with `-m "not slow"`.
"""
import pytest

from tunnelstitch.cli import apply_overrides, cmd_eval, cmd_simulate, cmd_stitch, preset_config

pytestmark = pytest.mark.slow


def _run_preset(preset, modes, output_dir):
    config = preset_config(preset)
    cmd_simulate(config, output_dir)
    panoramas = {}
    for mode in modes:
        panoramas[mode] = output_dir / f"panorama_{mode}.ppm"
        cmd_stitch(output_dir, apply_overrides(config, [f"mode={mode}"]), output=panoramas[mode])
    return panoramas


def test_stationary_center(tmp_path):
    panoramas = _run_preset("fig5", ["corrected"], tmp_path / "fig5")
    report = cmd_eval(panoramas["corrected"])

    assert report["psnr"] >= 35
    assert report["band_coverage"] >= 0.999
    assert report["straightness"] < 1


def test_off_center(tmp_path):
    panoramas = _run_preset("fig7", ["corrected", "egocentric"], tmp_path / "fig7")
    corrected = cmd_eval(panoramas["corrected"], joint_with=panoramas["egocentric"])
    egocentric = cmd_eval(panoramas["egocentric"])

    assert corrected["joint_psnr"] >= 35
    assert corrected["joint_psnr_gain"] >= 5
    assert corrected["straightness"] < 1
    assert egocentric["straightness"] > 3


def test_jittered_spiral(tmp_path):
    panoramas = _run_preset("fig8", ["corrected", "baseline"], tmp_path / "fig8")
    report = cmd_eval(panoramas["corrected"], joint_with=panoramas["baseline"])

    assert report["joint_psnr_gain"] >= 6


def test_same_seed_same_panorama(tmp_path):
    first = _run_preset("fig5", ["corrected"], tmp_path / "first")["corrected"]
    second = _run_preset("fig5", ["corrected"], tmp_path / "second")["corrected"]

    assert first.read_bytes() == second.read_bytes()
    for suffix in ("_coverage.pgm", "_boundary.pgm", "_frames.csv"):
        assert first.with_name(first.stem + suffix).read_bytes() == second.with_name(second.stem + suffix).read_bytes()
