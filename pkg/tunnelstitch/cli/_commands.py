"""The simulate, stitch, eval and export-mesh commands."""
import logging
import os
import warnings
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

import numpy as np
from joblib import Parallel, delayed

from tunnelstitch.cli._config import ExperimentConfig, format_value, read_config, write_config
from tunnelstitch.evaluation_utils import complete_band, coverage_fraction, edge_straightness, psnr
from tunnelstitch.mesh_export import build_curved_mesh, build_straight_mesh, load_curve, write_mesh
from tunnelstitch.simulation import checkerboard_edges, render_oracle_panorama, render_view
from tunnelstitch.stitching import CylindricalStitcher, Frame, PanoramaSpec, resolve_panorama_spec
from tunnelstitch.trajectory import generate_trajectory, load_trajectory, save_trajectory
from tunnelstitch.utils.consts import (
    CONFIG_SNAPSHOT_NAME,
    FRAME_NAME_PATTERN,
    OUTPUT_ROOT_ENV,
    TRAJECTORY_FILE_NAME,
    VALID_MASK_NAME_PATTERN,
)
from tunnelstitch.utils.exceptions import ParseError, TrajectoryError
from tunnelstitch.utils.image_io import read_image, read_mask, write_image, write_mask

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]
Report = Dict[str, Any]

#: Fallback output root if the environment variable is not set
DEFAULT_OUTPUT_ROOT = "tunnelstitch_output"


def output_root() -> Path:
    """The root directory for generated datasets."""
    return Path(os.environ.get(OUTPUT_ROOT_ENV, DEFAULT_OUTPUT_ROOT))


def _sidecar(panorama_path: Path, suffix: str) -> Path:
    return panorama_path.with_name(panorama_path.stem + suffix)


def read_meta(panorama_path: PathLike) -> Dict[str, str]:
    """Read the key=value metadata written next to a stitched panorama."""
    meta_path = _sidecar(Path(panorama_path), ".meta")
    if not meta_path.is_file():
        raise FileNotFoundError(f"The panorama metadata {meta_path} does not exist. Was the panorama stitched?")
    meta = {}
    for line_number, line in enumerate(meta_path.read_text(encoding="utf-8").splitlines(), start=1):
        if not line.strip() or line.startswith("#"):
            continue
        if "=" not in line:
            raise ParseError("Expected a key=value line.", meta_path, line_number)
        key, value = line.split("=", 1)
        meta[key.strip()] = value.strip()
    return meta


def dataset_config(dataset_dir: PathLike) -> ExperimentConfig:
    """The config snapshot of a simulated dataset."""
    return read_config(Path(dataset_dir) / CONFIG_SNAPSHOT_NAME)


def panorama_config(panorama_path: PathLike) -> ExperimentConfig:
    """The config snapshot of the dataset a panorama was stitched from."""
    return dataset_config(read_meta(panorama_path)["dataset"])


def _panorama_spec(meta: Dict[str, str]) -> PanoramaSpec:
    return PanoramaSpec(
        width=int(meta["panorama.width"]),
        y_min=float(meta["panorama.y_min"]),
        y_max=float(meta["panorama.y_max"]),
        scale=float(meta["panorama.scale"]),
    ).validate()


def cmd_simulate(config: ExperimentConfig, output_dir: Optional[PathLike] = None) -> Report:
    """Render a dataset: one image per frame, the trajectory file and the frozen config.

    The dataset directory is `output_dir`, `config.output_dir` or `<output root>/dataset`, in this order.
    Frames with pixels that do not see the tunnel wall get an additional valid pixel mask.
    """
    config.validate()
    if output_dir is None:
        output_dir = config.output_dir if config.output_dir is not None else output_root() / "dataset"
    output_dir = Path(output_dir)
    output_dir.mkdir(parents=True, exist_ok=True)

    frames = generate_trajectory(config.trajectory, radius=config.cylinder.radius)
    logger.info("Rendering %d frames into %s", len(frames), output_dir)
    renders = Parallel(n_jobs=config.n_jobs)(
        delayed(render_view)(config.camera, f.pose, config.cylinder, config.texture, config.render) for f in frames
    )
    for frame, (image, valid) in zip(frames, renders):
        write_image(image, output_dir / FRAME_NAME_PATTERN.format(frame.index))
        if not np.all(valid):
            warnings.warn(f"{np.sum(~valid)} pixels of frame {frame.index} do not see the tunnel wall.")
            write_mask(valid, output_dir / VALID_MASK_NAME_PATTERN.format(frame.index))
    save_trajectory(frames, output_dir / TRAJECTORY_FILE_NAME)
    write_config(config, output_dir / CONFIG_SNAPSHOT_NAME)
    return {"dataset": str(output_dir), "n_frames": len(frames)}


def load_dataset(dataset_dir: PathLike) -> List[Frame]:
    """Load all frames of a dataset with their poses and valid pixel masks.

    Raises
    ------
    TrajectoryError
        If frame images referenced by the trajectory are missing. The error lists all missing frames.

    """
    dataset_dir = Path(dataset_dir)
    poses = load_trajectory(dataset_dir / TRAJECTORY_FILE_NAME)
    missing = [p.index for p in poses if not (dataset_dir / FRAME_NAME_PATTERN.format(p.index)).is_file()]
    if missing:
        raise TrajectoryError(f"The dataset {dataset_dir} is missing the images of frames {missing}.", frames=missing)
    frames = []
    for p in poses:
        image = read_image(dataset_dir / FRAME_NAME_PATTERN.format(p.index))
        mask_path = dataset_dir / VALID_MASK_NAME_PATTERN.format(p.index)
        valid = read_mask(mask_path) if mask_path.is_file() else None
        frames.append(Frame(p.index, image, p.pose, p.planned_pose, valid))
    return frames


def cmd_stitch(
    dataset_dir: PathLike,
    config: Optional[ExperimentConfig] = None,
    output: Optional[PathLike] = None,
) -> Report:
    """Stitch a dataset with the mode of the config.

    Next to the panorama `<name>.ppm`, the coverage (`<name>_coverage.pgm`), the union of the warp boundaries
    (`<name>_boundary.pgm`), the per-frame statistics (`<name>_frames.csv`) and the metadata (`<name>.meta`) are
    written.

    Parameters
    ----------
    dataset_dir
        A directory created by :func:`cmd_simulate`
    config
        The config. If None, the snapshot of the dataset is used.
    output
        The panorama file. Defaults to `<dataset>/panorama_<mode>.ppm`.

    """
    dataset_dir = Path(dataset_dir)
    if config is None:
        config = dataset_config(dataset_dir)
    config.validate()
    frames = load_dataset(dataset_dir)
    output = Path(output) if output is not None else dataset_dir / f"panorama_{config.mode}.ppm"

    spec = resolve_panorama_spec(config.panorama, config.cylinder, frames, config.camera)
    logger.info("Stitching %d frames (mode %s) into a %d x %d panorama", len(frames), config.mode, *spec.shape)
    reference = render_oracle_panorama(config.cylinder, config.texture, config.render, spec)
    stitcher = CylindricalStitcher(
        intrinsics=config.camera,
        cylinder=config.cylinder,
        panorama_spec=spec,
        mode=config.mode,
        interpolation=config.interpolation,
        n_jobs=config.n_jobs,
    ).stitch(frames, reference=reference)
    pano = stitcher.panorama_

    write_image(pano.image, output)
    write_mask(pano.coverage, _sidecar(output, "_coverage.pgm"))
    write_mask(pano.boundary_mask, _sidecar(output, "_boundary.pgm"))
    stitcher.frame_stats_.to_csv(_sidecar(output, "_frames.csv"))

    report = {
        "panorama": str(output),
        "mode": config.mode,
        "n_frames": len(frames),
        "coverage": coverage_fraction(pano),
        "band_coverage": coverage_fraction(pano.coverage, complete_band(pano.boundary_mask)),
        "psnr": psnr(pano, reference),
    }
    meta = {
        "dataset": str(dataset_dir.resolve()),
        "interpolation": config.interpolation,
        "panorama.width": format_value(spec.width),
        "panorama.y_min": format_value(spec.y_min),
        "panorama.y_max": format_value(spec.y_max),
        "panorama.scale": format_value(spec.scale),
        "frame_stats": _sidecar(output, "_frames.csv").name,
        **{k: format_report_value(v) for k, v in report.items() if k != "panorama"},
    }
    _sidecar(output, ".meta").write_text("".join(f"{k}={v}\n" for k, v in meta.items()), encoding="utf-8")
    return report


def _load_panorama(panorama_path: Path) -> Tuple[Dict[str, str], np.ndarray, np.ndarray, np.ndarray]:
    meta = read_meta(panorama_path)
    image = read_image(panorama_path)
    coverage = read_mask(_sidecar(panorama_path, "_coverage.pgm"))
    boundary = read_mask(_sidecar(panorama_path, "_boundary.pgm"))
    return meta, image, coverage, boundary


def cmd_eval(
    panorama_path: PathLike,
    config: Optional[ExperimentConfig] = None,
    joint_with: Optional[PathLike] = None,
    reference_path: Optional[PathLike] = None,
) -> Report:
    """Evaluate a stitched panorama against the exact wall texture.

    Reports the PSNR over the covered pixels, the coverage of the region inside the warp boundaries, the coverage
    of the complete band and, for checkerboard textures, the edge straightness.
    With `joint_with`, both panoramas are additionally compared over the pixels covered by both.

    Parameters
    ----------
    panorama_path
        A panorama written by :func:`cmd_stitch`
    config
        The config. If None, the snapshot of the dataset the panorama was stitched from is used.
    joint_with
        A second panorama of the same raster
    reference_path
        An image to compare against instead of the rendered wall texture

    Raises
    ------
    ValueError
        If the panorama does not match the raster of the reference

    """
    panorama_path = Path(panorama_path)
    meta, image, coverage, boundary = _load_panorama(panorama_path)
    if config is None:
        config = dataset_config(meta["dataset"])
    config.validate()
    spec = _panorama_spec(meta)
    if reference_path is not None:
        reference = read_image(reference_path)
    else:
        reference = render_oracle_panorama(config.cylinder, config.texture, config.render, spec)
    if reference.shape != image.shape:
        raise ValueError(
            f"The panorama shape {image.shape} does not match the reference shape {reference.shape} of the config."
        )

    report: Report = {
        "panorama": str(panorama_path),
        "mode": meta.get("mode", "unknown"),
        "psnr": psnr(image, reference, coverage),
        "coverage": coverage_fraction(coverage, boundary),
        "band_coverage": coverage_fraction(coverage, complete_band(boundary)),
    }
    if config.texture.kind == "checkerboard":
        vertical, horizontal, tile_size = checkerboard_edges(config.texture, spec)
        straightness = edge_straightness(image, coverage, vertical, horizontal, tile_size)
        report.update(
            {
                "straightness": straightness.overall,
                "straightness_vertical": straightness.vertical,
                "straightness_horizontal": straightness.horizontal,
                "straightness_edges": straightness.n_edges,
                "straightness_max": straightness.max_deviation,
            }
        )
    if joint_with is not None:
        _, other_image, other_coverage, _ = _load_panorama(Path(joint_with))
        if other_image.shape != image.shape:
            raise ValueError(f"The panorama {joint_with} does not have the shape {image.shape}.")
        joint = coverage & other_coverage
        report["joint_coverage"] = coverage_fraction(joint, boundary)
        report["joint_psnr"] = psnr(image, reference, joint)
        report["joint_psnr_other"] = psnr(other_image, reference, joint)
        report["joint_psnr_gain"] = report["joint_psnr"] - report["joint_psnr_other"]

    logger.info(
        "PSNR %.2f dB over %.1f%% coverage of %s",
        report["psnr"],
        100 * report["coverage"],
        panorama_path.name,
    )
    return report


def cmd_export_mesh(
    panorama_path: PathLike,
    config: Optional[ExperimentConfig] = None,
    curve_path: Optional[PathLike] = None,
    radial_segments: int = 64,
    axial_segments: int = 16,
    output_prefix: Optional[PathLike] = None,
) -> Report:
    """Export a textured tunnel mesh for a stitched panorama.

    Without a curve file, a straight tunnel spanning the height band of the panorama is built.
    With a curve file, the tunnel follows the center line and `axial_segments` is used per span.
    """
    panorama_path = Path(panorama_path)
    meta = read_meta(panorama_path)
    if config is None:
        config = dataset_config(meta["dataset"])
    config.validate()
    image = read_image(panorama_path)
    spec = _panorama_spec(meta)
    radius = config.cylinder.radius

    if curve_path is not None:
        warnings.warn(
            "Curved tunnels are for display only: the panorama of a straight tunnel is stretched along the curve."
        )
        mesh = build_curved_mesh(load_curve(curve_path), radius, radial_segments, axial_segments)
    else:
        mesh = build_straight_mesh(radius, spec.y_max - spec.y_min, radial_segments, axial_segments)
        mesh.vertices[:, 1] += spec.y_min
    if output_prefix is None:
        output_prefix = panorama_path.with_name(panorama_path.stem + "_mesh")
    obj_path, mtl_path, png_path = write_mesh(mesh, image, output_prefix)
    logger.info("Wrote mesh with %d vertices to %s", len(mesh.vertices), obj_path)
    return {
        "obj": str(obj_path),
        "mtl": str(mtl_path),
        "texture": str(png_path),
        "n_vertices": len(mesh.vertices),
        "n_faces": len(mesh.faces),
    }


def format_report_value(value) -> str:
    """Format a report value for key=value output (floats with 6 decimals, `inf` for identical images)."""
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if not np.isfinite(value):
            return str(value)
        return f"{value:.6f}"
    return str(value)
