"""Command line entry point: `tunnelstitch simulate|stitch|eval|export-mesh`."""
import argparse
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from tunnelstitch.cli._commands import (
    cmd_eval,
    cmd_export_mesh,
    cmd_simulate,
    cmd_stitch,
    dataset_config,
    format_report_value,
    output_root,
    panorama_config,
)
from tunnelstitch.cli._config import ExperimentConfig, apply_overrides, read_config
from tunnelstitch.cli._presets import PRESETS
from tunnelstitch.utils.consts import STITCH_MODES

logger = logging.getLogger(__name__)


def _common_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument("--config", type=Path, default=None, help="Config file with key=value lines")
    parser.add_argument("--preset", choices=sorted(PRESETS), default=None, help="Named experiment preset")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="Log progress (-vv for debug output)")
    parser.add_argument("overrides", nargs="*", metavar="key=value", help="Config overrides, e.g. camera.f=400")
    return parser


def _build_parser() -> argparse.ArgumentParser:
    common = _common_parser()
    parser = argparse.ArgumentParser(
        prog="tunnelstitch", description="Simulate, stitch and evaluate cylindrical tunnel panoramas."
    )
    commands = parser.add_subparsers(dest="command", required=True)

    simulate = commands.add_parser("simulate", parents=[common], help="Render a dataset")
    simulate.add_argument("--output", type=Path, default=None, help="Dataset directory")

    stitch = commands.add_parser("stitch", parents=[common], help="Stitch a dataset into a panorama")
    stitch.add_argument("dataset", type=Path, help="Dataset directory")
    stitch.add_argument("--mode", choices=STITCH_MODES, default=None, help="Stitching mode")
    stitch.add_argument("--output", type=Path, default=None, help="Panorama file (.ppm)")

    evaluate = commands.add_parser("eval", parents=[common], help="Evaluate a stitched panorama")
    evaluate.add_argument("panorama", type=Path, help="Panorama file written by the stitch command")
    evaluate.add_argument("--joint-with", type=Path, default=None, help="Compare over the joint coverage")
    evaluate.add_argument("--reference", type=Path, default=None, help="Reference image instead of the wall texture")

    export = commands.add_parser("export-mesh", parents=[common], help="Export a textured tunnel mesh")
    export.add_argument("panorama", type=Path, help="Panorama file written by the stitch command")
    export.add_argument("--curve", type=Path, default=None, help="Center line file with one 'x y z' per line")
    export.add_argument("--radial-segments", type=int, default=64)
    export.add_argument("--axial-segments", type=int, default=16)
    export.add_argument("--output", type=Path, default=None, help="Output prefix without extension")
    return parser


def _setup_logging(verbosity: int) -> None:
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity > 1:
        level = logging.DEBUG
    logging.basicConfig(level=level, format="%(asctime)s %(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    # Library warnings are reported through the log
    logging.captureWarnings(True)


def resolve_config(args: argparse.Namespace, base: Optional[ExperimentConfig] = None) -> ExperimentConfig:
    """Combine base config, preset, config file and overrides (later ones win)."""
    config = base if base is not None else ExperimentConfig()
    if args.preset is not None:
        config = apply_overrides(config, PRESETS[args.preset])
    if args.config is not None:
        config = read_config(args.config, base=config)
    return apply_overrides(config, args.overrides)


def _run(args: argparse.Namespace):
    if args.command == "simulate":
        config = resolve_config(args)
        output = args.output
        if output is None and config.output_dir is None:
            output = output_root() / (args.preset or "dataset")
        return cmd_simulate(config, output)
    if args.command == "stitch":
        config = resolve_config(args, base=dataset_config(args.dataset))
        if args.mode is not None:
            config = apply_overrides(config, [f"mode={args.mode}"])
        return cmd_stitch(args.dataset, config, args.output)
    config = resolve_config(args, base=panorama_config(args.panorama))
    if args.command == "eval":
        return cmd_eval(args.panorama, config, joint_with=args.joint_with, reference_path=args.reference)
    return cmd_export_mesh(
        args.panorama,
        config,
        curve_path=args.curve,
        radial_segments=args.radial_segments,
        axial_segments=args.axial_segments,
        output_prefix=args.output,
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run the command line interface.

    The report is written as key=value lines to stdout.
    On failure, a single line `error: <ExceptionName>: <message>` is written to stderr and 1 is returned.
    """
    args = _build_parser().parse_args(argv)
    _setup_logging(args.verbose)
    try:
        report = _run(args)
    except Exception as e:  # noqa: BLE001
        logger.debug("Command failed", exc_info=True)
        message = " ".join(str(e).split())
        print(f"error: {type(e).__name__}: {message}", file=sys.stderr)
        return 1
    for key, value in report.items():
        print(f"{key}={format_report_value(value)}")
    return 0
