"""The `tunnelstitch` command line interface and the experiment config."""

from tunnelstitch.cli._commands import (
    cmd_eval,
    cmd_export_mesh,
    cmd_simulate,
    cmd_stitch,
    load_dataset,
    read_meta,
)
from tunnelstitch.cli._config import ExperimentConfig, apply_overrides, read_config, write_config
from tunnelstitch.cli._main import main
from tunnelstitch.cli._presets import PRESETS, preset_config

__all__ = [
    "PRESETS",
    "ExperimentConfig",
    "apply_overrides",
    "cmd_eval",
    "cmd_export_mesh",
    "cmd_simulate",
    "cmd_stitch",
    "load_dataset",
    "main",
    "preset_config",
    "read_config",
    "read_meta",
    "write_config",
]
