"""Experiment runner: corpora bound to inequality checks, with CSV/JSON reports."""

from .config import EXPERIMENT_IDS, ConfigError, ExperimentConfig, load_config, parse_config_text
from .experiments import ExperimentError, ExperimentReport, Row, run_experiment, write_report

__all__ = [
    "EXPERIMENT_IDS",
    "ConfigError",
    "ExperimentConfig",
    "ExperimentError",
    "ExperimentReport",
    "Row",
    "load_config",
    "parse_config_text",
    "run_experiment",
    "write_report",
]
