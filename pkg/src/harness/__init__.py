"""Monte Carlo experiment harness: configuration, runs, sweeps and result tables."""

from .config import ExperimentConfig, load_config, coerce, normalize_key, CPPS_FLOWS
from .experiment import run_trial, run_experiment, bound_rows, sweep, SWEEP_AXES
from .output import emit, emit_csv, emit_json, load_table, summarize, FORMATS
from .diagnostics import decompose_diagnostics

__all__ = [
    "ExperimentConfig", "load_config", "coerce", "normalize_key", "CPPS_FLOWS",
    "run_trial", "run_experiment", "bound_rows", "sweep", "SWEEP_AXES",
    "emit", "emit_csv", "emit_json", "load_table", "summarize", "FORMATS",
    "decompose_diagnostics",
]
