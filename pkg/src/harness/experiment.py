"""
Monte Carlo experiments: every trial draws one channel realization and
evaluates each requested mode and SNR on it.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import replace

import pandas as pd

from src.bounds.theorem import BoundParams, theorem2_bounds
from src.channel import draw_channels
from src.errors import ConfigError, DropRow
from src.items import BOUND_SUFFIX, BOUND_TRIAL, RESULT_COLUMNS, SWEEP_COLUMNS, ResultRow
from src.pipelines import ResultPipeline
from src.scheduler.modes import schedule
from src.scheduler.pipeline import schedule_and_beamform
from src.utils.rng import trial_rng
from src.harness.config import ExperimentConfig

logger = logging.getLogger(__name__)

CHANNEL_STREAM = 0


def draw_trial_channels(config: ExperimentConfig, trial: int):
    rng = trial_rng(config.seed, trial, CHANNEL_STREAM)
    return draw_channels(config.channel, config.n_antennas, config.n_subcarriers,
                         config.n_taps, config.k_total, rng,
                         n_scatterers=config.n_scatterers, lemma2=config.lemma2_spec())


def run_trial(config: ExperimentConfig, trial: int):
    """Result rows of one trial, all modes and SNRs on the same draw."""
    logger.debug("trial %d started", trial)
    channels = draw_trial_channels(config, trial)
    cpps = config.cpps_options()
    rows = []
    for snr in config.snr_db:
        forced = None
        if config.forced_user_sets:
            forced = schedule(channels, config.scheduler_config("db", snr)).users
        for mode in config.modes:
            res = schedule_and_beamform(channels, config.scheduler_config(mode, snr),
                                        cpps, user_sets=forced)
            rows.append(ResultRow(
                mode=mode, snr_db=float(snr), trial=trial,
                sum_rate=res.total_rate,
                mean_users=res.outcome.mean_users,
                rank=res.outcome.stacked_rank,
                s_tilde=res.outcome.s_tilde,
                ps_pairs=res.phase_shifter_pairs(),
                cpps_max_error=res.max_analog_error(),
            ))
    logger.debug("trial %d finished", trial)
    return rows


def bound_rows(config: ExperimentConfig):
    """Bound rows (mode '<m>-bound', trial -1) for every SNR."""
    rows = []
    for mode in config.modes:
        for snr in config.snr_db:
            params = BoundParams(n_antennas=config.n_antennas, n_rf=config.n_rf,
                                 k=config.k_max, k_total=config.k_total,
                                 n_subcarriers=config.n_subcarriers,
                                 power=config.power(snr), noise_var=config.noise_var)
            value = getattr(theorem2_bounds(params), mode)
            rows.append(ResultRow(mode=mode + BOUND_SUFFIX, snr_db=float(snr),
                                  trial=BOUND_TRIAL, sum_rate=value, mean_users=config.k_max,
                                  rank=0, s_tilde=params.s_tilde_bound if mode == "hb" else 0,
                                  ps_pairs=0, cpps_max_error=0.0))
    return rows


def _to_table(rows, pipeline: ResultPipeline) -> pd.DataFrame:
    records = []
    for row in rows:
        try:
            records.append(pipeline.process_row(row).to_dict())
        except DropRow as e:
            logger.warning(f"Dropped row: {e}")
    return pd.DataFrame(records, columns=RESULT_COLUMNS)


def run_experiment(config: ExperimentConfig) -> pd.DataFrame:
    """Result table ordered by (mode, snr, trial), bound rows last.

    Trials run on config.workers threads; the table does not depend on the
    worker count.
    """
    config.validate()
    logger.info(f"Running {config.trials} trials, modes {config.modes}, "
                f"{len(config.snr_db)} SNR points, {config.workers} workers")
    trials = range(config.trials)
    if config.workers > 1:
        with ThreadPoolExecutor(max_workers=config.workers) as ex:
            per_trial = list(ex.map(lambda t: run_trial(config, t), trials))
    else:
        per_trial = [run_trial(config, t) for t in trials]

    mode_rank = {m: i for i, m in enumerate(config.modes)}
    snr_rank = {float(s): i for i, s in enumerate(config.snr_db)}
    rows = [r for trial_rows in per_trial for r in trial_rows]
    rows.sort(key=lambda r: (mode_rank[r.mode], snr_rank[r.snr_db], r.trial))
    if config.emit_bounds:
        rows.extend(bound_rows(config))

    table = _to_table(rows, ResultPipeline())
    logger.info(f"Experiment finished with {len(table)} rows")
    return table


def _axis_snr(config, v):
    return replace(config, snr_db=[float(v)])


def _axis_int(name):
    def apply(config, v):
        if float(v) != int(float(v)):
            raise ConfigError(name, f"sweep value {v} is not an integer")
        return replace(config, **{name: int(float(v))})
    return apply


SWEEP_AXES = {
    "snr": _axis_snr,
    "n_rf": _axis_int("n_rf"),
    "n_antennas": _axis_int("n_antennas"),
    "k_total": _axis_int("k_total"),
    "cpps_pairs": _axis_int("cpps"),
}


def sweep(config: ExperimentConfig, axis: str, values) -> pd.DataFrame:
    """run_experiment at every axis value; trial seeds are shared across values."""
    if axis not in SWEEP_AXES:
        raise ConfigError("axis", f"'{axis}' is not one of {sorted(SWEEP_AXES)}")
    if not values:
        raise ConfigError("values", "at least one sweep value is required")
    tables = []
    for v in values:
        point = SWEEP_AXES[axis](config, v).validate()
        logger.info(f"Sweep {axis} = {v}")
        table = run_experiment(point)
        table.insert(0, "axis_value", float(v))
        table.insert(0, "axis", axis)
        tables.append(table)
    return pd.concat(tables, ignore_index=True)[SWEEP_COLUMNS + RESULT_COLUMNS]
