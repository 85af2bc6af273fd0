"""
Experiment configuration: dataclass defaults from settings, flat key = value
files read with python-dotenv, and command-line overrides of the same names.
"""
import logging
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import List, Optional

import numpy as np
from dotenv import dotenv_values

from src import settings
from src.bounds.theorem import snr_to_power
from src.channel import CHANNEL_KINDS, Lemma2AodSpec
from src.errors import ConfigError
from src.precoding.power import POWER_POLICIES
from src.scheduler.config import MODES, SchedulerConfig
from src.scheduler.pipeline import CppsOptions

logger = logging.getLogger(__name__)

CPPS_FLOWS = ("asym", "sym")


@dataclass
class ExperimentConfig:
    n_antennas: int = settings.N_ANTENNAS
    n_rf: int = settings.N_RF
    n_subcarriers: int = settings.N_SUBCARRIERS
    n_taps: int = settings.N_TAPS
    k_total: int = settings.K_TOTAL
    k_max: int = settings.K_MAX
    noise_var: float = settings.NOISE_VAR
    snr_db: List[float] = field(default_factory=lambda: list(settings.SNR_DB))
    trials: int = settings.TRIALS
    seed: int = settings.SEED
    channel: str = "rayleigh"
    n_scatterers: int = settings.N_SCATTERERS
    lemma2_theta: float = settings.LEMMA2_THETA
    modes: List[str] = field(default_factory=lambda: list(settings.MODES))
    power_policy: str = settings.POWER_POLICY
    cpps: int = 0
    cpps_flow: str = "asym"
    cpps_col_cap: Optional[int] = None
    emit_bounds: bool = False
    fixed_users: bool = False
    forced_user_sets: bool = False
    workers: int = settings.WORKERS

    def validate(self):
        positive = ("n_antennas", "n_subcarriers", "n_taps", "k_total", "k_max",
                    "trials", "n_scatterers", "workers")
        for name in positive:
            if getattr(self, name) < 1:
                raise ConfigError(name, f"must be >= 1, got {getattr(self, name)}")
        if not 1 <= self.n_rf <= self.n_antennas:
            raise ConfigError("n_rf", f"need 1 <= n_rf <= n_antennas={self.n_antennas}, "
                                      f"got {self.n_rf}")
        if self.n_taps > self.n_subcarriers:
            raise ConfigError("n_taps", f"{self.n_taps} taps exceed "
                                        f"{self.n_subcarriers} sub-carriers")
        if self.noise_var <= 0:
            raise ConfigError("noise_var", f"must be positive, got {self.noise_var}")
        if not self.snr_db:
            raise ConfigError("snr_db", "at least one SNR point is required")
        if self.channel not in CHANNEL_KINDS:
            raise ConfigError("channel", f"'{self.channel}' is not one of {CHANNEL_KINDS}")
        if not self.modes or any(m not in MODES for m in self.modes):
            raise ConfigError("modes", f"{self.modes} must be a non-empty subset of {MODES}")
        if len(set(self.modes)) != len(self.modes):
            raise ConfigError("modes", f"duplicate modes in {self.modes}")
        if self.power_policy not in POWER_POLICIES:
            raise ConfigError("power_policy",
                              f"'{self.power_policy}' is not one of {POWER_POLICIES}")
        if self.cpps < 0:
            raise ConfigError("cpps", f"precision must be >= 0 (0 = off), got {self.cpps}")
        if self.cpps_flow not in CPPS_FLOWS:
            raise ConfigError("cpps_flow", f"'{self.cpps_flow}' is not one of {CPPS_FLOWS}")
        if self.cpps_col_cap is not None and self.cpps_col_cap < 2:
            raise ConfigError("cpps_col_cap", f"must be >= 2, got {self.cpps_col_cap}")
        if (self.emit_bounds or self.forced_user_sets) and self.k_max > self.n_rf:
            raise ConfigError("k_max", f"K_max={self.k_max} exceeds n_rf={self.n_rf}")
        if self.emit_bounds and self.k_total < self.k_max:
            raise ConfigError("k_total", f"K_t={self.k_total} is below K_max={self.k_max}")
        if self.channel == "ula-lemma2":
            spec = self.lemma2_spec()
            top = float(np.max(np.abs(spec.grid(self.n_antennas))))
            top += spec.half_width(self.n_antennas)
            if top > 1.0:
                raise ConfigError("lemma2_theta", f"grid sines reach {top:.4g} > 1")
        return self

    def power(self, snr_db: float) -> float:
        return snr_to_power(snr_db, self.k_max, self.noise_var, self.n_subcarriers)

    def scheduler_config(self, mode: str, snr_db: float) -> SchedulerConfig:
        return SchedulerConfig(mode=mode, n_rf=self.n_rf, k_max=self.k_max,
                               power=self.power(snr_db), noise_var=self.noise_var,
                               power_policy=self.power_policy,
                               fixed_users=self.fixed_users, workers=1)

    def cpps_options(self) -> CppsOptions:
        return CppsOptions(precision=self.cpps, flow=self.cpps_flow, col_cap=self.cpps_col_cap)

    def lemma2_spec(self) -> Optional[Lemma2AodSpec]:
        if self.channel != "ula-lemma2":
            return None
        return Lemma2AodSpec(theta=self.lemma2_theta, n_bins=self.n_rf)


def _bool(text: str) -> bool:
    t = text.strip().lower()
    if t in ("1", "true", "yes", "on"):
        return True
    if t in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: '{text}'")


def _optional_int(text: str):
    t = text.strip().lower()
    return None if t in ("", "none", "auto") else int(t)


def _float_list(text: str):
    return [float(v) for v in text.split(",") if v.strip()]


def _str_list(text: str):
    return [v.strip() for v in text.split(",") if v.strip()]


FIELD_PARSERS = {
    "n_antennas": int, "n_rf": int, "n_subcarriers": int, "n_taps": int,
    "k_total": int, "k_max": int, "trials": int, "seed": int, "n_scatterers": int,
    "cpps": int, "workers": int,
    "cpps_col_cap": _optional_int,
    "noise_var": float, "lemma2_theta": float,
    "snr_db": _float_list,
    "modes": _str_list,
    "channel": str.strip, "power_policy": str.strip, "cpps_flow": str.strip,
    "emit_bounds": _bool, "fixed_users": _bool, "forced_user_sets": _bool,
}


def normalize_key(key: str) -> str:
    return key.strip().lstrip("-").replace("-", "_").lower()


def coerce(values) -> dict:
    """Parse raw strings into typed field values; ConfigError names the bad key."""
    out = {}
    for raw_key, raw in values.items():
        key = normalize_key(raw_key)
        if key not in FIELD_PARSERS:
            raise ConfigError(key, "unknown configuration key")
        if raw is None:
            raise ConfigError(key, "missing value")
        if not isinstance(raw, str):
            out[key] = raw
            continue
        try:
            out[key] = FIELD_PARSERS[key](raw)
        except ValueError as e:
            raise ConfigError(key, f"cannot parse '{raw}': {e}") from None
    return out


def load_config(path=None, overrides=None) -> ExperimentConfig:
    """Defaults < config file < overrides, then validated."""
    values = {}
    if path is not None:
        path = Path(path)
        if not path.is_file():
            raise ConfigError("config", f"file not found: {path}")
        values.update(dotenv_values(path))
        logger.debug("read %d keys from %s", len(values), path)
    values.update(overrides or {})
    return replace(ExperimentConfig(), **coerce(values)).validate()


__all__ = ["ExperimentConfig", "load_config", "coerce", "normalize_key",
           "FIELD_PARSERS", "CPPS_FLOWS"]
