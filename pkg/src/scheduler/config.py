from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from src import settings
from src.errors import ConfigError
from src.precoding.power import POWER_POLICIES

MODES = ("asb", "hb", "db")

PHASE1_ONLY = "phase1-only"
PHASE2 = "phase2"

BASIS_SVD = "svd"
BASIS_ANTENNAS = "antennas"


@dataclass
class SchedulerConfig:
    mode: str = "hb"
    n_rf: int = settings.N_RF
    k_max: int = settings.K_MAX
    power: float = 1.0
    noise_var: float = settings.NOISE_VAR
    power_policy: str = settings.POWER_POLICY
    rank_tol: float = settings.RANK_TOL
    fixed_users: bool = False
    workers: int = 1

    def validate(self, n_antennas: Optional[int] = None):
        if self.mode not in MODES:
            raise ConfigError("mode", f"'{self.mode}' is not one of {MODES}")
        if self.n_rf < 1:
            raise ConfigError("n_rf", f"must be >= 1, got {self.n_rf}")
        if n_antennas is not None and self.n_rf > n_antennas:
            raise ConfigError("n_rf", f"{self.n_rf} RF chains exceed {n_antennas} antennas")
        if self.k_max < 1:
            raise ConfigError("k_max", f"must be >= 1, got {self.k_max}")
        if self.power <= 0:
            raise ConfigError("power", f"must be positive, got {self.power}")
        if self.noise_var <= 0:
            raise ConfigError("noise_var", f"must be positive, got {self.noise_var}")
        if self.power_policy not in POWER_POLICIES:
            raise ConfigError("power_policy",
                              f"'{self.power_policy}' is not one of {POWER_POLICIES}")
        if not 0 < self.rank_tol < 1:
            raise ConfigError("rank_tol", f"must lie in (0, 1), got {self.rank_tol}")
        return self


@dataclass
class GreedyResult:
    """Phase I outcome on one sub-carrier."""
    users: Tuple[int, ...]
    transmit: np.ndarray
    rate: float
    user_rates: np.ndarray
    trace: List[float] = field(default_factory=list)


@dataclass
class ScheduleOutcome:
    mode: str
    users: List[Tuple[int, ...]]
    precoders: List[np.ndarray]
    user_rates: List[np.ndarray]
    stacked_rank: int
    phase: str = PHASE1_ONLY
    basis: Optional[np.ndarray] = None
    s_tilde: int = 0
    basis_padded: bool = False
    basis_source: str = ""
    traces: List[List[float]] = field(default_factory=list)

    @property
    def n_subcarriers(self) -> int:
        return len(self.users)

    @property
    def subcarrier_rates(self):
        return np.array([float(np.sum(r)) for r in self.user_rates])

    @property
    def total_rate(self) -> float:
        return float(np.sum(self.subcarrier_rates))

    @property
    def mean_users(self) -> float:
        return float(np.mean([len(u) for u in self.users])) if self.users else 0.0

    def stacked(self):
        return np.concatenate(self.precoders, axis=1)
