"""
Average sum-rate upper bounds for equal power and K users per sub-carrier.

ASB: K N_f log2(1 + (P/K) E{chi^{N_a-K+1}_max(K_g)} / sigma^2)
DB:  K N_f log2(1 + (P/K) E{chi^{N-K+1}_max(K_g)} / sigma^2)
HB:  K S~ log2(1 + (P/K) E{chi^{N-K+1}_max(K_s)} / sigma^2)
     + K (N_f - S~) log2(1 + (P/K) E{chi^{N_a-K+1}_max(K_g)} / sigma^2)
with K_g = ceil(K_t/K) and K_s = ceil(K_t N_f / (K N_a)).
"""
import math
from dataclasses import dataclass, replace
from typing import NamedTuple, Optional

import pandas as pd

from src.bounds.chi import ChiMaxSpec, chi_max_mean_integral
from src.errors import ConfigError


@dataclass(frozen=True)
class BoundParams:
    n_antennas: int
    n_rf: int
    k: int
    k_total: int
    n_subcarriers: int
    power: float
    noise_var: float = 1.0
    s_tilde: Optional[int] = None

    def __post_init__(self):
        if not 1 <= self.k <= self.n_rf <= self.n_antennas:
            raise ConfigError("k", f"need 1 <= K={self.k} <= N_a={self.n_rf} "
                                   f"<= N={self.n_antennas}")
        if self.k_total < self.k:
            raise ConfigError("k_total", f"K_t={self.k_total} is below K={self.k}")
        if self.n_subcarriers < 1:
            raise ConfigError("n_subcarriers", f"must be >= 1, got {self.n_subcarriers}")
        if self.power < 0:
            raise ConfigError("power", f"must be nonnegative, got {self.power}")
        if self.noise_var <= 0:
            raise ConfigError("noise_var", f"must be positive, got {self.noise_var}")
        if self.s_tilde is not None and self.s_tilde < 1:
            raise ConfigError("s_tilde", f"must be >= 1, got {self.s_tilde}")

    @property
    def k_g(self) -> int:
        return math.ceil(self.k_total / self.k)

    @property
    def k_s(self) -> int:
        return math.ceil(self.k_total * self.n_subcarriers / (self.k * self.n_rf))

    @property
    def s_tilde_bound(self) -> int:
        """Best sub-carriers spanning the HB basis; ceil(N_a/K) unless given, at most N_f."""
        s = self.s_tilde if self.s_tilde is not None else math.ceil(self.n_rf / self.k)
        return min(s, self.n_subcarriers)


class Theorem2Bounds(NamedTuple):
    asb: float
    db: float
    hb: float


def _per_user(params: BoundParams, dof: int, groups: int) -> float:
    chi = chi_max_mean_integral(ChiMaxSpec(dof, groups))
    return math.log2(1.0 + params.power / params.k * chi / params.noise_var)


def theorem2_bounds(params: BoundParams) -> Theorem2Bounds:
    K, N_f = params.k, params.n_subcarriers
    asb_user = _per_user(params, params.n_rf - K + 1, params.k_g)
    db_user = _per_user(params, params.n_antennas - K + 1, params.k_g)
    hb_best = _per_user(params, params.n_antennas - K + 1, params.k_s)
    S = params.s_tilde_bound
    return Theorem2Bounds(
        asb=K * N_f * asb_user,
        db=K * N_f * db_user,
        hb=K * S * hb_best + K * (N_f - S) * asb_user,
    )


def snr_to_power(snr_db: float, k_max: int, noise_var: float, n_subcarriers: int) -> float:
    """Per-sub-carrier budget P with SNR = N_f P / (K_max sigma^2)."""
    return 10.0 ** (snr_db / 10.0) * k_max * noise_var / n_subcarriers


def bound_table(params: BoundParams, snr_db, k_max: Optional[int] = None) -> pd.DataFrame:
    """Rows (snr_db, mode, bound) with P recomputed at each SNR."""
    k_max = params.k if k_max is None else k_max
    rows = []
    for snr in snr_db:
        p = replace(params, power=snr_to_power(snr, k_max, params.noise_var,
                                               params.n_subcarriers))
        b = theorem2_bounds(p)
        for mode in ("asb", "db", "hb"):
            rows.append({"snr_db": float(snr), "mode": mode, "bound": getattr(b, mode)})
    return pd.DataFrame(rows, columns=["snr_db", "mode", "bound"])
