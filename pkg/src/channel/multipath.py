"""
Time-domain multipath channel generators (Rayleigh and geometric ULA).
"""
import logging
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from src.channel.array import ArrayGeometry, steering_matrix
from src.errors import DomainError
from src.utils.rng import complex_normal

logger = logging.getLogger(__name__)


@dataclass
class GeometricParams:
    """Scattering description for the geometric channel.

    aods has shape (K_t, L_s), radians in [0, 2 pi]; pathloss has length K_t.
    """
    aods: np.ndarray
    n_taps: int
    pathloss: Optional[np.ndarray] = None

    def __post_init__(self):
        self.aods = np.atleast_2d(np.asarray(self.aods, dtype=float))
        if self.n_taps < 1:
            raise DomainError(f"n_taps must be >= 1, got {self.n_taps}")
        if self.aods.shape[1] < 1:
            raise DomainError("at least one scatterer per user is required")
        if self.pathloss is None:
            self.pathloss = np.ones(self.aods.shape[0])
        self.pathloss = np.asarray(self.pathloss, dtype=float)
        if self.pathloss.shape != (self.n_users,):
            raise DomainError(
                f"pathloss must have one entry per user ({self.n_users}), got {self.pathloss.shape}")
        if np.any(self.pathloss <= 0):
            raise DomainError("pathloss values must be positive")

    @property
    def n_users(self) -> int:
        return self.aods.shape[0]

    @property
    def n_scatterers(self) -> int:
        return self.aods.shape[1]


@dataclass
class TimeDomainChannel:
    """taps[k, n, q] is the coefficient of tap q between antenna n and user k."""
    taps: np.ndarray
    steering: list = field(default_factory=list)

    def __post_init__(self):
        self.taps = np.asarray(self.taps, dtype=complex)
        if self.taps.ndim != 3:
            raise DomainError(f"taps must be (K_t, N, L_p), got shape {self.taps.shape}")
        if not np.all(np.isfinite(self.taps)):
            raise DomainError("taps contain non-finite values")

    @property
    def n_users(self) -> int:
        return self.taps.shape[0]

    @property
    def n_antennas(self) -> int:
        return self.taps.shape[1]

    @property
    def n_taps(self) -> int:
        return self.taps.shape[2]


def draw_geometric_taps(geom: ArrayGeometry, params: GeometricParams, rng):
    """Geometric channel: tap q of user k is tau_k c_k(q).

    c_k(q) = sqrt(N / (L_s rho_k)) * CN(0, I_{L_s}) / sqrt(L_p); the extra
    1/sqrt(L_p) spreads unit power uniformly over the taps.
    """
    N, L_s, L_p = geom.n_antennas, params.n_scatterers, params.n_taps
    taps = np.empty((params.n_users, N, L_p), dtype=complex)
    steering = []
    for k in range(params.n_users):
        tau_k = steering_matrix(params.aods[k], geom)
        scale = np.sqrt(N / (L_s * params.pathloss[k])) / np.sqrt(L_p)
        c_k = scale * complex_normal(rng, (L_s, L_p))
        taps[k] = tau_k @ c_k
        steering.append(tau_k)
    return TimeDomainChannel(taps=taps, steering=steering)


def draw_rayleigh_taps(N: int, L_p: int, rng, n_users: int = 1):
    """i.i.d. CN(0, 1/L_p) taps so every frequency-domain entry has unit variance."""
    if L_p < 1:
        raise DomainError(f"L_p must be >= 1, got {L_p}")
    return TimeDomainChannel(taps=complex_normal(rng, (n_users, N, L_p), var=1.0 / L_p))
