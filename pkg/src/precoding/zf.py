"""
Zero-forcing precoder per sub-carrier.
"""
from dataclasses import dataclass
from typing import Optional

import numpy as np
import scipy.linalg as spla

from src.errors import RankDeficientError
from src.utils.linalg import default_tol


@dataclass
class ZfPrecoder:
    """ZF directions b_k (columns, H^H B = I) with gains g_k = 1 / ||b_k||^2.

    power/budget/noise_var are filled once a power policy has been applied.
    """
    directions: np.ndarray
    gains: np.ndarray
    power: Optional[np.ndarray] = None
    budget: Optional[float] = None
    noise_var: float = 1.0

    @property
    def n_users(self) -> int:
        return self.directions.shape[1]

    def transmit_matrix(self):
        """Columns sqrt(p_k) b_k / ||b_k||; user k then receives p_k g_k."""
        if self.power is None:
            raise ValueError("no power allocation applied to this precoder")
        return self.directions * np.sqrt(self.power * self.gains)[None, :]

    def rates(self):
        """ZF shortcut log2(1 + p_k g_k / sigma^2)."""
        if self.power is None:
            raise ValueError("no power allocation applied to this precoder")
        return np.log2(1.0 + self.power * self.gains / self.noise_var)


def zf_precoder(H, subcarrier=None, users=None) -> ZfPrecoder:
    """B = H (H^H H)^{-1} through a thin QR: B = Q R^{-H}.

    Raises RankDeficientError when the smallest singular value of H is not
    above max(M, K) * eps * sigma_max.
    """
    H = np.asarray(H, dtype=complex)
    if H.ndim != 2:
        raise ValueError(f"H must be a matrix, got shape {H.shape}")
    M, K = H.shape
    if K == 0:
        raise RankDeficientError("empty user set", subcarrier, users)
    if K > M:
        raise RankDeficientError(
            f"{K} users exceed the {M} available dimensions", subcarrier, users)
    s = spla.svd(H, compute_uv=False)
    if s[0] == 0.0 or s[-1] <= default_tol(H.shape) * s[0]:
        raise RankDeficientError("channel matrix is rank deficient", subcarrier, users)
    Q, R = spla.qr(H, mode="economic")
    B = Q @ spla.solve_triangular(R, np.eye(K, dtype=complex), trans="C")
    gains = 1.0 / np.sum(np.abs(B) ** 2, axis=0)
    return ZfPrecoder(directions=B, gains=gains)


def projector_gain(H, k: int) -> float:
    """g_k = ||Gamma_k^perp h_k||^2 with Gamma_k^perp projecting off the other users."""
    H = np.asarray(H, dtype=complex)
    h = H[:, k]
    others = np.delete(H, k, axis=1)
    if others.shape[1] == 0:
        return float(np.vdot(h, h).real)
    proj = others @ np.linalg.pinv(others)
    r = h - proj @ h
    return float(np.vdot(r, r).real)
