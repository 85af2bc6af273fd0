"""
Achievable rates from the general SINR expression.
"""
from dataclasses import dataclass, field
from typing import List

import numpy as np

from src.precoding.power import power_allocation
from src.precoding.zf import zf_precoder


@dataclass
class RateReport:
    """Per-user rates (bits/s/Hz) for each sub-carrier of a report."""
    rates: List[np.ndarray] = field(default_factory=list)

    @property
    def subcarrier_rates(self):
        return np.array([float(np.sum(r)) for r in self.rates])

    @property
    def total(self) -> float:
        return float(np.sum(self.subcarrier_rates))

    @classmethod
    def combine(cls, reports):
        out = cls()
        for r in reports:
            out.rates.extend(r.rates)
        return out


def sinr_rates(H, W, noise_var: float = 1.0):
    """log2(1 + gamma_k) with gamma_k = |h_k^H w_k|^2 / (sum_{j!=k} |h_k^H w_j|^2 + sigma^2).

    H is M x K (column k = h_k), W is M x K transmit matrix.
    """
    G = np.abs(np.asarray(H).conj().T @ np.asarray(W)) ** 2
    signal = np.diag(G)
    interference = np.sum(G, axis=1) - signal
    return np.log2(1.0 + signal / (interference + noise_var))


def sum_rate(H, B, p, noise_var: float = 1.0) -> RateReport:
    """Rates of directions B driven with powers p (columns normalized, then scaled by sqrt(p))."""
    B = np.asarray(B, dtype=complex)
    norms = np.linalg.norm(B, axis=0)
    safe = np.where(norms > 0, norms, 1.0)
    W = B / safe[None, :] * np.sqrt(np.asarray(p, dtype=float))[None, :]
    W[:, norms == 0] = 0.0
    return RateReport(rates=[sinr_rates(H, W, noise_var)])


def zf_beamformer(H, policy: str, P: float, noise_var: float = 1.0, subcarrier=None, users=None):
    """ZF precoder with power applied.

    Returns:
        (ZfPrecoder, transmit matrix, ZF sum rate)
    """
    pre = zf_precoder(H, subcarrier=subcarrier, users=users)
    pre.power = power_allocation(policy, pre.gains, P, noise_var)
    pre.budget = P
    pre.noise_var = noise_var
    return pre, pre.transmit_matrix(), float(np.sum(pre.rates()))
