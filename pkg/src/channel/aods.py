"""
Angle-of-departure generators for ULA channels.
"""
from dataclasses import dataclass
from typing import Optional

import numpy as np

from src.errors import DomainError


@dataclass(frozen=True)
class Lemma2AodSpec:
    """AODs confined to n_bins orthogonal Fourier bins.

    Grid sines are s_n = 2 (n - 1) / N * sin(theta), n = 1..n_bins; each
    AOD sine is a grid sine plus uniform jitter in [-jitter, jitter].
    jitter=None means 1 / (2N).
    """
    theta: float
    n_bins: int
    jitter: Optional[float] = None

    def half_width(self, n_antennas: int) -> float:
        return 1.0 / (2.0 * n_antennas) if self.jitter is None else float(self.jitter)

    def grid(self, n_antennas: int):
        n = np.arange(self.n_bins)
        return 2.0 * n / n_antennas * np.sin(self.theta)


def sine_to_aod(s):
    """Angle in [0, 2 pi) whose sine is s."""
    return np.mod(np.arcsin(np.clip(s, -1.0, 1.0)), 2.0 * np.pi)


def gen_lemma2_aods(spec: Lemma2AodSpec, K_t: int, L_s: int, rng, n_antennas: int):
    """Draw (K_t, L_s) AODs whose sines sit within the jitter of a grid sine."""
    if spec.n_bins < 1:
        raise DomainError(f"n_bins must be >= 1, got {spec.n_bins}")
    grid = spec.grid(n_antennas)
    w = spec.half_width(n_antennas)
    if w < 0:
        raise DomainError(f"jitter half-width must be non-negative, got {w}")
    if np.max(np.abs(grid)) + w > 1.0:
        raise DomainError(
            f"AOD grid leaves [-1, 1]: max |sin| = {np.max(np.abs(grid)) + w:.4f} "
            f"(n_bins={spec.n_bins}, N={n_antennas}, theta={spec.theta})")
    bins = rng.integers(0, spec.n_bins, size=(K_t, L_s))
    sines = grid[bins]
    if w > 0:
        sines = sines + rng.uniform(-w, w, size=(K_t, L_s))
    return sine_to_aod(sines)


def draw_ula_uniform_aods(K_t: int, L_s: int, rng):
    """AODs i.i.d. uniform on [0, 2 pi]."""
    return rng.uniform(0.0, 2.0 * np.pi, size=(K_t, L_s))
