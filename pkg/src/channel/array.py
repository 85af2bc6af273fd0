"""
Uniform linear array response vectors.
"""
from dataclasses import dataclass
from typing import Optional

import numpy as np


@dataclass(frozen=True)
class ArrayGeometry:
    """ULA with N elements; spacing defaults to half a wavelength."""
    n_antennas: int
    wavelength: float = 1.0
    spacing: Optional[float] = None

    def __post_init__(self):
        if self.n_antennas < 1:
            raise ValueError(f"n_antennas must be >= 1, got {self.n_antennas}")
        if self.wavelength <= 0:
            raise ValueError(f"wavelength must be positive, got {self.wavelength}")
        if self.spacing is None:
            object.__setattr__(self, "spacing", self.wavelength / 2.0)
        elif self.spacing <= 0:
            raise ValueError(f"spacing must be positive, got {self.spacing}")


def ula_steering(theta, geom: ArrayGeometry):
    """Unit-norm array response: entry n is exp(j n (2 pi / lambda) d sin(theta)) / sqrt(N)."""
    n = np.arange(geom.n_antennas)
    phase = 2.0 * np.pi / geom.wavelength * geom.spacing * np.sin(theta)
    return np.exp(1j * n * phase) / np.sqrt(geom.n_antennas)


def steering_matrix(aods, geom: ArrayGeometry):
    """Stack ula_steering over a sequence of angles: N x len(aods)."""
    aods = np.atleast_1d(np.asarray(aods, dtype=float))
    n = np.arange(geom.n_antennas)[:, None]
    phase = 2.0 * np.pi / geom.wavelength * geom.spacing * np.sin(aods)[None, :]
    return np.exp(1j * n * phase) / np.sqrt(geom.n_antennas)
