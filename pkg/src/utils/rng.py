import numpy as np


def trial_rng(seed: int, trial: int, stream: int = 0) -> np.random.Generator:
    """Generator for one Monte Carlo trial.

    Keyed by (seed, trial, stream) only, so sweeps over other axes reuse
    identical draws and execution order never changes the numbers.
    """
    return np.random.default_rng(np.random.SeedSequence([seed, trial, stream]))


def complex_normal(rng: np.random.Generator, size, var: float = 1.0):
    """Zero-mean circular complex Gaussian samples with the given variance."""
    scale = np.sqrt(var / 2.0)
    return scale * (rng.standard_normal(size) + 1j * rng.standard_normal(size))
