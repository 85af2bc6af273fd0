"""Utility modules for the simulator."""

from .linalg import numerical_rank, default_tol, orthonormal_complement
from .rng import trial_rng, complex_normal
from .io import ensure_parent, save_triplets

__all__ = [
    "numerical_rank", "default_tol", "orthonormal_complement",
    "trial_rng", "complex_normal", "ensure_parent", "save_triplets",
]
