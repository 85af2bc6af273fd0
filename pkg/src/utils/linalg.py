from typing import Optional

import numpy as np
import scipy.linalg as spla


def default_tol(shape) -> float:
    """max(M, K) * machine epsilon: the relative rank threshold used by ZF."""
    return max(shape) * np.finfo(float).eps


def numerical_rank(M, tol: Optional[float] = None) -> int:
    """Count singular values above tol * sigma_max.

    Args:
        M: matrix (any shape, real or complex)
        tol: relative threshold; defaults to max(shape) * eps

    Returns:
        int: numerical rank, 0 for an empty or all-zero matrix
    """
    M = np.atleast_2d(np.asarray(M))
    if M.size == 0:
        return 0
    s = spla.svd(M, compute_uv=False)
    if s[0] == 0.0:
        return 0
    if tol is None:
        tol = default_tol(M.shape)
    return int(np.count_nonzero(s > tol * s[0]))


def orthonormal_complement(Q, n_cols: int):
    """Return n_cols orthonormal columns orthogonal to span(Q)."""
    N = Q.shape[0]
    if n_cols <= 0:
        return np.zeros((N, 0), dtype=complex)
    U, _, _ = spla.svd(np.eye(N) - Q @ Q.conj().T)
    return U[:, :n_cols]
