"""
Exact hybrid factorization of a stacked digital precoder.

B^d = [B_1 ... B_Nf] = Q^d Bt^d (truncated SVD), then
(Q^d)^H = Bbar [Bbb  Bbt] (QR) = (Bbar Bbb alpha) (alpha^-1 [I, Bbb^-1 Bbt]),
so A~ = (alpha^-1 [I, Bbb^-1 Bbt])^H and B~ = (Bbar Bbb alpha)^H give
A~ B~ = Q^d and A~ B~ Bt_i^d = B_i.
"""
import logging
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np
import scipy.linalg as spla

from src.errors import DomainError
from src.hybrid.phases import expand_to_phases
from src.utils.linalg import default_tol

logger = logging.getLogger(__name__)

# |diag(Bbb)| below this fraction of its largest entry triggers column pivoting.
PIVOT_THRESHOLD = 1e-8


@dataclass
class DigitalStack:
    """Per-sub-carrier digital precoders concatenated column-wise."""
    blocks: List[np.ndarray]
    tol: Optional[float] = None
    matrix: np.ndarray = field(init=False)
    widths: List[int] = field(init=False)

    def __post_init__(self):
        self.blocks = [np.asarray(b, dtype=complex) for b in self.blocks]
        if not self.blocks:
            raise DomainError("a digital stack needs at least one sub-carrier")
        n_rows = {b.shape[0] for b in self.blocks}
        if len(n_rows) != 1:
            raise DomainError(f"precoders disagree on antenna count: {sorted(n_rows)}")
        self.widths = [b.shape[1] for b in self.blocks]
        self.matrix = np.concatenate(self.blocks, axis=1)

    @property
    def n_antennas(self) -> int:
        return self.matrix.shape[0]

    def offsets(self):
        return np.concatenate([[0], np.cumsum(self.widths)])


@dataclass
class HybridFactorization:
    """A~ (N x r_t), B~ (r_t x r_t), baseband blocks Bt_i^d (r_t x K_i) and alpha."""
    analog: np.ndarray
    mixing: np.ndarray
    baseband: List[np.ndarray]
    alpha: np.ndarray
    basis: np.ndarray
    antenna_order: np.ndarray
    singular_values: np.ndarray

    @property
    def rank(self) -> int:
        return self.analog.shape[1]

    @property
    def n_antennas(self) -> int:
        return self.analog.shape[0]

    def structural_mask(self):
        """True where A~ may be nonzero: the diagonal block plus the dense G~ rows."""
        N, r = self.analog.shape
        mask = np.zeros((N, r), dtype=bool)
        mask[self.antenna_order[:r], np.arange(r)] = True
        mask[self.antenna_order[r:], :] = True
        return mask

    def structural_nonzeros(self) -> int:
        return int(np.count_nonzero(self.structural_mask()))

    def phase_shifter_count(self) -> int:
        """Two phase shifters per nonzero entry of A~."""
        return 2 * len(expand_to_phases(self.analog))


def factorize(stack: DigitalStack, pivot: bool = False) -> HybridFactorization:
    """Factor B^d into A~ B~ Bt_i^d with |A~ entries| <= 2 and r_t(N - r_t + 1) nonzeros.

    The diagonal block of A~^H sits on the first r_t antennas unless that block
    is singular or pivot is set; then column-pivoted QR picks the antennas.
    """
    Bd = stack.matrix
    N = stack.n_antennas
    U, s, Vh = spla.svd(Bd, full_matrices=False)
    if s.size == 0 or s[0] == 0.0:
        raise DomainError("digital stack is all zeros")
    tol = stack.tol if stack.tol is not None else default_tol(Bd.shape)
    r = int(np.count_nonzero(s > tol * s[0]))
    Qd = U[:, :r]
    Bt = s[:r, None] * Vh[:r]

    QH = Qd.conj().T
    Qbar, R = spla.qr(QH, mode="economic")
    order = np.arange(N)
    diag = np.abs(np.diag(R[:, :r]))
    if pivot or np.min(diag) <= PIVOT_THRESHOLD * np.max(diag):
        logger.debug("pivoting the columns of (Q^d)^H (requested=%s)", pivot)
        Qbar, R, order = spla.qr(QH, mode="economic", pivoting=True)
    R1, R2 = R[:, :r], R[:, r:]
    X = spla.solve_triangular(R1, R2) if N > r else np.zeros((r, 0), dtype=complex)

    peak = np.max(np.abs(X), axis=1) if N > r else np.zeros(r)
    alpha = np.maximum(1.0, peak) / 2.0
    W = np.concatenate([np.eye(r), X], axis=1) / alpha[:, None]

    analog = np.zeros((N, r), dtype=complex)
    analog[order, :] = W.conj().T
    mixing = (Qbar @ R1 @ np.diag(alpha)).conj().T

    offs = stack.offsets()
    baseband = [Bt[:, offs[i]:offs[i + 1]] for i in range(len(stack.widths))]
    logger.debug("factorized N=%d stack of rank %d (pivoted=%s)", N, r,
                 not np.array_equal(order, np.arange(N)))
    return HybridFactorization(analog=analog, mixing=mixing, baseband=baseband,
                               alpha=alpha, basis=Qd, antenna_order=np.asarray(order),
                               singular_values=s)


def hybrid_precoders(fact: HybridFactorization, analog=None):
    """Per-sub-carrier A B~ Bt_i^d; A defaults to the exact A~."""
    A = fact.analog if analog is None else np.asarray(analog)
    AB = A @ fact.mixing
    return [AB @ b for b in fact.baseband]
