"""
OFDMA sub-carrier channels from multipath taps.
"""
from dataclasses import dataclass

import numpy as np

from src.channel.multipath import TimeDomainChannel
from src.errors import DomainError


@dataclass
class FrequencyChannel:
    """h[i, :, k] is the length-N channel vector of user k on sub-carrier i (0-based)."""
    h: np.ndarray

    @property
    def n_subcarriers(self) -> int:
        return self.h.shape[0]

    @property
    def n_antennas(self) -> int:
        return self.h.shape[1]

    @property
    def n_users(self) -> int:
        return self.h.shape[2]

    def matrix(self, i: int, users=None):
        """N x K matrix [h_i1 ... h_iK] for sub-carrier i, optionally a user subset."""
        if users is None:
            return self.h[i]
        return self.h[i][:, list(users)]

    def restrict(self, n_rows: int) -> "FrequencyChannel":
        """Channel seen by the first n_rows antennas only."""
        return FrequencyChannel(h=self.h[:, :n_rows, :])

    def project(self, Q) -> "FrequencyChannel":
        """Effective channel Q^H h_ik for an N x r basis Q."""
        return FrequencyChannel(h=np.einsum("nr,inK->irK", Q.conj(), self.h))


def to_frequency(ch: TimeDomainChannel, N_f: int) -> FrequencyChannel:
    """lambda_nk(i) = sum_s conj(h~_nk(s)) exp(-j 2 pi i s / N_f), i = 0..N_f-1."""
    if ch.n_taps > N_f:
        raise DomainError(f"L_p = {ch.n_taps} exceeds N_f = {N_f}")
    lam = np.fft.fft(ch.taps.conj(), n=N_f, axis=-1)
    return FrequencyChannel(h=np.transpose(lam, (2, 1, 0)).copy())
