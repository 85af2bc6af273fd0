"""
Two-phase-shifter identities: any complex scalar with modulus <= 2 is the sum
of two unit-modulus terms.
"""
from typing import List, NamedTuple, Tuple

import numpy as np

from src.errors import DomainError

# Slack for entries that land on |z| = 2 up to rounding.
AMPLITUDE_SLACK = 1e-12


class PhasePair(NamedTuple):
    phi1: float
    phi2: float

    def value(self) -> complex:
        return complex(np.exp(1j * self.phi1) + np.exp(1j * self.phi2))


def _clip_half(x: float) -> float:
    if abs(x) > 2.0 + AMPLITUDE_SLACK:
        raise DomainError(f"|{x}| exceeds the phase-pair range of 2")
    return float(np.clip(x / 2.0, -1.0, 1.0))


def phase_pair_real(x: float) -> PhasePair:
    """x = exp(j acos(x/2)) + exp(-j acos(x/2))."""
    phi = float(np.arccos(_clip_half(x)))
    return PhasePair(phi, -phi)


def phase_pair_imag(x: float) -> PhasePair:
    """jx = exp(j asin(x/2)) + exp(j (pi - asin(x/2)))."""
    phi = float(np.arcsin(_clip_half(x)))
    return PhasePair(phi, float(np.pi - phi))


def phase_pair_complex(z: complex) -> PhasePair:
    """z = |z| e^{j phi} = exp(j (phi + c)) + exp(j (phi - c)), c = acos(|z| / 2).

    z = 0 uses phi = 0.
    """
    a = abs(z)
    c = float(np.arccos(_clip_half(a)))
    phi = float(np.angle(z)) if a > 0 else 0.0
    return PhasePair(phi + c, phi - c)


def expand_to_phases(A) -> List[Tuple[int, int, PhasePair]]:
    """One phase pair per nonzero entry of A; zero entries keep their switch open."""
    A = np.asarray(A, dtype=complex)
    if A.size and np.max(np.abs(A)) > 2.0 + AMPLITUDE_SLACK:
        raise DomainError(f"entry modulus {np.max(np.abs(A)):.6g} exceeds 2")
    rows, cols = np.nonzero(A)
    return [(int(m), int(n), phase_pair_complex(A[m, n])) for m, n in zip(rows, cols)]


def reconstruct_from_phases(pairs, shape):
    """Resum e^{j phi1} + e^{j phi2} into a matrix of the given shape."""
    A = np.zeros(shape, dtype=complex)
    for m, n, pair in pairs:
        A[m, n] = pair.value()
    return A
