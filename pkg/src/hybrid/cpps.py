"""
Constant-phase phase-shifter (CPPS) realization of the analog matrix.

A fixed bank of 40p phase-shifter pairs is shared by every RF chain; binary
switch matrices S^i pick which pairs feed which antenna so that column i of
the analog matrix is S^i d_cp. Each real or imaginary component is rounded to
p decimal places of x/2 and spelled one digit per decimal place.
"""
import logging
import math
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from src.errors import DomainError
from src.hybrid.phases import AMPLITUDE_SLACK, PhasePair, phase_pair_imag, phase_pair_real

logger = logging.getLogger(__name__)

SECTIONS = ("real+", "real-", "imag+", "imag-")
DIGITS = 10

# (section index, decimal place, digit)
Selection = Tuple[int, int, int]


@dataclass
class CppsBank:
    """d_cp for precision p: four sections of 10p pair values."""
    precision: int
    values: np.ndarray = field(init=False)
    phases: List[PhasePair] = field(init=False)

    def __post_init__(self):
        p = self.precision
        vals, phases = [], []
        for sec in range(len(SECTIONS)):
            for place in range(1, p + 1):
                for d in range(1, DIGITS + 1):
                    v = d * 10.0 ** (-place)
                    if sec == 0:
                        pair = phase_pair_real(2 * v)
                        vals.append(2 * v)
                    elif sec == 1:
                        pair = phase_pair_real(-2 * v)
                        vals.append(-2 * v)
                    elif sec == 2:
                        pair = phase_pair_imag(2 * v)
                        vals.append(2j * v)
                    else:
                        pair = phase_pair_imag(-2 * v)
                        vals.append(-2j * v)
                    phases.append(pair)
        self.values = np.asarray(vals, dtype=complex)
        self.phases = phases

    @property
    def n_pairs(self) -> int:
        return len(self.values)

    def index(self, section: int, place: int, digit: int) -> int:
        return section * DIGITS * self.precision + (place - 1) * DIGITS + (digit - 1)

    def section_values(self, section: int):
        n = DIGITS * self.precision
        return self.values[section * n:(section + 1) * n]


def build_bank(p: int) -> CppsBank:
    if p < 1:
        raise DomainError(f"precision p must be >= 1, got {p}")
    return CppsBank(precision=p)


def _digits(x: float, p: int):
    """[(place, digit)] spelling round(|x| / 2, p) one digit per decimal place."""
    n = int(math.floor(abs(x) / 2.0 * 10 ** p + 0.5))
    out = []
    lead = n // 10 ** (p - 1)
    rest = n - lead * 10 ** (p - 1)
    if lead:
        out.append((1, lead))
    for place in range(2, p + 1):
        d = (rest // 10 ** (p - place)) % 10
        if d:
            out.append((place, d))
    return out


def quantize_entry(z: complex, p: int) -> List[Selection]:
    """Pairs whose sum is z rounded to the nearest multiple of 2 * 10^-p per component."""
    re, im = float(np.real(z)), float(np.imag(z))
    if max(abs(re), abs(im)) > 2.0 + AMPLITUDE_SLACK:
        raise DomainError(f"component of {z} exceeds 2 in magnitude")
    sel = []
    for value, pos, neg in ((re, 0, 1), (im, 2, 3)):
        section = pos if value >= 0 else neg
        sel.extend((section, place, d) for place, d in _digits(value, p))
    return sel


def selection_value(sel: Selection) -> complex:
    section, place, d = sel
    v = 2.0 * d * 10.0 ** (-place)
    return (v, -v, 1j * v, -1j * v)[section]


@dataclass
class CppsRealization:
    """Switch matrices per RF chain and the analog matrix they realize."""
    bank: CppsBank
    switches: List[np.ndarray]
    analog: np.ndarray
    target: np.ndarray
    flow: str
    col_cap: int
    row_cap: int
    overflows: int = 0
    dropped: int = 0

    @property
    def errors(self):
        return self.analog - self.target

    @property
    def max_component_error(self) -> float:
        e = self.errors
        if e.size == 0:
            return 0.0
        return float(max(np.max(np.abs(e.real)), np.max(np.abs(e.imag))))

    def column_sq_errors(self):
        return np.sum(np.abs(self.errors) ** 2, axis=0)


def _check_target(A, bank: CppsBank):
    A = np.asarray(A, dtype=complex)
    if A.ndim != 2:
        raise DomainError(f"analog matrix must be 2-D, got shape {A.shape}")
    if A.size and max(np.max(np.abs(A.real)), np.max(np.abs(A.imag))) > 2.0 + AMPLITUDE_SLACK:
        raise DomainError("analog matrix has a component larger than 2")
    return A


def assign_asymmetric(A, bank: CppsBank) -> CppsRealization:
    """Case 1: every pair may feed all N antennas (L~ = N); rows use <= 2p pairs."""
    A = _check_target(A, bank)
    N, r = A.shape
    switches = []
    for i in range(r):
        S = np.zeros((N, bank.n_pairs), dtype=np.int8)
        for n in range(N):
            for sel in quantize_entry(A[n, i], bank.precision):
                S[n, bank.index(*sel)] = 1
        switches.append(S)
    return CppsRealization(bank=bank, switches=switches, analog=realized_matrix(switches, bank),
                           target=A, flow="asym", col_cap=N, row_cap=2 * bank.precision)


def default_col_cap(N: int) -> int:
    """Balanced load N/10 per pair, never below the two switches one entry needs."""
    return max(2, math.ceil(N / 10))


def _nearest_free(load, digit: int, cap: int) -> Optional[int]:
    best = None
    for d in range(1, DIGITS + 1):
        if d == digit or load[d] >= cap:
            continue
        key = (abs(d - digit), d)
        if best is None or key < best[0]:
            best = (key, d)
    return None if best is None else best[1]


def assign_symmetric(A, bank: CppsBank, col_cap: Optional[int] = None) -> CppsRealization:
    """Case 2: each pair feeds at most L~ antennas.

    Requests are served per (section, decimal place) in descending digit
    order (antenna index breaks ties). A full bucket sends the antenna to the
    nearest digit of the same place and section with room left, ties toward
    zero; when every bucket is full the digit is dropped.
    """
    A = _check_target(A, bank)
    N, r = A.shape
    cap = default_col_cap(N) if col_cap is None else int(col_cap)
    if cap < 2:
        raise DomainError(f"symmetric flow needs L~ >= 2, got {cap}")
    switches = []
    overflows = dropped = 0
    for i in range(r):
        S = np.zeros((N, bank.n_pairs), dtype=np.int8)
        requests = {}
        for n in range(N):
            for section, place, d in quantize_entry(A[n, i], bank.precision):
                requests.setdefault((section, place), []).append((d, n))
        for (section, place), reqs in sorted(requests.items()):
            load = [0] * (DIGITS + 1)
            for d, n in sorted(reqs, key=lambda t: (-t[0], t[1])):
                target = d
                if load[d] >= cap:
                    target = _nearest_free(load, d, cap)
                    overflows += 1
                    if target is None:
                        dropped += 1
                        continue
                load[target] += 1
                S[n, bank.index(section, place, target)] = 1
        switches.append(S)
    if overflows:
        logger.debug("symmetric CPPS: %d capacity overflows, %d dropped digits (L~=%d)",
                     overflows, dropped, cap)
    return CppsRealization(bank=bank, switches=switches, analog=realized_matrix(switches, bank),
                           target=A, flow="sym", col_cap=cap, row_cap=2 * bank.precision,
                           overflows=overflows, dropped=dropped)


def realized_matrix(switches, bank: CppsBank):
    """Column i = S^i d_cp."""
    cols = []
    for i, S in enumerate(switches):
        S = np.asarray(S)
        if S.ndim != 2 or S.shape[1] != bank.n_pairs:
            raise DomainError(
                f"switch matrix {i} has shape {S.shape}, expected (N, {bank.n_pairs})")
        cols.append(S @ bank.values)
    if not cols:
        return np.zeros((0, 0), dtype=complex)
    return np.stack(cols, axis=1)


def audit_degrees(switches, col_cap: int, row_cap: int):
    """Max (row, column) degree over all switch matrices; raises on a violated cap."""
    max_row = max_col = 0
    for i, S in enumerate(switches):
        S = np.asarray(S)
        if not np.all((S == 0) | (S == 1)):
            raise DomainError(f"switch matrix {i} is not binary")
        row = int(S.sum(axis=1).max()) if S.size else 0
        col = int(S.sum(axis=0).max()) if S.size else 0
        if row > row_cap or col > col_cap:
            raise DomainError(
                f"switch matrix {i}: row degree {row} (cap {row_cap}), "
                f"column degree {col} (cap {col_cap})")
        max_row, max_col = max(max_row, row), max(max_col, col)
    return max_row, max_col


def switch_triplets(switches):
    """Sparse (rf_chain, antenna, pair_index) rows of every closed switch."""
    rows = []
    for i, S in enumerate(switches):
        ants, pairs = np.nonzero(np.asarray(S))
        rows.extend((i, int(a), int(m)) for a, m in zip(ants, pairs))
    return rows


def realize(A, p: int, flow: str = "asym", col_cap: Optional[int] = None) -> CppsRealization:
    bank = build_bank(p)
    if flow == "asym":
        return assign_asymmetric(A, bank)
    if flow == "sym":
        return assign_symmetric(A, bank, col_cap)
    raise DomainError(f"unknown CPPS flow '{flow}'; expected 'asym' or 'sym'")
