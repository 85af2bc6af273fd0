"""
Factorization diagnostics on a random Rayleigh digital stack.
"""
import logging
from typing import Optional

import numpy as np

from src import settings
from src.channel import draw_channels
from src.errors import ConfigError
from src.hybrid.cpps import audit_degrees, realize, switch_triplets
from src.hybrid.factorization import DigitalStack, factorize, hybrid_precoders
from src.precoding.rates import zf_beamformer
from src.utils.io import save_triplets
from src.utils.rng import trial_rng

logger = logging.getLogger(__name__)

DIAGNOSTIC_STREAM = 1


def random_db_stack(n: int, k: int, nf: int, seed: int):
    """ZF precoders of the first k users on nf Rayleigh sub-carriers, equal power 1."""
    rng = trial_rng(seed, 0, DIAGNOSTIC_STREAM)
    channels = draw_channels("rayleigh", n, nf, min(settings.N_TAPS, nf), k, rng)
    users = list(range(k))
    return [zf_beamformer(channels.matrix(i, users), "equal", 1.0, 1.0, i, users)[1]
            for i in range(nf)]


def decompose_diagnostics(n: int, k: int, nf: int, seed: int = settings.SEED,
                          cpps: int = 0, flow: str = "asym",
                          col_cap: Optional[int] = None, switches_path=None) -> dict:
    """Factorize a random stack and report its structure.

    Returns an ordered dict of scalar diagnostics; with cpps > 0 the CPPS
    realization of A~ is audited too, and switches_path receives its
    (rf_chain, antenna, pair_index) triplets.
    """
    if n < 1:
        raise ConfigError("n", f"must be >= 1, got {n}")
    if not 1 <= k <= n:
        raise ConfigError("k", f"need 1 <= k <= n={n}, got {k}")
    if nf < 1:
        raise ConfigError("nf", f"must be >= 1, got {nf}")
    if cpps < 0:
        raise ConfigError("cpps", f"must be >= 0, got {cpps}")

    blocks = random_db_stack(n, k, nf, seed)
    fact = factorize(DigitalStack(blocks))
    r = fact.rank
    errs = [np.linalg.norm(F - B) / np.linalg.norm(B)
            for F, B in zip(hybrid_precoders(fact), blocks)]
    diag = {
        "n": n, "k": k, "nf": nf,
        "rank": r,
        "structural_nonzeros": fact.structural_nonzeros(),
        "nonzero_bound": r * (n - r + 1),
        "phase_shifters": fact.phase_shifter_count(),
        "max_abs_analog": float(np.max(np.abs(fact.analog))),
        "reconstruction_error": float(max(errs)),
        "pivoted": bool(not np.array_equal(fact.antenna_order, np.arange(n))),
    }
    if cpps > 0:
        real = realize(fact.analog, cpps, flow, col_cap)
        max_row, max_col = audit_degrees(real.switches, real.col_cap, real.row_cap)
        F = hybrid_precoders(fact, real.analog)
        cerrs = [np.linalg.norm(Fi - B) / np.linalg.norm(B) for Fi, B in zip(F, blocks)]
        diag.update({
            "cpps_precision": cpps,
            "cpps_flow": real.flow,
            "cpps_pairs": real.bank.n_pairs,
            "cpps_max_row_degree": max_row,
            "cpps_max_col_degree": max_col,
            "cpps_col_cap": real.col_cap,
            "cpps_max_error": real.max_component_error,
            "cpps_overflows": real.overflows,
            "cpps_dropped": real.dropped,
            "cpps_reconstruction_error": float(max(cerrs)),
        })
        if switches_path is not None:
            rows = switch_triplets(real.switches)
            save_triplets(switches_path, rows)
            logger.info(f"Wrote {len(rows)} switch triplets to {switches_path}")
    return diag
