"""Channel generation: ULA steering, multipath taps, OFDMA sub-carrier channels."""
import logging

from .array import ArrayGeometry, ula_steering, steering_matrix
from .multipath import (
    GeometricParams, TimeDomainChannel, draw_geometric_taps, draw_rayleigh_taps,
)
from .ofdm import FrequencyChannel, to_frequency
from .aods import Lemma2AodSpec, gen_lemma2_aods, draw_ula_uniform_aods, sine_to_aod

from src.errors import DomainError

logger = logging.getLogger(__name__)

CHANNEL_KINDS = ("rayleigh", "ula-uniform", "ula-lemma2")


def draw_channels(kind, N, N_f, L_p, K_t, rng, n_scatterers=8, lemma2=None):
    """Draw one frequency-selective channel realization.

    Args:
        kind: "rayleigh", "ula-uniform" or "ula-lemma2"
        N, N_f, L_p, K_t: antennas, sub-carriers, taps, users
        rng: numpy Generator for this trial
        n_scatterers: L_s for the ULA kinds
        lemma2: Lemma2AodSpec, required for "ula-lemma2"

    Returns:
        FrequencyChannel
    """
    if kind == "rayleigh":
        taps = draw_rayleigh_taps(N, L_p, rng, n_users=K_t)
    elif kind in ("ula-uniform", "ula-lemma2"):
        geom = ArrayGeometry(N)
        if kind == "ula-uniform":
            aods = draw_ula_uniform_aods(K_t, n_scatterers, rng)
        else:
            if lemma2 is None:
                raise DomainError("ula-lemma2 channels need a Lemma2AodSpec")
            aods = gen_lemma2_aods(lemma2, K_t, n_scatterers, rng, N)
        taps = draw_geometric_taps(geom, GeometricParams(aods=aods, n_taps=L_p), rng)
    else:
        raise DomainError(f"unknown channel kind '{kind}'; expected one of {CHANNEL_KINDS}")
    return to_frequency(taps, N_f)


__all__ = [
    "ArrayGeometry", "ula_steering", "steering_matrix",
    "GeometricParams", "TimeDomainChannel", "draw_geometric_taps", "draw_rayleigh_taps",
    "FrequencyChannel", "to_frequency",
    "Lemma2AodSpec", "gen_lemma2_aods", "draw_ula_uniform_aods", "sine_to_aod",
    "draw_channels", "CHANNEL_KINDS",
]
