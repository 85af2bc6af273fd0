"""Hybrid analog/digital factorization and its phase-shifter realizations."""

from .phases import (
    PhasePair, phase_pair_real, phase_pair_imag, phase_pair_complex,
    expand_to_phases, reconstruct_from_phases,
)
from .factorization import DigitalStack, HybridFactorization, factorize, hybrid_precoders
from .cpps import (
    CppsBank, CppsRealization, build_bank, quantize_entry, selection_value,
    assign_asymmetric, assign_symmetric, realized_matrix, audit_degrees,
    switch_triplets, default_col_cap, realize,
)
from src.utils.linalg import numerical_rank

__all__ = [
    "PhasePair", "phase_pair_real", "phase_pair_imag", "phase_pair_complex",
    "expand_to_phases", "reconstruct_from_phases",
    "DigitalStack", "HybridFactorization", "factorize", "hybrid_precoders",
    "CppsBank", "CppsRealization", "build_bank", "quantize_entry", "selection_value",
    "assign_asymmetric", "assign_symmetric", "realized_matrix", "audit_degrees",
    "switch_triplets", "default_col_cap", "realize", "numerical_rank",
]
