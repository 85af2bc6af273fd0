"""Analytical average-rate bounds and chi-square maximum order statistics."""

from .chi import (
    ChiMaxSpec, MonteCarloEstimate, chi_max_pdf, chi_max_mean_integral,
    chi_max_normalization, chi_max_mean_closed_dof2, chi_max_mc_oracle, upper_limit,
)
from .theorem import BoundParams, Theorem2Bounds, theorem2_bounds, snr_to_power, bound_table

__all__ = [
    "ChiMaxSpec", "MonteCarloEstimate", "chi_max_pdf", "chi_max_mean_integral",
    "chi_max_normalization", "chi_max_mean_closed_dof2", "chi_max_mc_oracle", "upper_limit",
    "BoundParams", "Theorem2Bounds", "theorem2_bounds", "snr_to_power", "bound_table",
]
