"""Zero-forcing precoding, power allocation and rate evaluation."""

from .zf import ZfPrecoder, zf_precoder, projector_gain
from .power import equal_power, waterfill, power_allocation, POWER_POLICIES
from .rates import RateReport, sinr_rates, sum_rate, zf_beamformer

__all__ = [
    "ZfPrecoder", "zf_precoder", "projector_gain",
    "equal_power", "waterfill", "power_allocation", "POWER_POLICIES",
    "RateReport", "sinr_rates", "sum_rate", "zf_beamformer",
]
