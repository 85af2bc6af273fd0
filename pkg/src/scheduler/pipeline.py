"""
Schedule, factorize and (optionally) quantize to the CPPS network.
"""
import logging
from dataclasses import dataclass
from typing import List, Optional

import numpy as np
import scipy.linalg as spla
from scipy.optimize import brentq

from src.errors import DomainError, RankDeficientError
from src.hybrid.cpps import CppsRealization, realize
from src.hybrid.factorization import DigitalStack, HybridFactorization, factorize, hybrid_precoders
from src.precoding.rates import RateReport, sinr_rates, zf_beamformer
from src.scheduler.config import ScheduleOutcome, SchedulerConfig
from src.scheduler.modes import evaluate_user_sets, schedule

logger = logging.getLogger(__name__)


@dataclass
class CppsOptions:
    precision: int = 0
    flow: str = "asym"
    col_cap: Optional[int] = None

    @property
    def enabled(self) -> bool:
        return self.precision > 0


@dataclass
class BeamformingResult:
    outcome: ScheduleOutcome
    factorization: Optional[HybridFactorization]
    cpps: Optional[CppsRealization]
    precoders: List[np.ndarray]
    realized: RateReport

    @property
    def digital_rate(self) -> float:
        return self.outcome.total_rate

    @property
    def total_rate(self) -> float:
        return self.realized.total

    def phase_shifter_pairs(self) -> int:
        if self.factorization is None:
            return 0
        return self.factorization.structural_nonzeros()

    def max_analog_error(self) -> float:
        return 0.0 if self.cpps is None else self.cpps.max_component_error


def _match_power(F, W):
    """Rescale F to the Frobenius power of W."""
    pf = np.sum(np.abs(F) ** 2)
    if pf == 0.0:
        return F
    return F * np.sqrt(np.sum(np.abs(W) ** 2) / pf)


def _span(A, tol: float):
    U, s, _ = spla.svd(A, full_matrices=False)
    if s.size == 0 or s[0] == 0.0:
        return U[:, :0]
    return U[:, :int(np.count_nonzero(s > tol * s[0]))]


def _rezf(H, U, config: SchedulerConfig, subcarrier, users):
    """ZF inside span(U) for the scheduled users, None if they do not fit."""
    try:
        _, W, _ = zf_beamformer(U.conj().T @ H, config.power_policy, config.power,
                                config.noise_var, subcarrier, users)
    except RankDeficientError:
        return None
    return U @ W


def _back_off(H, F, noise_var: float, target: float):
    """Scale the transmit power of F down until its sum rate is target."""
    def excess(c):
        return float(np.sum(sinr_rates(H, np.sqrt(c) * F, noise_var))) - target
    c = brentq(excess, 0.0, 1.0, xtol=1e-15)
    return np.sqrt(c) * F


def realize_outcome(channels, outcome: ScheduleOutcome, config: SchedulerConfig,
                    cpps: Optional[CppsOptions] = None) -> BeamformingResult:
    """Factorize the digital precoders of outcome and rate the realized ones.

    The ASB precoders are applied as scheduled. For hb/db the stack is split
    into A~ B~ Bt_i^d. With CPPS enabled the split uses column-pivoted QR,
    A~ is replaced by its switch-network realization A and the baseband is
    recomputed as ZF on the effective channel seen through A, same users and
    power policy. A sub-carrier whose users no longer fit keeps A B~ Bt_i^d
    rescaled to the digital power. A sub-carrier that ends up above its
    digital rate has its power backed off to that rate.
    """
    cpps = cpps or CppsOptions()
    if outcome.mode == "asb" or outcome.stacked_rank == 0:
        rates = [sinr_rates(channels.matrix(i, u), W, config.noise_var)
                 for i, (u, W) in enumerate(zip(outcome.users, outcome.precoders))]
        return BeamformingResult(outcome=outcome, factorization=None, cpps=None,
                                 precoders=list(outcome.precoders),
                                 realized=RateReport(rates=rates))

    fact = factorize(DigitalStack(outcome.precoders, tol=config.rank_tol), pivot=cpps.enabled)
    if outcome.mode == "hb" and fact.rank > config.n_rf:
        raise DomainError(f"hb stack rank {fact.rank} exceeds N_a={config.n_rf}")
    if not cpps.enabled:
        precoders = [_match_power(F, W)
                     for F, W in zip(hybrid_precoders(fact), outcome.precoders)]
        rates = [sinr_rates(channels.matrix(i, u), F, config.noise_var)
                 for i, (u, F) in enumerate(zip(outcome.users, precoders))]
        return BeamformingResult(outcome=outcome, factorization=fact, cpps=None,
                                 precoders=precoders, realized=RateReport(rates=rates))

    realization = realize(fact.analog, cpps.precision, cpps.flow, cpps.col_cap)
    logger.debug("CPPS p=%d %s: max component error %.3g",
                 cpps.precision, cpps.flow, realization.max_component_error)
    U = _span(realization.analog, config.rank_tol)
    direct = hybrid_precoders(fact, realization.analog)
    precoders, rates = [], []
    fallbacks = backed_off = 0
    for i, users in enumerate(outcome.users):
        H = channels.matrix(i, users)
        F = None
        if users:
            F = _rezf(H, U, config, i, users)
        if F is None:
            F = _match_power(direct[i], outcome.precoders[i])
            fallbacks += bool(users)
        r = sinr_rates(H, F, config.noise_var)
        target = float(np.sum(outcome.user_rates[i]))
        if np.sum(r) > target:
            F = _back_off(H, F, config.noise_var, target)
            r = sinr_rates(H, F, config.noise_var)
            backed_off += 1
        precoders.append(F)
        rates.append(r)
    if fallbacks or backed_off:
        logger.debug("CPPS: %d sub-carriers kept the direct precoder, %d backed off",
                     fallbacks, backed_off)
    return BeamformingResult(outcome=outcome, factorization=fact, cpps=realization,
                             precoders=precoders, realized=RateReport(rates=rates))


def schedule_and_beamform(channels, config: SchedulerConfig,
                          cpps: Optional[CppsOptions] = None,
                          user_sets=None) -> BeamformingResult:
    """Run config.mode end to end; user_sets forces the per-sub-carrier users."""
    if user_sets is None:
        outcome = schedule(channels, config)
    else:
        outcome = evaluate_user_sets(channels, user_sets, config)
    return realize_outcome(channels, outcome, config, cpps)
