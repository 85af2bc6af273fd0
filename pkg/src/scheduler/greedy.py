"""
Phase I of the scheduler: per-sub-carrier greedy user selection under ZF.
"""
import logging
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from src.errors import RankDeficientError
from src.precoding.rates import zf_beamformer
from src.scheduler.config import GreedyResult, SchedulerConfig

logger = logging.getLogger(__name__)


def phase1_greedy(H, pool, config: SchedulerConfig, subcarrier=None) -> GreedyResult:
    """Add users one at a time, each the argmax of the ZF sum rate.

    Stops when the best addition does not raise the rate (unless config.fixed_users),
    when K_max users are served, the pool is empty, or every remaining
    candidate makes the channel rank deficient (those are skipped).
    Ties go to the lowest user index.
    """
    H = np.asarray(H)
    pool = sorted(pool)
    selected = []
    rate_old = 0.0
    transmit = np.zeros((H.shape[0], 0), dtype=complex)
    user_rates = np.zeros(0)
    trace = []
    while pool and len(selected) < config.k_max:
        best = None
        for m in pool:
            users = selected + [m]
            try:
                pre, W, rate = zf_beamformer(H[:, users], config.power_policy, config.power,
                                             config.noise_var, subcarrier, users)
            except RankDeficientError:
                continue
            if best is None or rate > best[3]:
                best = (m, pre, W, rate)
        if best is None:
            break
        m, pre, W, rate = best
        if not config.fixed_users and rate <= rate_old:
            break
        selected.append(m)
        pool.remove(m)
        rate_old = rate
        transmit = W
        user_rates = pre.rates()
        trace.append(rate)
    return GreedyResult(users=tuple(selected), transmit=transmit, rate=rate_old,
                        user_rates=user_rates, trace=trace)


def run_phase1(channels, config: SchedulerConfig):
    """Phase I on every sub-carrier, each starting from the full user pool."""
    pool = range(channels.n_users)

    def one(i):
        return phase1_greedy(channels.matrix(i), pool, config, subcarrier=i)

    subcarriers = range(channels.n_subcarriers)
    if config.workers > 1:
        with ThreadPoolExecutor(max_workers=config.workers) as ex:
            return list(ex.map(one, subcarriers))
    return [one(i) for i in subcarriers]
