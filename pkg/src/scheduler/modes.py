"""
Scheduling and digital precoding for the three architectures.

db:  Phase I on the full N-antenna channels (one RF chain per antenna).
asb: Phase I on the first N_a antennas only, precoders padded with zeros.
hb:  Phase I on the full channels; when the stacked precoder B^d has rank
     above N_a, Phase II picks an N_a-dimensional basis Q^d from the best
     sub-carriers and reruns Phase I on the projected channels Q^d^H h_ik.
     The antenna-selection basis E_Na (first N_a antennas) is always a
     candidate too, so HB never falls below what ASB gets on the same draw.
"""
import logging
from concurrent.futures import ThreadPoolExecutor

import numpy as np
import scipy.linalg as spla

from src.errors import DomainError, RankDeficientError
from src.precoding.rates import zf_beamformer
from src.scheduler.config import (
    BASIS_ANTENNAS, BASIS_SVD, PHASE1_ONLY, PHASE2, GreedyResult, ScheduleOutcome,
    SchedulerConfig,
)
from src.scheduler.greedy import run_phase1
from src.utils.linalg import numerical_rank, orthonormal_complement

logger = logging.getLogger(__name__)


def _embed(W, n_rows):
    out = np.zeros((n_rows, W.shape[1]), dtype=complex)
    out[:W.shape[0]] = W
    return out


def _stack_rank(precoders, tol):
    return numerical_rank(np.concatenate(precoders, axis=1), tol)


def _outcome(mode, results, n_antennas, tol, **extra) -> ScheduleOutcome:
    precoders = [_embed(r.transmit, n_antennas) for r in results]
    return ScheduleOutcome(
        mode=mode,
        users=[r.users for r in results],
        precoders=precoders,
        user_rates=[r.user_rates for r in results],
        stacked_rank=_stack_rank(precoders, tol),
        traces=[list(r.trace) for r in results],
        **extra,
    )


def run_db(channels, config: SchedulerConfig) -> ScheduleOutcome:
    config.validate(channels.n_antennas)
    results = run_phase1(channels, config)
    return _outcome("db", results, channels.n_antennas, config.rank_tol)


def run_asb(channels, config: SchedulerConfig) -> ScheduleOutcome:
    config.validate(channels.n_antennas)
    results = run_phase1(channels.restrict(config.n_rf), config)
    return _outcome("asb", results, channels.n_antennas, config.rank_tol)


def select_basis(precoders, rates, n_rf: int, tol: float):
    """Phase II basis: top-n_rf left singular vectors of the best sub-carriers.

    Sub-carriers are taken in descending order of their Phase I rate (lower
    index first on ties) until the stacked precoders reach rank n_rf.

    Returns:
        (Q^d, S~, padded) where padded flags a basis completed with an
        orthonormal complement because even all sub-carriers fell short.
    """
    order = sorted(range(len(precoders)), key=lambda i: (-rates[i], i))
    T = None
    s_tilde = 0
    for s_tilde, i in enumerate(order, start=1):
        T = precoders[i] if T is None else np.concatenate([T, precoders[i]], axis=1)
        if numerical_rank(T, tol) >= n_rf:
            break
    U, s, _ = spla.svd(T, full_matrices=False)
    rank = int(np.count_nonzero(s > tol * s[0])) if s.size and s[0] > 0 else 0
    if rank >= n_rf:
        return U[:, :n_rf], s_tilde, False
    Q = U[:, :rank]
    logger.debug("Phase II basis has rank %d < N_a=%d, padding with complement", rank, n_rf)
    return np.concatenate([Q, orthonormal_complement(Q, n_rf - rank)], axis=1), s_tilde, True


def antenna_basis(n_antennas: int, n_rf: int):
    """E_Na: the first n_rf columns of the N x N identity."""
    return np.eye(n_antennas, n_rf, dtype=complex)


def _lift(results, Q):
    return [GreedyResult(users=r.users, transmit=Q @ r.transmit, rate=r.rate,
                         user_rates=r.user_rates, trace=r.trace) for r in results]


def _total(results) -> float:
    return float(sum(np.sum(r.user_rates) for r in results))


def run_hb(channels, config: SchedulerConfig) -> ScheduleOutcome:
    config.validate(channels.n_antennas)
    N = channels.n_antennas
    first = run_phase1(channels, config)
    precoders = [r.transmit for r in first]
    rank = _stack_rank(precoders, config.rank_tol)
    if rank <= config.n_rf:
        return _outcome("hb", first, N, config.rank_tol, phase=PHASE1_ONLY)
    Q, s_tilde, padded = select_basis(precoders, [r.rate for r in first],
                                      config.n_rf, config.rank_tol)
    logger.debug("Phase II: rank(B^d)=%d > N_a=%d, basis from %d sub-carriers",
                 rank, config.n_rf, s_tilde)
    second = _lift(run_phase1(channels.project(Q), config), Q)
    E = antenna_basis(N, config.n_rf)
    selection = _lift(run_phase1(channels.restrict(config.n_rf), config), E)
    if _total(selection) > _total(second):
        logger.debug("Phase II: antenna-selection basis beats Q^d (%.4g > %.4g)",
                     _total(selection), _total(second))
        return _outcome("hb", selection, N, config.rank_tol, phase=PHASE2, basis=E,
                        basis_source=BASIS_ANTENNAS)
    return _outcome("hb", second, N, config.rank_tol, phase=PHASE2, basis=Q,
                    s_tilde=s_tilde, basis_padded=padded, basis_source=BASIS_SVD)


MODE_RUNNERS = {"db": run_db, "asb": run_asb, "hb": run_hb}


def schedule(channels, config: SchedulerConfig) -> ScheduleOutcome:
    try:
        runner = MODE_RUNNERS[config.mode]
    except KeyError:
        raise DomainError(f"unknown mode '{config.mode}'") from None
    return runner(channels, config)


def _forced(channels, user_sets, config: SchedulerConfig):
    """ZF with the given user set on every sub-carrier; rank deficiency propagates."""
    def one(i):
        users = tuple(user_sets[i])
        pre, W, rate = zf_beamformer(channels.matrix(i, users), config.power_policy,
                                     config.power, config.noise_var, i, users)
        return GreedyResult(users=users, transmit=W, rate=rate, user_rates=pre.rates(),
                            trace=[rate])

    idx = range(channels.n_subcarriers)
    if config.workers > 1:
        with ThreadPoolExecutor(max_workers=config.workers) as ex:
            return list(ex.map(one, idx))
    return [one(i) for i in idx]


def _try_forced(channels, user_sets, config, basis):
    try:
        return _lift(_forced(channels, user_sets, config), basis), None
    except RankDeficientError as e:
        return None, e


def _dominates(results, reference) -> bool:
    return all(np.sum(r.user_rates) >= np.sum(ref.user_rates)
               for r, ref in zip(results, reference))


def evaluate_user_sets(channels, user_sets, config: SchedulerConfig) -> ScheduleOutcome:
    """Precoders and rates of config.mode with the per-sub-carrier user sets fixed.

    Used to compare architectures on identical (channel, user set) pairs. In
    Phase II, Q^d is kept only when it matches or beats E_Na on every
    sub-carrier; otherwise HB uses E_Na and equals ASB exactly.
    """
    config.validate(channels.n_antennas)
    if len(user_sets) != channels.n_subcarriers:
        raise DomainError(
            f"{len(user_sets)} user sets given for {channels.n_subcarriers} sub-carriers")
    N = channels.n_antennas
    if config.mode == "asb":
        return _outcome("asb", _forced(channels.restrict(config.n_rf), user_sets, config),
                        N, config.rank_tol)
    digital = _forced(channels, user_sets, config)
    if config.mode == "db":
        return _outcome("db", digital, N, config.rank_tol)
    precoders = [r.transmit for r in digital]
    if _stack_rank(precoders, config.rank_tol) <= config.n_rf:
        return _outcome("hb", digital, N, config.rank_tol, phase=PHASE1_ONLY)
    Q, s_tilde, padded = select_basis(precoders, [r.rate for r in digital],
                                      config.n_rf, config.rank_tol)
    E = antenna_basis(N, config.n_rf)
    projected, err = _try_forced(channels.project(Q), user_sets, config, Q)
    selection, _ = _try_forced(channels.restrict(config.n_rf), user_sets, config, E)
    if projected is None and selection is None:
        raise err
    if projected is None or (selection is not None and not _dominates(projected, selection)):
        return _outcome("hb", selection, N, config.rank_tol, phase=PHASE2, basis=E,
                        basis_source=BASIS_ANTENNAS)
    return _outcome("hb", projected, N, config.rank_tol, phase=PHASE2, basis=Q,
                    s_tilde=s_tilde, basis_padded=padded, basis_source=BASIS_SVD)
