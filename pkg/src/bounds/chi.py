"""
Mean of the maximum of L i.i.d. chi-square(M) variables.

F(x) = P(M/2, x/2) (regularized lower incomplete gamma), f(x) its density,
f_max(x) = L F(x)^(L-1) f(x). Integrals run in u = sqrt(x) so the M = 1
singularity at the origin disappears.
"""
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

import numpy as np
from scipy.integrate import trapezoid
from scipy.special import gammainc, gammaincc, gammaln, xlogy

from src.errors import DomainError, SimulationError

logger = logging.getLogger(__name__)

TAIL_MASS = 1e-10
REL_TOL = 1e-6
START_POINTS = 1025
MAX_POINTS = 2 ** 22 + 1
MC_CHUNK = 100_000


@dataclass(frozen=True)
class ChiMaxSpec:
    dof: int
    groups: int = 1

    def __post_init__(self):
        if self.dof < 1:
            raise DomainError(f"degrees of freedom must be >= 1, got {self.dof}")
        if self.groups < 1:
            raise DomainError(f"group count must be >= 1, got {self.groups}")


class MonteCarloEstimate(NamedTuple):
    mean: float
    stderr: float
    trials: int


def _log_density(x, M):
    h = M / 2.0
    return xlogy(h - 1.0, x) - x / 2.0 - h * math.log(2.0) - gammaln(h)


def chi_max_pdf(x, spec: ChiMaxSpec):
    """Density of the max at x (x >= 0)."""
    x = np.asarray(x, dtype=float)
    M, L = spec.dof, spec.groups
    with np.errstate(divide="ignore"):
        f = np.exp(_log_density(x, M))
    return L * gammainc(M / 2.0, x / 2.0) ** (L - 1) * f


def _u_integrand(u, spec: ChiMaxSpec, moment: int):
    """x^moment f_max(x) dx expressed in u = sqrt(x): 2 u^(2 moment + 1) f_max(u^2)."""
    M, L = spec.dof, spec.groups
    x = u * u
    h = M / 2.0
    log_jac = math.log(2.0) + xlogy(M - 1.0 + 2.0 * moment, u)
    with np.errstate(divide="ignore"):
        g = np.exp(log_jac - x / 2.0 - h * math.log(2.0) - gammaln(h))
    return L * gammainc(h, x / 2.0) ** (L - 1) * g


def upper_limit(spec: ChiMaxSpec) -> float:
    """x_hi = M + 2L + 20 sqrt(2M)(1 + ln L), extended until the tail mass is negligible."""
    M, L = spec.dof, spec.groups
    x_hi = M + 2 * L + 20.0 * math.sqrt(2.0 * M) * (1.0 + math.log(L))
    while _tail_mass(spec, x_hi) >= TAIL_MASS:
        x_hi *= 2.0
    return x_hi


def _tail_mass(spec: ChiMaxSpec, x: float) -> float:
    q = gammaincc(spec.dof / 2.0, x / 2.0)
    return float(-np.expm1(spec.groups * np.log1p(-q))) if q < 1.0 else 1.0


def _refine(spec: ChiMaxSpec, moment: int) -> float:
    u_hi = math.sqrt(upper_limit(spec))
    n = START_POINTS
    u = np.linspace(0.0, u_hi, n)
    prev = trapezoid(_u_integrand(u, spec, moment), u)
    while n < MAX_POINTS:
        n = 2 * n - 1
        u = np.linspace(0.0, u_hi, n)
        val = trapezoid(_u_integrand(u, spec, moment), u)
        if abs(val - prev) <= REL_TOL * abs(val):
            return float(val)
        prev = val
    raise SimulationError(f"quadrature for {spec} did not converge with {n} points")


@lru_cache(maxsize=None)
def _mean_cached(dof: int, groups: int) -> float:
    return _refine(ChiMaxSpec(dof, groups), moment=1)


def chi_max_mean_integral(spec: ChiMaxSpec) -> float:
    """E{max of L chi-square(M)} by composite trapezoid, refined by doubling."""
    return _mean_cached(spec.dof, spec.groups)


def chi_max_normalization(spec: ChiMaxSpec) -> float:
    """Integral of f_max under the same quadrature (should be 1)."""
    return _refine(spec, moment=0)


def chi_max_mean_closed_dof2(groups: int) -> float:
    """M = 2 closed form: the max of L exponentials with mean 2 has mean 2 H_L."""
    if groups < 1:
        raise DomainError(f"group count must be >= 1, got {groups}")
    return 2.0 * math.fsum(1.0 / k for k in range(1, groups + 1))


def chi_max_mc_oracle(spec: ChiMaxSpec, trials: int, rng, workers: int = 1) -> MonteCarloEstimate:
    """Sample mean and standard error of the max over `trials` draws.

    Draws come in fixed-size chunks seeded from rng, so the estimate does not
    depend on the worker count.
    """
    if trials < 2:
        raise DomainError(f"need at least 2 trials for a standard error, got {trials}")
    sizes = [MC_CHUNK] * (trials // MC_CHUNK)
    if trials % MC_CHUNK:
        sizes.append(trials % MC_CHUNK)
    seeds = rng.integers(0, 2 ** 63, size=len(sizes))

    def chunk(args):
        seed, size = args
        g = np.random.default_rng(int(seed))
        z = g.chisquare(spec.dof, size=(size, spec.groups)).max(axis=1)
        return z.sum(), np.square(z).sum()

    jobs = list(zip(seeds, sizes))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            parts = list(ex.map(chunk, jobs))
    else:
        parts = [chunk(j) for j in jobs]
    s1 = math.fsum(p[0] for p in parts)
    s2 = math.fsum(p[1] for p in parts)
    mean = s1 / trials
    var = max(s2 - trials * mean * mean, 0.0) / (trials - 1)
    return MonteCarloEstimate(mean=mean, stderr=math.sqrt(var / trials), trials=trials)
