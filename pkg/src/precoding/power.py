"""
Sum-power allocation across ZF streams.
"""
import numpy as np

POWER_POLICIES = ("equal", "waterfill")


def equal_power(K: int, P: float):
    """p_k = P / K."""
    if K < 1:
        raise ValueError(f"K must be >= 1, got {K}")
    return np.full(K, P / K)


def waterfill(g, P: float, noise_var: float = 1.0):
    """p_k = max(0, mu - sigma^2 / g_k) with sum p_k = P.

    The water level is solved exactly: floors sigma^2/g are sorted (stable, so
    ties keep user order) and the largest active set whose level clears its
    highest floor wins.
    """
    g = np.asarray(g, dtype=float)
    if np.any(g <= 0):
        raise ValueError("waterfill needs strictly positive gains")
    if P <= 0:
        raise ValueError(f"power budget must be positive, got {P}")
    floors = noise_var / g
    order = np.argsort(floors, kind="stable")
    sorted_floors = floors[order]
    csum = np.cumsum(sorted_floors)
    mu = sorted_floors[0] + P
    for m in range(len(g), 0, -1):
        level = (P + csum[m - 1]) / m
        if level > sorted_floors[m - 1]:
            mu = level
            break
    return np.maximum(0.0, mu - floors)


def power_allocation(policy: str, g, P: float, noise_var: float = 1.0):
    if policy == "equal":
        return equal_power(len(g), P)
    if policy == "waterfill":
        return waterfill(g, P, noise_var)
    raise ValueError(f"unknown power policy '{policy}'; expected one of {POWER_POLICIES}")
