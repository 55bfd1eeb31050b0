"""Key-ring overlap combinatorics for random key predistribution.

Each sensor independently holds a ring of K distinct keys drawn uniformly
from a pool of P keys.  Two sensors can secure a link exactly when their
rings intersect.  Everything here is exact finite-P combinatorics; ratios
of binomial coefficients are evaluated in log space so that pool sizes up
to 1e8 stay accurate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "KeyScheme",
    "OverlapDistribution",
    "log_binomial",
    "key_share_probability",
    "key_share_upper_bound",
    "overlap_distribution",
    "conditional_joint_share",
    "conditional_joint_share_bound",
]

# Numerical clamp guard: probabilities may stray outside [0, 1] by at most
# this much before we treat it as a bug rather than rounding.
_CLAMP_TOL = 1e-10


@dataclass(frozen=True)
class KeyScheme:
    """Ring size K and pool size P of a key predistribution scheme."""

    K: int
    P: int

    def __post_init__(self) -> None:
        if not isinstance(self.K, (int, np.integer)) or not isinstance(self.P, (int, np.integer)):
            raise ValueError("K and P must be integers")
        if self.K < 1:
            raise ValueError(f"ring size K must be >= 1, got {self.K}")
        if self.P < self.K:
            raise ValueError(f"pool size P must be >= K, got K={self.K}, P={self.P}")


@dataclass(frozen=True)
class OverlapDistribution:
    """Distribution of the ring-overlap size |S_x ∩ S_y| for two sensors.

    ``probs[u]`` is the probability that two independently drawn rings share
    exactly u keys, for u = 0 .. K.
    """

    scheme: KeyScheme
    probs: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        arr = np.asarray(self.probs, dtype=float)
        arr.flags.writeable = False
        object.__setattr__(self, "probs", arr)
        if arr.shape != (self.scheme.K + 1,):
            raise ValueError("probs must have length K + 1")


def _clamp01(x: float, what: str) -> float:
    if x < -_CLAMP_TOL or x > 1.0 + _CLAMP_TOL:
        raise ArithmeticError(f"{what} = {x!r} lies outside [0, 1] beyond rounding tolerance")
    return min(max(x, 0.0), 1.0)


def log_binomial(n: int, k: int) -> float:
    """Natural log of the binomial coefficient C(n, k).

    Returns -inf when k < 0 or k > n (empty choice), and exactly 0.0 at
    k = 0 and k = n.  Uses log-gamma so arguments like (1e6, 50) neither
    overflow nor lose the leading digits.
    """
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if k < 0 or k > n:
        return float("-inf")
    if k == 0 or k == n:
        return 0.0
    return math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1)


def _log_avoid_ratio(scheme: KeyScheme, m: int) -> float:
    """log of C(P - m, K) / C(P, K): chance a ring avoids m marked keys.

    Evaluated as sum of log1p(-m / (P - i)) over i = 0..K-1, which is
    algebraically the same ratio but avoids the catastrophic cancellation a
    difference of two huge log-gamma values suffers at large P.  Returns
    -inf when P - m < K (avoidance impossible).
    """
    K, P = scheme.K, scheme.P
    if m < 0:
        raise ValueError(f"marked key count must be >= 0, got {m}")
    if P - m < K:
        return float("-inf")
    i = np.arange(K, dtype=float)
    return float(np.sum(np.log1p(-m / (P - i))))


def key_share_probability(scheme: KeyScheme) -> float:
    """Probability p_s that two independent rings share at least one key.

    Equals 1 - C(P-K, K)/C(P, K); exactly 1.0 when P < 2K because two rings
    of size K cannot then be disjoint.
    """
    K, P = scheme.K, scheme.P
    if P < 2 * K:
        return 1.0
    return _clamp01(-math.expm1(_log_avoid_ratio(scheme, K)), "key share probability")


def key_share_upper_bound(scheme: KeyScheme) -> float:
    """Closed-form upper bound K^2 / P for the key-share probability.

    Only valid when P >= 2K (otherwise p_s = 1 and the bound is meaningless).
    """
    K, P = scheme.K, scheme.P
    if P < 2 * K:
        raise ValueError(f"bound requires P >= 2K, got K={K}, P={P}")
    return K * K / P


def overlap_distribution(scheme: KeyScheme) -> OverlapDistribution:
    """Exact law of the overlap size |S_x ∩ S_y| between two rings.

    P[overlap = u] = C(K, u) C(P-K, K-u) / C(P, K).  Built from the u = 0
    term by exact rational recurrence, so it stays accurate for huge P and
    sums to 1 within 1e-12.
    """
    K, P = scheme.K, scheme.P
    probs = np.zeros(K + 1)
    log_p0 = _log_avoid_ratio(scheme, K)
    probs[0] = 0.0 if log_p0 == float("-inf") else math.exp(log_p0)
    if probs[0] == 0.0:
        # Disjoint rings impossible (P < 2K): recurrence cannot start from
        # u = 0, so fill each feasible term directly in log space.
        for u in range(K + 1):
            log_term = (
                log_binomial(K, u)
                + log_binomial(P - K, K - u)
                - log_binomial(P, K)
            )
            probs[u] = 0.0 if log_term == float("-inf") else math.exp(log_term)
    else:
        for u in range(K):
            # ratio of consecutive hypergeometric terms
            probs[u + 1] = probs[u] * (K - u) * (K - u) / ((u + 1) * (P - 2 * K + u + 1))
    probs = np.array([_clamp01(p, f"overlap probability u={u}") for u, p in enumerate(probs)])
    return OverlapDistribution(scheme=scheme, probs=probs)


def conditional_joint_share(scheme: KeyScheme, u: int) -> float:
    """Probability a third ring intersects both of two rings overlapping in u keys.

    With |S_x ∩ S_y| = u fixed, inclusion-exclusion over misses gives
    2 p_s - 1 + C(P - (2K - u), K)/C(P, K).  Requires 0 <= u <= K and
    P >= 2K - u so the union of the two rings fits in the pool.
    """
    K, P = scheme.K, scheme.P
    if not 0 <= u <= K:
        raise ValueError(f"overlap u must lie in [0, K], got u={u}, K={K}")
    if P < 2 * K - u:
        raise ValueError(f"need P >= 2K - u for an overlap of u, got K={K}, P={P}, u={u}")
    p_s = key_share_probability(scheme)
    log_ratio = _log_avoid_ratio(scheme, 2 * K - u)
    # 2 p_s - 1 + ratio, rearranged as 2 p_s - (1 - ratio) so that a tiny
    # result is a difference of two small accurate numbers, not of two ~1's
    one_minus_ratio = 1.0 if log_ratio == float("-inf") else -math.expm1(log_ratio)
    return _clamp01(2.0 * p_s - one_minus_ratio, f"conditional joint share u={u}")


def conditional_joint_share_bound(scheme: KeyScheme, u: int) -> float:
    """Upper bound u*K/P + 2*K^4/P^2 on the conditional joint-share probability.

    Valid when P >= 3K; provided for comparison against the exact value.
    """
    K, P = scheme.K, scheme.P
    if not 0 <= u <= K:
        raise ValueError(f"overlap u must lie in [0, K], got u={u}, K={K}")
    if P < 3 * K:
        raise ValueError(f"bound requires P >= 3K, got K={K}, P={P}")
    return u * K / P + 2.0 * K**4 / P**2
