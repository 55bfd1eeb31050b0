"""Analytic connectivity formulas: critical ranges, isolation laws, couplings.

The sharp connectivity threshold of the intersection model scales like
n pi r^2 (K^2/P) ~ ln n on the torus, with boundary-corrected variants on
the square that split into a dense and a sparse key regime.  This module
evaluates those thresholds at finite parameters, inverts them to deviation
parameters, integrates exact isolation probabilities, and checks the
finite-n analogues of every hypothesis the limit theorems assume.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
from scipy import integrate

from .combinatorics import (
    KeyScheme,
    conditional_joint_share,
    key_share_probability,
    overlap_distribution,
)
from .geometry import Region, _disk_box_area, boundary_area_H, lens_area
from .graph_models import NetworkParams

__all__ = [
    "RegimeBranch",
    "ConditionConstants",
    "DeltaResult",
    "IsolationBreakdown",
    "CouplingParameters",
    "regime_branch",
    "critical_range_torus",
    "critical_range_square",
    "alpha_from_radius",
    "delta_from_radius",
    "phase_transition_limit",
    "check_theorem1_conditions",
    "check_theorem2_conditions",
    "isolated_prob_torus",
    "isolated_prob_square",
    "pair_isolation_torus",
    "pair_isolation_torus_unconditioned",
    "coupling_parameters",
]

_QUAD_TOL_1D = 1e-9
_QUAD_TOL_2D = 1e-7


class RegimeBranch(Enum):
    """Key-density regime of the square-region threshold."""

    DENSE = "dense"
    SPARSE = "sparse"


@dataclass(frozen=True)
class ConditionConstants:
    """Tunable constants appearing in the finite-n hypothesis checks.

    c1 bounds the ring size from above in the dense-regime theorem; c2..c4
    shape the sparse-regime window (c3 is the polynomial gap exponent); mu
    and nu scale the geometric lower and upper ring bounds; c0 is the
    de-Poissonization exponent offset; eps1 and eps2 parameterize the
    comparison family used in the sparse argument.
    """

    c1: float = 1.0
    c2: float = 1.0
    c3: float = 0.5
    c4: float = 1.0
    mu: float = 1.0
    nu: float = 0.5
    c0: float = 0.25
    eps1: float = 0.5
    eps2: float = 0.3

    def __post_init__(self) -> None:
        for name in ("c1", "c2", "c4", "mu", "nu"):
            if getattr(self, name) <= 0:
                raise ValueError(f"constant {name} must be positive")
        if not 0.0 < self.c3 < 1.0:
            raise ValueError(f"gap exponent c3 must lie in (0, 1), got {self.c3}")
        if not 0.0 < self.c0 < 0.5:
            raise ValueError(f"exponent offset c0 must lie in (0, 0.5), got {self.c0}")


@dataclass(frozen=True)
class DeltaResult:
    """Exact-probability deviation delta, its density-proxy twin alpha, and their gap."""

    delta: float
    alpha: float
    gap: float
    branch: RegimeBranch


@dataclass(frozen=True)
class IsolationBreakdown:
    """Isolation probability on the square, split by boundary zone of the center."""

    total: float
    interior: float
    near_band: float
    far_band: float
    corner: float


@dataclass(frozen=True)
class CouplingParameters:
    """Erdos-Renyi edge probability dominated by the key graph, with validity checks."""

    p: float
    s: float
    share_ratio: float
    checks: dict = field(repr=False)


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise ValueError(msg)


def _quad_1d(f, a: float, b: float) -> float:
    if b <= a:
        return 0.0
    val, err = integrate.quad(f, a, b, epsabs=_QUAD_TOL_1D / 10, epsrel=1e-10, limit=200)
    if err > _QUAD_TOL_1D:
        raise RuntimeError(
            f"1-d quadrature did not converge: achieved {err:.3e}, wanted {_QUAD_TOL_1D:.1e}"
        )
    return val


def _quad_2d(f, x_lo: float, x_hi: float, y_lo: float, y_hi: float) -> float:
    if x_hi <= x_lo or y_hi <= y_lo:
        return 0.0
    val, err = integrate.dblquad(f, x_lo, x_hi, y_lo, y_hi, epsabs=_QUAD_TOL_2D / 10, epsrel=1e-8)
    if err > _QUAD_TOL_2D:
        raise RuntimeError(
            f"2-d quadrature did not converge: achieved {err:.3e}, wanted {_QUAD_TOL_2D:.1e}"
        )
    return val


def _density(scheme: KeyScheme) -> float:
    return scheme.K * scheme.K / scheme.P


def regime_branch(n: int, scheme: KeyScheme, density: float | None = None) -> RegimeBranch:
    """Dense or sparse key regime at finite n.

    Dense when density * n^(1/3) * ln n >= 1 (the limit criterion is
    density >> n^(-1/3)/ln n); ties resolve to dense.  The density defaults
    to the proxy K^2/P; pass the exact share probability for its variant.
    """
    _require(n >= 2, f"regime test needs n >= 2, got {n}")
    d = _density(scheme) if density is None else density
    return RegimeBranch.DENSE if d * n ** (1.0 / 3.0) * math.log(n) >= 1.0 else RegimeBranch.SPARSE


def critical_range_torus(n: int, scheme: KeyScheme) -> float:
    """Radius where the torus model crosses connectivity: sqrt(ln n/(pi n) * P/K^2)."""
    _require(n >= 2, f"critical range needs n >= 2, got {n}")
    return math.sqrt(math.log(n) / (math.pi * n) / _density(scheme))


def _square_numerator(n: int, density: float, branch: RegimeBranch) -> float:
    """Threshold numerator on the square: log-minus-loglog of the branch argument."""
    if branch is RegimeBranch.DENSE:
        arg = n / density
        label = "n/density"
        scale = 1.0
    else:
        arg = 1.0 / density
        label = "1/density"
        scale = 4.0
    _require(
        arg > math.e,
        f"square threshold undefined: inner argument {label} = {arg:.6g} must exceed e",
    )
    return scale * (math.log(arg) - math.log(math.log(arg)))


def critical_range_square(n: int, scheme: KeyScheme) -> tuple[float, RegimeBranch]:
    """Connectivity threshold radius on the square and the branch that produced it.

    Dense branch: sqrt((ln(n P/K^2) - lnln(n P/K^2)) / (pi n K^2/P)); the
    sparse branch doubles the radius and replaces n P/K^2 by P/K^2.
    """
    _require(n >= 2, f"critical range needs n >= 2, got {n}")
    density = _density(scheme)
    branch = regime_branch(n, scheme)
    num = _square_numerator(n, density, branch)
    return math.sqrt(num / (math.pi * n * density)), branch


def _deviation(n: int, r: float, density: float, region: Region, branch: RegimeBranch) -> float:
    scaled = n * math.pi * r * r * density
    if region is Region.TORUS:
        return scaled - math.log(n)
    return scaled - _square_numerator(n, density, branch)


def alpha_from_radius(params: NetworkParams) -> tuple[float, RegimeBranch]:
    """Deviation alpha solving n pi r^2 (K^2/P) = threshold + alpha for this radius.

    The threshold is ln n on the torus and the branch-dependent
    log-minus-loglog numerator on the square.
    """
    branch = regime_branch(params.n, params.scheme)
    return (
        _deviation(params.n, params.r, _density(params.scheme), params.region, branch),
        branch,
    )


def delta_from_radius(params: NetworkParams) -> DeltaResult:
    """Deviation with the exact share probability in place of the K^2/P proxy.

    Both the scaling and the branch selection use p_s; the result also
    carries alpha and |delta - alpha| so callers can see the proxy error.
    """
    p_s = key_share_probability(params.scheme)
    branch = regime_branch(params.n, params.scheme, density=p_s)
    delta = _deviation(params.n, params.r, p_s, params.region, branch)
    alpha, _ = alpha_from_radius(params)
    return DeltaResult(delta=delta, alpha=alpha, gap=abs(delta - alpha), branch=branch)


def phase_transition_limit(a: float) -> float:
    """Limit of the squared square-to-torus threshold ratio along a scaling family.

    The family is parameterized by a = lim ln(P/K^2)/ln n in [0, 1]: the
    ratio tends to 1 + a on [0, 1/3] (dense regime) and to 4a on [1/3, 1]
    (sparse regime); the two branches agree at a = 1/3 where both give 4/3.
    """
    a = float(a)
    if not 0.0 <= a <= 1.0:
        raise ValueError(f"exponent parameter must lie in [0, 1], got {a}")
    return 1.0 + a if a <= 1.0 / 3.0 else 4.0 * a


def check_theorem1_conditions(
    n: int, scheme: KeyScheme, consts: ConditionConstants = ConditionConstants()
) -> dict[str, bool]:
    """Finite-n verdicts for the dense-regime connectivity theorem hypotheses.

    Raw bounds: ln n/lnln n <= K (with the mu-scaled geometric lower bound)
    and K <= c1 sqrt(P/ln n); plus the density facts they imply.
    """
    _require(n >= 3, f"hypothesis checks need n >= 3, got {n}")
    K, P = scheme.K, scheme.P
    log_n = math.log(n)
    loglog_n = math.log(log_n)
    density = _density(scheme)
    checks = {
        "ring_at_least_log": K >= log_n / loglog_n,
        "ring_lower_geometric": K >= consts.mu * math.sqrt(P * log_n / n),
        "ring_upper": K <= consts.c1 * math.sqrt(P / log_n),
        "density_lower": density >= consts.mu**2 * log_n / n,
        "density_upper": density <= consts.c1**2 / log_n,
    }
    checks["all"] = all(checks.values())
    return checks


def check_theorem2_conditions(
    n: int, scheme: KeyScheme, consts: ConditionConstants = ConditionConstants()
) -> dict[str, bool]:
    """Finite-n verdicts for the sparse-regime theorem hypotheses.

    The ring size must clear c2 sqrt(P ln n / n^c3) yet stay below both
    nu sqrt(P/ln n) and c4 P/(n ln n); the implied pool/ring growth facts
    and the (eps1, eps2) comparison-family constraint are also reported.
    """
    _require(n >= 3, f"hypothesis checks need n >= 3, got {n}")
    K, P = scheme.K, scheme.P
    log_n = math.log(n)
    density = _density(scheme)
    c = consts
    checks = {
        "ring_lower": K >= c.c2 * math.sqrt(P * log_n / n**c.c3),
        "ring_upper_density": K <= c.nu * math.sqrt(P / log_n),
        "ring_upper_linear": K <= c.c4 * P / (n * log_n),
        "key_fraction_small": K / P <= c.c4 / (n * log_n),
        "density_window": c.c2**2 * log_n / n**c.c3 <= density <= c.nu**2 / log_n,
        "pool_polynomial": P >= c.c2**2 / c.c4**2 * n ** (2.0 - c.c3) * log_n**3,
        "ring_polynomial": K >= c.c2**2 / c.c4 * n ** (1.0 - c.c3) * log_n**2,
        "family_exponents_valid": 0.0 < c.eps1 < 1.0 and c.eps1 / 2.0 < c.eps2 < c.eps1,
    }
    checks["all"] = all(checks.values())
    return checks


def isolated_prob_torus(params: NetworkParams) -> float:
    """Probability a Poissonized node is isolated on the torus: exp(-pi r^2 p_s n)."""
    _require(params.region is Region.TORUS, "torus isolation formula needs the torus region")
    p_s = key_share_probability(params.scheme)
    return math.exp(-math.pi * params.r * params.r * p_s * params.n)


def isolated_prob_square(params: NetworkParams) -> IsolationBreakdown:
    """Isolation probability on the square, integrated exactly over boundary zones.

    Interior centers keep the full disk (closed form); the near band uses the
    one-edge visible area H(g) in a 1-d integral; the far band and corner
    zones integrate the exact clipped disk area in 2-d.  Requires r < 1/4 so
    all four zones are present.
    """
    _require(params.region is Region.SQUARE, "square isolation formula needs the square region")
    r = params.r
    _require(0.0 < r < 0.25, f"zone decomposition needs r in (0, 0.25), got {r}")
    n = params.n
    p_s = key_share_probability(params.scheme)
    rate = p_s * n

    side = 1.0 - 2.0 * r
    interior = side * side * math.exp(-rate * math.pi * r * r)
    near = 4.0 * side * _quad_1d(
        lambda g: math.exp(-rate * boundary_area_H(g, r)[0]), 0.0, r / 2.0
    )
    far = 4.0 * _quad_2d(
        lambda y, x: math.exp(-rate * _disk_box_area((x, y), r)),
        r,
        1.0 - r,
        r / 2.0,
        r,
    )
    corner = 4.0 * _quad_2d(
        lambda y, x: math.exp(-rate * _disk_box_area((x, y), r)),
        0.0,
        r,
        0.0,
        r,
    )
    return IsolationBreakdown(
        total=interior + near + far + corner,
        interior=interior,
        near_band=near,
        far_band=far,
        corner=corner,
    )


def _torus_ball_area(t: float) -> float:
    """Measure of a torus ball of radius t (Euclidean disk folded into the unit square)."""
    if t <= 0.0:
        return 0.0
    if t >= math.sqrt(0.5):
        return 1.0
    return _disk_box_area((0.5, 0.5), t)


def _torus_ball_boundary(t: float) -> float:
    """Length of the torus sphere of radius t: derivative of the ball area."""
    if t <= 0.5:
        return 2.0 * math.pi * t
    if t >= math.sqrt(0.5):
        return 0.0
    return t * (2.0 * math.pi - 8.0 * math.acos(0.5 / t))


def pair_isolation_torus(params: NetworkParams, u: int) -> float:
    """Joint isolation probability of two torus nodes whose rings overlap in u keys.

    Conditional on overlap u, every other Poissonized node independently
    misses both disks, giving exp(-n (2 p_s pi r^2 - phi_u lens(d))) at
    separation d; integrating over the uniform separation (and excluding
    d <= r when u >= 1, where the pair itself is linked) yields the result.
    """
    _require(params.region is Region.TORUS, "pair isolation formula needs the torus region")
    scheme = params.scheme
    _require(0 <= u <= scheme.K, f"overlap u must lie in [0, K], got {u}")
    n, r = params.n, params.r
    p_s = key_share_probability(scheme)
    phi = conditional_joint_share(scheme, u)
    two_delta = 2.0 * n * math.pi * r * r * p_s

    def integrand(t: float) -> float:
        return math.exp(-two_delta + n * phi * lens_area(t, r)) * _torus_ball_boundary(t)

    diameter = math.sqrt(0.5)
    lo = float(r) if u >= 1 else 0.0
    hi = min(2.0 * r, diameter)
    total = 0.0
    if hi > lo:
        # split at the ball-boundary kink where wrapping begins
        cuts = sorted({lo, hi, min(max(0.5, lo), hi)})
        for a, b in zip(cuts[:-1], cuts[1:]):
            total += _quad_1d(integrand, a, b)
    total += math.exp(-two_delta) * (1.0 - _torus_ball_area(hi))
    return total


def pair_isolation_torus_unconditioned(params: NetworkParams) -> float:
    """Joint isolation probability of two torus nodes, averaged over the overlap law."""
    dist = overlap_distribution(params.scheme)
    return float(
        sum(
            p * pair_isolation_torus(params, u)
            for u, p in enumerate(dist.probs)
            if p > 0.0
        )
    )


def coupling_parameters(n: int, scheme: KeyScheme) -> CouplingParameters:
    """Edge probabilities coupling the key graph between two Erdos-Renyi graphs.

    p = (K/P)(1 - sqrt(3 ln n / K)) is the per-key retention rate whose
    binomial-ring graph sits inside the key graph with high probability;
    s = p^2 P (1 - n p + 2 p - p^2 P / 2) is the induced pairwise edge
    probability.  Requires K > 3 ln n so the retention rate is positive.
    Verdicts report the finite-n form of each validity requirement.
    """
    _require(n >= 2, f"coupling needs n >= 2, got {n}")
    K, P = scheme.K, scheme.P
    log_n = math.log(n)
    _require(K > 3.0 * log_n, f"coupling needs K > 3 ln n, got K={K}, 3 ln n={3.0 * log_n:.3f}")
    p = (K / P) * (1.0 - math.sqrt(3.0 * log_n / K))
    s = p * p * P * (1.0 - n * p + 2.0 * p - p * p * P / 2.0)
    density = _density(scheme)
    checks = {
        "pool_rate_exceeds_log": p * P > log_n,
        "ring_dominates_rate": K >= p * P + math.sqrt(3.0 * (p * P + log_n) * log_n),
        "pairwise_rate_small": p * p * P < 1.0,
        "rate_below_inverse_n": p < 1.0 / n,
    }
    checks["all"] = all(checks.values())
    return CouplingParameters(p=p, s=s, share_ratio=s / density, checks=checks)
