"""Experiment harness: radius sweeps, CSV output, and analytic reports.

A sweep estimates connectivity statistics of the intersection model over a
grid of radii.  Trials are independent and seeded by (master seed, trial
index), so results are reproducible and identical whether trials run
sequentially or in a process pool.  Coupled mode reuses one sample of
positions and rings across the whole radius grid, which makes per-trial
connectivity monotone in r and shares the expensive key tests.
"""

from __future__ import annotations

import concurrent.futures
import csv
import io
import math
import os
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .asymptotics import (
    ConditionConstants,
    CouplingParameters,
    IsolationBreakdown,
    RegimeBranch,
    check_theorem1_conditions,
    check_theorem2_conditions,
    coupling_parameters,
    critical_range_square,
    critical_range_torus,
    delta_from_radius,
    isolated_prob_square,
    isolated_prob_torus,
    phase_transition_limit,
)
from .combinatorics import KeyScheme, key_share_probability
from .geometry import Region
from .graph_analysis import UnionFind
from .graph_models import (
    NetworkParams,
    geometric_pairs,
    pair_share_flags,
    rng_for,
    sample_positions,
    sample_rings,
)

__all__ = [
    "SweepMode",
    "SweepConfig",
    "SweepRow",
    "SweepResult",
    "AnalyticReport",
    "CouplingExperimentResult",
    "run_sweep",
    "emit_csv",
    "load_csv",
    "analytic_report",
    "render_report",
    "coupling_domination_experiment",
]

CSV_HEADER = (
    "region,n,K,P,r,trials,seed,connected_count,connected_frac,"
    "mean_isolated,mean_edges,mean_components"
)


class SweepMode(Enum):
    """Fresh sample per (radius, trial), or one sample per trial shared across radii."""

    INDEPENDENT = "independent"
    COUPLED = "coupled"


@dataclass(frozen=True)
class SweepConfig:
    """A radius sweep: grid geometry, trial count, seed, and sampling mode."""

    region: Region
    n: int
    scheme: KeyScheme
    r_min: float
    r_max: float
    r_steps: int
    trials: int = 500
    seed: int = 0
    mode: SweepMode = SweepMode.COUPLED

    def __post_init__(self) -> None:
        # NetworkParams vets n/scheme/radius domains
        NetworkParams(self.n, self.scheme, self.r_min, self.region)
        NetworkParams(self.n, self.scheme, self.r_max, self.region)
        if self.r_min > self.r_max:
            raise ValueError(f"r_min must be <= r_max, got {self.r_min} > {self.r_max}")
        if self.r_steps < 1:
            raise ValueError(f"r_steps must be >= 1, got {self.r_steps}")
        if self.r_steps == 1 and self.r_min != self.r_max:
            raise ValueError("a single-step sweep needs r_min == r_max")
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        if not isinstance(self.mode, SweepMode):
            raise ValueError("mode must be a SweepMode")

    def radii(self) -> np.ndarray:
        return np.linspace(self.r_min, self.r_max, self.r_steps)


@dataclass(frozen=True)
class SweepRow:
    """Aggregated sweep statistics at one radius."""

    region: str
    n: int
    K: int
    P: int
    r: float
    trials: int
    seed: int
    connected_count: int
    connected_frac: float
    mean_isolated: float
    mean_edges: float
    mean_components: float


@dataclass(frozen=True)
class SweepResult:
    config: SweepConfig
    rows: tuple = ()


def _stats_for_sorted_edges(n: int, src, dst, dist_sorted, radii) -> np.ndarray:
    """Connectivity stats at each radius for one sample, edges presorted by length.

    Returns int64 (4, len(radii)): connected flag, isolated count, edge
    count, component count.  Edges are inserted incrementally, so the whole
    radius grid costs one union-find pass.
    """
    out = np.zeros((4, len(radii)), dtype=np.int64)
    uf = UnionFind(n)
    degrees = [0] * n
    isolated = n
    cut = np.searchsorted(dist_sorted, radii, side="right")
    src = src.tolist()
    dst = dst.tolist()
    done = 0
    for ri, upto in enumerate(cut):
        while done < upto:
            a = src[done]
            b = dst[done]
            uf.union(a, b)
            if degrees[a] == 0:
                isolated -= 1
            degrees[a] += 1
            if degrees[b] == 0:
                isolated -= 1
            degrees[b] += 1
            done += 1
        out[0, ri] = 1 if uf.components <= 1 else 0
        out[1, ri] = isolated
        out[2, ri] = done
        out[3, ri] = uf.components
    return out


def _coupled_trial(config: SweepConfig, trial: int) -> np.ndarray:
    rng = rng_for(config.seed, trial)
    positions = sample_positions(rng, config.n)
    rings = sample_rings(rng, config.n, config.scheme)
    gi, gj, gd = geometric_pairs(positions, config.r_max, config.region)
    if gi.size:
        share = pair_share_flags(rings, gi, gj)
        gi, gj, gd = gi[share], gj[share], gd[share]
    order = np.argsort(gd, kind="stable")
    return _stats_for_sorted_edges(config.n, gi[order], gj[order], gd[order], config.radii())


def _independent_trial(config: SweepConfig, trial: int) -> np.ndarray:
    out = np.zeros((4, config.r_steps), dtype=np.int64)
    for ri, r in enumerate(config.radii()):
        rng = rng_for(config.seed, trial, ri)
        positions = sample_positions(rng, config.n)
        rings = sample_rings(rng, config.n, config.scheme)
        gi, gj, gd = geometric_pairs(positions, float(r), config.region)
        if gi.size:
            share = pair_share_flags(rings, gi, gj)
            gi, gj, gd = gi[share], gj[share], gd[share]
        order = np.argsort(gd, kind="stable")
        out[:, ri : ri + 1] = _stats_for_sorted_edges(
            config.n, gi[order], gj[order], gd[order], np.array([r])
        )
    return out


def _run_trial(config: SweepConfig, trial: int) -> np.ndarray:
    if config.mode is SweepMode.COUPLED:
        return _coupled_trial(config, trial)
    return _independent_trial(config, trial)


def run_sweep(config: SweepConfig, workers: int | None = None) -> SweepResult:
    """Execute the sweep; aggregation is order-independent integer sums.

    workers > 1 distributes trials over processes; results are identical to
    a sequential run because each trial derives its own generator from
    (seed, trial) and the per-radius sums commute.
    """
    totals = np.zeros((4, config.r_steps), dtype=np.int64)
    if workers is not None and workers > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=workers) as pool:
            for stats in pool.map(
                _run_trial,
                (config for _ in range(config.trials)),
                range(config.trials),
                chunksize=max(1, config.trials // (workers * 8)),
            ):
                totals += stats
    else:
        for trial in range(config.trials):
            totals += _run_trial(config, trial)

    rows = []
    t = config.trials
    for ri, r in enumerate(config.radii()):
        rows.append(
            SweepRow(
                region=config.region.value,
                n=config.n,
                K=config.scheme.K,
                P=config.scheme.P,
                r=float(r),
                trials=t,
                seed=config.seed,
                connected_count=int(totals[0, ri]),
                connected_frac=totals[0, ri] / t,
                mean_isolated=totals[1, ri] / t,
                mean_edges=totals[2, ri] / t,
                mean_components=totals[3, ri] / t,
            )
        )
    return SweepResult(config=config, rows=tuple(rows))


def _format_float(x: float) -> str:
    return format(float(x), ".9g")


def _rows_to_csv(rows) -> str:
    lines = [CSV_HEADER]
    for row in rows:
        lines.append(
            ",".join(
                (
                    row.region,
                    str(row.n),
                    str(row.K),
                    str(row.P),
                    _format_float(row.r),
                    str(row.trials),
                    str(row.seed),
                    str(row.connected_count),
                    _format_float(row.connected_frac),
                    _format_float(row.mean_isolated),
                    _format_float(row.mean_edges),
                    _format_float(row.mean_components),
                )
            )
        )
    return "\n".join(lines) + "\n"


def emit_csv(result, destination) -> None:
    """Write sweep rows as CSV with a fixed header and 9-significant-digit floats.

    destination may be a path or a writable text file object.  Identical
    results serialize to identical bytes.
    """
    rows = result.rows if isinstance(result, SweepResult) else tuple(result)
    text = _rows_to_csv(rows)
    if hasattr(destination, "write"):
        destination.write(text)
        return
    try:
        with open(destination, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write sweep CSV to {destination!r}: {exc}") from exc


def load_csv(source) -> tuple:
    """Parse a sweep CSV produced by emit_csv back into SweepRow objects."""

    def parse(fh) -> tuple:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != CSV_HEADER.split(","):
            raise ValueError(f"unexpected sweep CSV header: {header!r}")
        rows = []
        for rec in reader:
            if not rec:
                continue
            rows.append(
                SweepRow(
                    region=rec[0],
                    n=int(rec[1]),
                    K=int(rec[2]),
                    P=int(rec[3]),
                    r=float(rec[4]),
                    trials=int(rec[5]),
                    seed=int(rec[6]),
                    connected_count=int(rec[7]),
                    connected_frac=float(rec[8]),
                    mean_isolated=float(rec[9]),
                    mean_edges=float(rec[10]),
                    mean_components=float(rec[11]),
                )
            )
        return tuple(rows)

    if hasattr(source, "read"):
        return parse(source)
    try:
        with open(source, "r", encoding="utf-8", newline="") as fh:
            return parse(fh)
    except OSError as exc:
        raise OSError(f"cannot read sweep CSV from {source!r}: {exc}") from exc


@dataclass(frozen=True)
class AnalyticReport:
    """Every analytic quantity the model predicts for one parameter point."""

    region: str
    n: int
    K: int
    P: int
    r: float
    p_s: float
    density_proxy: float
    edge_prob_low: float
    edge_prob_high: float
    r_star: float
    branch: RegimeBranch | None
    alpha: float
    delta: float
    delta_alpha_gap: float
    phase_a: float
    phase_limit: float | None
    isolated_prob: float | None
    expected_isolated: float | None
    isolation_zones: IsolationBreakdown | None
    theorem1: dict
    theorem2: dict
    coupling: CouplingParameters | None


def analytic_report(
    n: int,
    scheme: KeyScheme,
    r: float,
    region: Region,
    consts: ConditionConstants = ConditionConstants(),
) -> AnalyticReport:
    """Assemble the analytic picture at one parameter point.

    Isolation probabilities are included where their formulas apply (always
    on the torus; on the square only for r < 1/4).  The coupling block is
    None when K <= 3 ln n makes the coupling undefined.
    """
    params = NetworkParams(n, scheme, r, region)
    p_s = key_share_probability(scheme)
    density = scheme.K * scheme.K / scheme.P
    disk = math.pi * r * r
    if region is Region.TORUS:
        r_star = critical_range_torus(n, scheme)
        branch = None
        edge_low = edge_high = disk * p_s
    else:
        r_star, branch = critical_range_square(n, scheme)
        edge_low, edge_high = (1.0 - 2.0 * r) ** 2 * disk * p_s, disk * p_s

    dev = delta_from_radius(params)
    alpha = dev.alpha

    phase_a = math.log(scheme.P / (scheme.K * scheme.K)) / math.log(n)
    phase = phase_transition_limit(phase_a) if 0.0 <= phase_a <= 1.0 else None

    zones = None
    if region is Region.TORUS:
        iso = isolated_prob_torus(params)
    elif r < 0.25:
        zones = isolated_prob_square(params)
        iso = zones.total
    else:
        iso = None

    try:
        coupling = coupling_parameters(n, scheme)
    except ValueError:
        coupling = None

    return AnalyticReport(
        region=region.value,
        n=n,
        K=scheme.K,
        P=scheme.P,
        r=float(r),
        p_s=p_s,
        density_proxy=density,
        edge_prob_low=edge_low,
        edge_prob_high=edge_high,
        r_star=r_star,
        branch=branch,
        alpha=alpha,
        delta=dev.delta,
        delta_alpha_gap=dev.gap,
        phase_a=phase_a,
        phase_limit=phase,
        isolated_prob=iso,
        expected_isolated=None if iso is None else n * iso,
        isolation_zones=zones,
        theorem1=check_theorem1_conditions(n, scheme, consts) if n >= 3 else {},
        theorem2=check_theorem2_conditions(n, scheme, consts) if n >= 3 else {},
        coupling=coupling,
    )


def _fmt_checks(checks: dict) -> str:
    return ", ".join(f"{name}={'yes' if ok else 'NO'}" for name, ok in checks.items())


def render_report(rep: AnalyticReport) -> str:
    """Human-readable multi-line rendering of an AnalyticReport."""
    lines = [
        f"region={rep.region} n={rep.n} K={rep.K} P={rep.P} r={rep.r:.6g}",
        f"key share probability p_s = {rep.p_s:.9g} (proxy K^2/P = {rep.density_proxy:.9g})",
        f"edge probability in [{rep.edge_prob_low:.9g}, {rep.edge_prob_high:.9g}]",
        f"critical range r* = {rep.r_star:.9g}"
        + (f" ({rep.branch.value} branch)" if rep.branch else ""),
        f"deviation alpha = {rep.alpha:.6g}, delta = {rep.delta:.6g} (gap {rep.delta_alpha_gap:.3g})",
        f"pool exponent a = {rep.phase_a:.6g}"
        + (
            f", limiting square/torus threshold ratio = {rep.phase_limit:.6g}"
            if rep.phase_limit is not None
            else " (outside [0, 1]; no limit value)"
        ),
    ]
    if rep.isolated_prob is not None:
        lines.append(
            f"isolation probability = {rep.isolated_prob:.9g}"
            f" (expected isolated nodes = {rep.expected_isolated:.6g})"
        )
        if rep.isolation_zones is not None:
            z = rep.isolation_zones
            lines.append(
                "  by zone: interior={:.9g} near_band={:.9g} far_band={:.9g} corner={:.9g}".format(
                    z.interior, z.near_band, z.far_band, z.corner
                )
            )
    lines.append(f"dense-regime hypothesis checks: {_fmt_checks(rep.theorem1)}")
    lines.append(f"sparse-regime hypothesis checks: {_fmt_checks(rep.theorem2)}")
    if rep.coupling is not None:
        c = rep.coupling
        lines.append(
            f"coupling: p = {c.p:.9g}, s = {c.s:.9g}, s/(K^2/P) = {c.share_ratio:.9g};"
            f" {_fmt_checks(c.checks)}"
        )
    else:
        lines.append("coupling: undefined (needs K > 3 ln n)")
    return "\n".join(lines)


@dataclass(frozen=True)
class CouplingExperimentResult:
    """Connectivity counts of the key-graph model vs its dominated ER stand-in."""

    radii: tuple
    trials: int
    er_edge_prob: float
    keygraph_connected: tuple
    er_connected: tuple


def coupling_domination_experiment(
    n: int,
    scheme: KeyScheme,
    radii,
    trials: int,
    seed: int,
    region: Region = Region.TORUS,
) -> CouplingExperimentResult:
    """Empirical connectivity of the intersection model vs an ER graph with edge rate s.

    Both graphs are built from the same positions per trial: the key graph
    filters geometric pairs by ring intersection, the ER side keeps each
    geometric pair with the coupling probability s (equivalent to
    intersecting a full ER graph with the geometric graph).  If the coupling
    is sound, ER connectivity should not exceed key-graph connectivity by
    more than noise.
    """
    radii = tuple(float(r) for r in sorted(radii))
    if not radii:
        raise ValueError("need at least one radius")
    r_max = radii[-1]
    NetworkParams(n, scheme, r_max, region)
    s = coupling_parameters(n, scheme).s
    if not 0.0 <= s <= 1.0:
        raise ValueError(f"coupling edge probability out of range: {s}")
    radii_arr = np.array(radii)
    key_conn = np.zeros(len(radii), dtype=np.int64)
    er_conn = np.zeros(len(radii), dtype=np.int64)
    for trial in range(trials):
        rng = rng_for(seed, trial)
        positions = sample_positions(rng, n)
        rings = sample_rings(rng, n, scheme)
        gi, gj, gd = geometric_pairs(positions, r_max, region)
        share = pair_share_flags(rings, gi, gj) if gi.size else np.zeros(0, dtype=bool)
        er_keep = rng.random(gi.size) < s
        for flags, acc in ((share, key_conn), (er_keep, er_conn)):
            si, sj, sd = gi[flags], gj[flags], gd[flags]
            order = np.argsort(sd, kind="stable")
            stats = _stats_for_sorted_edges(n, si[order], sj[order], sd[order], radii_arr)
            acc += stats[0]
    return CouplingExperimentResult(
        radii=radii,
        trials=trials,
        er_edge_prob=s,
        keygraph_connected=tuple(int(c) for c in key_conn),
        er_connected=tuple(int(c) for c in er_conn),
    )
