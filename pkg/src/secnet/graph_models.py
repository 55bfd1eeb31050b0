"""Random graph samplers: key graphs, geometric graphs, and their intersection.

The central object is the intersection model: n sensors dropped uniformly on
the unit torus or square, an edge requiring both physical proximity (distance
<= r) and a shared key between the endpoint rings.  Helper samplers for pure
Erdos-Renyi graphs and for the binomial-ring variant (each pool key kept
independently with probability p) support comparison experiments.

Randomness is splittable: every consumer derives an independent generator
from a 64-bit master seed and an explicit integer path, so trial results do
not depend on execution order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .combinatorics import KeyScheme
from .geometry import Region

__all__ = [
    "NetworkParams",
    "SampledNetwork",
    "RigSample",
    "rng_for",
    "sample_positions",
    "sample_rings",
    "rings_share_key",
    "pair_share_flags",
    "geometric_pairs",
    "sample_network",
    "sample_poissonized_network",
    "sample_er",
    "sample_rig",
    "poissonize_count",
    "depoissonized_count",
]

# Upper bound on radii the samplers accept: sqrt(2) covers every pair even
# on the square, which is how a pure key graph is sampled (no geometric
# filtering left).  Analytic operations impose their own tighter domains.
_MAX_SAMPLING_RADIUS = 2.0


def _check_seed(seed: int) -> int:
    if not isinstance(seed, (int, np.integer)) or isinstance(seed, bool):
        raise ValueError(f"seed must be an integer, got {seed!r}")
    if not 0 <= int(seed) < 2**64:
        raise ValueError(f"seed must fit in an unsigned 64-bit integer, got {seed}")
    return int(seed)


def rng_for(seed: int, *path: int) -> np.random.Generator:
    """Independent generator for a master seed and an integer derivation path.

    Distinct paths give statistically independent streams, and the stream for
    a given (seed, path) never depends on what other paths were consumed, so
    parallel and sequential runs see identical randomness.
    """
    seed = _check_seed(seed)
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=tuple(int(p) for p in path)))


@dataclass(frozen=True)
class NetworkParams:
    """Parameters of one intersection-model network."""

    n: int
    scheme: KeyScheme
    r: float
    region: Region

    def __post_init__(self) -> None:
        if not isinstance(self.n, (int, np.integer)) or self.n < 1:
            raise ValueError(f"node count must be an integer >= 1, got {self.n}")
        if not isinstance(self.scheme, KeyScheme):
            raise ValueError("scheme must be a KeyScheme")
        if not isinstance(self.region, Region):
            raise ValueError("region must be a Region")
        r = float(self.r)
        if not 0.0 < r <= _MAX_SAMPLING_RADIUS:
            raise ValueError(f"radius must lie in (0, {_MAX_SAMPLING_RADIUS}], got {self.r}")


@dataclass(frozen=True)
class SampledNetwork:
    """One realized network.

    positions: (n, 2) points in [0, 1)^2.
    key_rings: (n, K) pool indices, each row sorted ascending and distinct.
    geo_edges: pairs (i < j) within distance r.
    key_edges: the geometric pairs whose rings intersect (key tests are run
        only for geometric neighbours; with r >= the region diameter this is
        the full key graph).
    edges:     the intersection graph, i.e. geo_edges AND key_edges.
    """

    params: NetworkParams
    positions: np.ndarray = field(repr=False)
    key_rings: np.ndarray = field(repr=False)
    geo_edges: np.ndarray = field(repr=False)
    key_edges: np.ndarray = field(repr=False)
    edges: np.ndarray = field(repr=False)


@dataclass(frozen=True)
class RigSample:
    """A binomial-ring key graph: ring sizes are Binomial(P, p), edges need a shared key."""

    n: int
    pool: int
    retain_p: float
    rings: tuple
    edges: np.ndarray = field(repr=False)


def sample_positions(rng: np.random.Generator, n: int) -> np.ndarray:
    """n independent uniform points on [0, 1)^2."""
    return rng.random((n, 2))


def _ring_partial_shuffle(rng: np.random.Generator, pool: int, size: int) -> np.ndarray:
    """Uniform size-subset of [0, pool) by partial Fisher-Yates over a sparse map.

    O(size) memory regardless of pool, which matters for pools up to 1e8.
    """
    state: dict[int, int] = {}
    out = np.empty(size, dtype=np.int64)
    for i in range(size):
        j = int(rng.integers(i, pool))
        vj = state.get(j, j)
        state[j] = state.get(i, i)
        state[i] = vj
        out[i] = vj
    out.sort()
    return out


def sample_rings(rng: np.random.Generator, n: int, scheme: KeyScheme) -> np.ndarray:
    """(n, K) matrix of key rings: each row a uniform K-subset of [0, P), sorted.

    When rings are sparse in the pool, rows are drawn with replacement and
    rows containing a duplicate are redrawn (exactly uniform conditional on
    distinctness); dense schemes fall back to partial Fisher-Yates per row.
    """
    K, P = scheme.K, scheme.P
    dtype = np.int32 if P <= np.iinfo(np.int32).max else np.int64
    if n == 0:
        return np.empty((0, K), dtype=dtype)
    collision_rate = K * (K - 1) / (2.0 * P)
    if collision_rate > 0.3:
        rings = np.empty((n, K), dtype=dtype)
        for i in range(n):
            rings[i] = _ring_partial_shuffle(rng, P, K)
        return rings
    rings = np.sort(rng.integers(0, P, size=(n, K), dtype=dtype), axis=1)
    if K > 1:
        bad = np.flatnonzero((np.diff(rings, axis=1) == 0).any(axis=1))
        while bad.size:
            redraw = np.sort(rng.integers(0, P, size=(bad.size, K), dtype=dtype), axis=1)
            rings[bad] = redraw
            bad = bad[(np.diff(redraw, axis=1) == 0).any(axis=1)]
    return rings


def rings_share_key(ring_a: np.ndarray, ring_b: np.ndarray) -> bool:
    """Whether two sorted rings intersect, by a single merge scan."""
    i = j = 0
    na, nb = len(ring_a), len(ring_b)
    while i < na and j < nb:
        x, y = ring_a[i], ring_b[j]
        if x == y:
            return True
        if x < y:
            i += 1
        else:
            j += 1
    return False


def pair_share_flags(rings: np.ndarray, idx_a: np.ndarray, idx_b: np.ndarray) -> np.ndarray:
    """For each queried node pair, whether their rings share at least one key.

    Builds a key -> holders index by one radix sort of all (key, node) slots,
    emits every node pair that co-holds some key, and marks the queried pairs
    found among them.  Equivalent to a per-pair merge scan but far cheaper
    when many pairs are queried against large rings.
    """
    n, K = rings.shape
    idx_a = np.asarray(idx_a, dtype=np.int64)
    idx_b = np.asarray(idx_b, dtype=np.int64)
    if idx_a.shape != idx_b.shape:
        raise ValueError("pair index arrays must have equal length")
    m = idx_a.size
    if m == 0:
        return np.zeros(0, dtype=bool)
    pool_hint = int(rings.max()) + 1 if rings.size else 1
    if pool_hint * (n + 1) >= 2**62:
        raise ValueError("pool size times node count too large to index")

    # one sorted pass over all (key, node) slots
    packed = rings.astype(np.int64) * n
    packed += np.arange(n, dtype=np.int64)[:, None]
    flat = np.sort(packed.ravel())
    keys = flat // n
    holders = flat - keys * n

    share_ids = _coheld_pair_ids(keys, holders, n)

    query = np.minimum(idx_a, idx_b) * n + np.maximum(idx_a, idx_b)
    order = np.argsort(query, kind="stable")
    query_sorted = query[order]
    pos = np.searchsorted(query_sorted, share_ids)
    ok = pos < query_sorted.size
    hit = pos[ok][query_sorted[pos[ok]] == share_ids[ok]]
    flags_sorted = np.zeros(m, dtype=bool)
    flags_sorted[hit] = True
    flags = np.empty(m, dtype=bool)
    flags[order] = flags_sorted
    return flags


def _coheld_pair_ids(keys: np.ndarray, holders: np.ndarray, n: int) -> np.ndarray:
    """Canonical ids lo*n+hi of all node pairs co-holding a key.

    keys must be sorted; holders aligned with keys.  Pairs sharing several
    keys appear once per shared key, which is harmless for membership tests.
    """
    match = np.flatnonzero(keys[1:] == keys[:-1])
    if match.size == 0:
        return np.empty(0, dtype=np.int64)
    # consecutive runs of matches correspond to keys held >= 2 times
    run_break = np.flatnonzero(np.diff(match) != 1)
    run_start = np.concatenate(([0], run_break + 1))
    run_end = np.concatenate((run_break, [match.size - 1]))
    first_slot = match[run_start]
    group_size = match[run_end] - first_slot + 2
    parts = []
    for s in np.unique(group_size):
        base = first_slot[group_size == s]
        members = holders[base[:, None] + np.arange(s)[None, :]]
        ia, ib = np.triu_indices(int(s), 1)
        a = members[:, ia].ravel()
        b = members[:, ib].ravel()
        parts.append(np.minimum(a, b) * n + np.maximum(a, b))
    return np.concatenate(parts)


def _torus_gap(delta: np.ndarray) -> np.ndarray:
    """Per-axis wrapped separation: min(|delta|, 1 - |delta|)."""
    d = np.abs(delta)
    return np.minimum(d, 1.0 - d)


def _pair_block(pos_a, pos_b, torus: bool) -> np.ndarray:
    """Squared distances between two position blocks, (len(a), len(b))."""
    dx = pos_a[:, 0][:, None] - pos_b[:, 0][None, :]
    dy = pos_a[:, 1][:, None] - pos_b[:, 1][None, :]
    if torus:
        dx = _torus_gap(dx)
        dy = _torus_gap(dy)
    return dx * dx + dy * dy


def _brute_force_pairs(positions: np.ndarray, r: float, torus: bool):
    n = positions.shape[0]
    r2 = r * r
    out_i, out_j, out_d = [], [], []
    block = max(1, int(4e6 // max(n, 1)))
    for a0 in range(0, n, block):
        a1 = min(a0 + block, n)
        d2 = _pair_block(positions[a0:a1], positions, torus)
        ii, jj = np.nonzero(d2 <= r2)
        keep = a0 + ii < jj
        ii, jj = ii[keep], jj[keep]
        out_i.append(a0 + ii)
        out_j.append(jj)
        out_d.append(np.sqrt(d2[ii, jj]))
    return np.concatenate(out_i), np.concatenate(out_j), np.concatenate(out_d)


# half stencil: each unordered pair of grid cells is visited exactly once
_STENCIL = ((0, 0), (0, 1), (1, -1), (1, 0), (1, 1))


def geometric_pairs(positions: np.ndarray, r: float, region: Region):
    """All node pairs within distance r: arrays (i, j, dist) with i < j.

    Uses bucketing into a grid of cells of side >= r (wrapped on the torus)
    so only neighbouring cells are compared; falls back to blockwise brute
    force when the radius is too large for at least a 3x3 grid.
    """
    positions = np.asarray(positions, dtype=float)
    if positions.ndim != 2 or positions.shape[1] != 2:
        raise ValueError(f"positions must be (n, 2), got {positions.shape}")
    n = positions.shape[0]
    if n and (positions.min() < 0.0 or positions.max() > 1.0):
        raise ValueError("positions must lie in the unit square")
    r = float(r)
    if not 0.0 < r <= _MAX_SAMPLING_RADIUS:
        raise ValueError(f"radius must lie in (0, {_MAX_SAMPLING_RADIUS}], got {r}")
    if n < 2:
        empty = np.empty(0, dtype=np.int64)
        return empty, empty.copy(), np.empty(0, dtype=float)

    torus = region is Region.TORUS
    m = int(1.0 / r)
    if m < 3:
        return _brute_force_pairs(positions, r, torus)

    cell_x = np.minimum((positions[:, 0] * m).astype(np.int64), m - 1)
    cell_y = np.minimum((positions[:, 1] * m).astype(np.int64), m - 1)
    cell_id = cell_x * m + cell_y
    order = np.argsort(cell_id, kind="stable")
    sorted_ids = cell_id[order]
    starts = np.searchsorted(sorted_ids, np.arange(m * m + 1))
    r2 = r * r

    out_i, out_j, out_d = [], [], []
    occupied = np.unique(sorted_ids)
    for cid in occupied:
        cx, cy = divmod(int(cid), m)
        a = order[starts[cid] : starts[cid + 1]]
        pos_a = positions[a]
        for ox, oy in _STENCIL:
            nx, ny = cx + ox, cy + oy
            if torus:
                nx %= m
                ny %= m
            elif not (0 <= nx < m and 0 <= ny < m):
                continue
            nid = nx * m + ny
            if ox == 0 and oy == 0:
                if a.size < 2:
                    continue
                d2 = _pair_block(pos_a, pos_a, torus)
                ii, jj = np.nonzero(d2 <= r2)
                keep = ii < jj
                ii, jj = ii[keep], jj[keep]
                ga, gb = a[ii], a[jj]
                dd = np.sqrt(d2[ii, jj])
            else:
                b = order[starts[nid] : starts[nid + 1]]
                if b.size == 0:
                    continue
                d2 = _pair_block(pos_a, positions[b], torus)
                ii, jj = np.nonzero(d2 <= r2)
                if ii.size == 0:
                    continue
                ga, gb = a[ii], b[jj]
                dd = np.sqrt(d2[ii, jj])
            out_i.append(np.minimum(ga, gb))
            out_j.append(np.maximum(ga, gb))
            out_d.append(dd)

    if not out_i:
        empty = np.empty(0, dtype=np.int64)
        return empty, empty.copy(), np.empty(0, dtype=float)
    return np.concatenate(out_i), np.concatenate(out_j), np.concatenate(out_d)


def _assemble_network(params: NetworkParams, rng: np.random.Generator, n: int) -> SampledNetwork:
    positions = sample_positions(rng, n)
    rings = sample_rings(rng, n, params.scheme)
    gi, gj, _ = geometric_pairs(positions, params.r, params.region) if n else (
        np.empty(0, dtype=np.int64),
        np.empty(0, dtype=np.int64),
        np.empty(0),
    )
    geo_edges = np.column_stack((gi, gj)) if gi.size else np.empty((0, 2), dtype=np.int64)
    if gi.size:
        flags = pair_share_flags(rings, gi, gj)
        key_edges = geo_edges[flags]
    else:
        key_edges = np.empty((0, 2), dtype=np.int64)
    return SampledNetwork(
        params=params,
        positions=positions,
        key_rings=rings,
        geo_edges=geo_edges,
        key_edges=key_edges,
        edges=key_edges.copy(),
    )


def sample_network(params: NetworkParams, seed: int) -> SampledNetwork:
    """One network with exactly params.n nodes; identical seeds give identical samples."""
    return _assemble_network(params, rng_for(seed), params.n)


def sample_poissonized_network(params: NetworkParams, seed: int) -> SampledNetwork:
    """One network whose node count is Poisson with mean params.n."""
    rng = rng_for(seed)
    n = int(rng.poisson(params.n))
    return _assemble_network(params, rng, n)


def _sample_distinct(rng: np.random.Generator, total: int, count: int) -> np.ndarray:
    """Uniform count-subset of [0, total), by with-replacement draws plus top-up."""
    if count > total:
        raise ValueError("cannot draw more distinct values than exist")
    chosen = np.unique(rng.integers(0, total, size=count))
    while chosen.size < count:
        extra = rng.integers(0, total, size=count - chosen.size)
        chosen = np.unique(np.concatenate((chosen, extra)))
    return chosen


def sample_er(n: int, p: float, seed: int) -> np.ndarray:
    """Edge list of an Erdos-Renyi graph G(n, p): each pair linked independently.

    Drawn as a Binomial(C(n,2), p) edge count plus a uniform distinct set of
    pair slots, which is distributionally identical to per-pair coin flips.
    """
    if n < 0:
        raise ValueError(f"node count must be >= 0, got {n}")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"edge probability must lie in [0, 1], got {p}")
    rng = rng_for(seed)
    total = n * (n - 1) // 2
    if total == 0:
        return np.empty((0, 2), dtype=np.int64)
    count = int(rng.binomial(total, p))
    slots = _sample_distinct(rng, total, count)
    # invert the triangular slot index: slot = i*n - i*(i+1)/2 + (j - i - 1),
    # with +-1 fixups in case the float sqrt landed on the wrong side
    i = (2 * n - 1 - np.sqrt((2 * n - 1) ** 2 - 8.0 * slots)) // 2
    i = i.astype(np.int64)
    base = i * n - i * (i + 1) // 2
    i[base > slots] -= 1
    base = i * n - i * (i + 1) // 2
    nxt = base + (n - 1 - i)
    i[nxt <= slots] += 1
    base = i * n - i * (i + 1) // 2
    j = slots - base + i + 1
    return np.column_stack((i, j))


def sample_rig(n: int, pool: int, retain_p: float, seed: int) -> RigSample:
    """Binomial-ring key graph: every pool key enters each ring independently.

    Ring sizes are Binomial(pool, retain_p); conditional on its size a ring
    is a uniform subset, so sizes are drawn first and subsets second.
    Edges connect every pair of nodes whose rings intersect.
    """
    if n < 0:
        raise ValueError(f"node count must be >= 0, got {n}")
    if pool < 1:
        raise ValueError(f"pool size must be >= 1, got {pool}")
    if not 0.0 <= retain_p <= 1.0:
        raise ValueError(f"retention probability must lie in [0, 1], got {retain_p}")
    rng = rng_for(seed)
    sizes = rng.binomial(pool, retain_p, size=n)
    rings = tuple(_ring_partial_shuffle(rng, pool, int(s)) for s in sizes)
    flat_keys = np.concatenate(rings) if n else np.empty(0, dtype=np.int64)
    flat_nodes = np.repeat(np.arange(n, dtype=np.int64), sizes)
    order = np.argsort(flat_keys, kind="stable")
    ids = np.unique(_coheld_pair_ids(flat_keys[order], flat_nodes[order], max(n, 1)))
    edges = np.column_stack((ids // max(n, 1), ids % max(n, 1))) if ids.size else np.empty((0, 2), dtype=np.int64)
    return RigSample(n=n, pool=pool, retain_p=retain_p, rings=rings, edges=edges)


def poissonize_count(n: int, seed: int) -> int:
    """Realized node count of a Poisson point process with mean n."""
    if n < 0:
        raise ValueError(f"intensity must be >= 0, got {n}")
    return int(rng_for(seed).poisson(n))


def depoissonized_count(n: int, c0: float) -> int:
    """Deterministic reduced count ceil(n - n^(1/2 + c0)), floored at 0.

    Transfers results for the Poissonized model back to exactly-n networks;
    requires 0 < c0 < 1/2 so the correction is between sqrt(n) and n.
    """
    if n < 0:
        raise ValueError(f"count must be >= 0, got {n}")
    if not 0.0 < c0 < 0.5:
        raise ValueError(f"exponent offset must lie in (0, 0.5), got {c0}")
    return max(0, math.ceil(n - n ** (0.5 + c0)))
