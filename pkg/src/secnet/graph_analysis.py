"""Connectivity statistics of sampled graphs.

A disjoint-set forest does the heavy lifting: sweeps analyze millions of
graphs, and union-find with path compression and union by size keeps each
analysis near-linear in the edge count.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["UnionFind", "GraphStats", "analyze", "is_subgraph"]


class UnionFind:
    """Disjoint-set forest with path compression and union by size."""

    def __init__(self, n: int):
        if n < 0:
            raise ValueError(f"element count must be >= 0, got {n}")
        self.parent = list(range(n))
        self.size = [1] * n
        self.components = n

    def find(self, x: int) -> int:
        parent = self.parent
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, a: int, b: int) -> bool:
        """Merge the sets holding a and b; True if they were distinct."""
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        self.components -= 1
        return True


@dataclass(frozen=True)
class GraphStats:
    """Summary of one graph: counts, connectivity, degree extremes.

    Conventions: the empty graph (0 nodes) is connected with no isolated
    nodes; a single node is connected and counts as isolated; min_degree is
    0 whenever any node is isolated and also for the empty graph.
    """

    node_count: int
    edge_count: int
    component_count: int
    isolated_count: int
    min_degree: int
    is_connected: bool


def _as_edge_array(node_count: int, edges) -> np.ndarray:
    """Validate and canonicalize an edge list to a deduplicated (m, 2) array."""
    arr = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges, dtype=np.int64)
    if arr.size == 0:
        return arr.reshape(0, 2)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ValueError(f"edges must be pairs, got shape {arr.shape}")
    if arr.min() < 0 or arr.max() >= node_count:
        raise ValueError("edge endpoint outside [0, node_count)")
    if np.any(arr[:, 0] == arr[:, 1]):
        raise ValueError("self-loops are not valid edges")
    lo = np.minimum(arr[:, 0], arr[:, 1])
    hi = np.maximum(arr[:, 0], arr[:, 1])
    ids = np.unique(lo * node_count + hi)
    return np.column_stack((ids // node_count, ids % node_count))


def analyze(node_count: int, edges) -> GraphStats:
    """Exact connectivity statistics of the graph on [0, node_count) with these edges.

    Accepts any iterable of unordered pairs; duplicates collapse to one edge.
    """
    if node_count < 0:
        raise ValueError(f"node count must be >= 0, got {node_count}")
    arr = _as_edge_array(node_count, edges)
    if node_count == 0:
        return GraphStats(0, 0, 0, 0, 0, True)
    degrees = np.bincount(arr.ravel(), minlength=node_count)
    uf = UnionFind(node_count)
    for a, b in arr:
        uf.union(int(a), int(b))
    isolated = int(np.count_nonzero(degrees == 0))
    return GraphStats(
        node_count=node_count,
        edge_count=int(arr.shape[0]),
        component_count=uf.components,
        isolated_count=isolated,
        min_degree=int(degrees.min()),
        is_connected=uf.components <= 1,
    )


def _canonical_pairs(edges) -> set[tuple[int, int]]:
    arr = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
    if arr.size and np.any(arr[:, 0] == arr[:, 1]):
        raise ValueError("self-loops are not valid edges")
    return {(min(int(a), int(b)), max(int(a), int(b))) for a, b in arr}


def is_subgraph(sub_edges, super_edges) -> bool:
    """True when every edge of the first list appears in the second (as unordered pairs)."""
    return _canonical_pairs(sub_edges) <= _canonical_pairs(super_edges)
