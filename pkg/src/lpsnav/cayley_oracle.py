"""Brute-force Cayley-graph construction and BFS, for verification.

Builds X_{p,q} explicitly — every element of PSL2(F_q) as a canonical matrix,
edges by left-multiplying the p + 1 generator images — and answers distance
queries by breadth-first search.  Everything here is deliberately naive; it
exists to check the congruence-based navigator against ground truth, so it is
capped at small q.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import ParameterError
from .navigator import DiagonalVertex, density_bound
from .ntheory import legendre
from .quaternion import GraphParams, PslElement

__all__ = ["CayleyGraph", "build_graph", "bfs_distances", "diagonal_distance_census"]

MAX_ORACLE_Q = 200


@dataclass(frozen=True)
class CayleyGraph:
    params: GraphParams
    vertices: tuple[tuple[int, int, int, int], ...]
    index: dict[tuple[int, int, int, int], int]
    adjacency: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.vertices)

    def vertex_index(self, g: PslElement) -> int:
        return self.index[PslElement.canonical(self.params.q, g.m).m]


def _psl_matrices(q: int):
    """Canonical representatives of PSL2(F_q), enumerated directly.

    Every projective class has a unique matrix whose first nonzero entry
    (row-major) is 1: shape (1, b, c, d) or (0, 1, c, d).  Membership in PSL
    (rather than PGL) means the determinant is a nonzero square.
    """
    for b in range(q):
        for c in range(q):
            for d in range(q):
                det = (d - b * c) % q
                if det != 0 and legendre(det, q) == 1:
                    yield (1, b, c, d)
    for c in range(1, q):
        for d in range(q):
            if legendre(-c % q, q) == 1:
                yield (0, 1, c, d)


def build_graph(params: GraphParams) -> CayleyGraph:
    """Materialize X_{p,q}. Guarded: the vertex count grows like q³."""
    q = params.q
    if q > MAX_ORACLE_Q:
        raise ParameterError(
            f"oracle graph construction is limited to q <= {MAX_ORACLE_Q}"
        )
    vertices = tuple(_psl_matrices(q))
    assert len(vertices) == params.vertex_count
    index = {m: i for i, m in enumerate(vertices)}
    assert len(index) == len(vertices)

    adjacency = []
    for m in vertices:
        v = PslElement(q, m)
        nbrs = tuple(index[(s @ v).m] for s in params.gen_images)
        assert len(set(nbrs)) == len(params.gens), "multi-edge in generator images"
        adjacency.append(nbrs)

    graph = CayleyGraph(params, vertices, index, tuple(adjacency))
    dist = bfs_distances(graph)
    assert all(d >= 0 for d in dist), "Cayley graph is not connected"
    return graph


def bfs_distances(graph: CayleyGraph, source: Optional[int] = None) -> list[int]:
    """Distances from source (default: identity) to every vertex; -1 unreachable."""
    if source is None:
        source = graph.vertex_index(PslElement.identity(graph.params.q))
    dist = [-1] * len(graph)
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in graph.adjacency[u]:
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def diagonal_vertices(params: GraphParams) -> list[DiagonalVertex]:
    """All diagonal vertices of the graph, as (a, b) classes with a²+b² a QR."""
    q = params.q
    out = []
    for b in range(q):
        v = DiagonalVertex(q, 1, b)
        if v.on_graph():
            out.append(v)
    v = DiagonalVertex(q, 0, 1)
    if v.on_graph():
        out.append(v)
    return out


@dataclass(frozen=True)
class CensusRow:
    h: int
    count_at_least: int
    bound: Optional[Fraction]  # None below the regime threshold


def diagonal_distance_census(
    graph: CayleyGraph, threshold: Optional[int] = None
) -> list[CensusRow]:
    """For each h: how many diagonal vertices sit at distance >= h.

    Rows at or above `threshold` carry the 89 q⁴ / p^(h-1) comparison bound;
    the table always extends through the threshold so the bounded regime is
    visible even when every vertex is closer than that.
    """
    params = graph.params
    dist = bfs_distances(graph)
    sqrt_m1 = params.sqrt_m1
    dists = []
    for v in diagonal_vertices(params):
        idx = graph.index[v.psl(sqrt_m1).m]
        dists.append(dist[idx])
    rows = []
    top = max(dists)
    if threshold is not None:
        top = max(top, threshold)
    for h in range(top + 2):
        count = sum(1 for d in dists if d >= h)
        bound = None
        if threshold is not None and h >= threshold and h >= 1:
            bound = density_bound(params, h)
        rows.append(CensusRow(h=h, count_at_least=count, bound=bound))
    return rows
