"""Structural analysis of polarity graphs.

Everything here takes any object exposing ``n``, ``adjacency`` (sorted
neighbour tuples) and ``absolute`` flags, so synthetic graphs built with
``SimpleGraph.from_edges`` go through the same code as polarity graphs.
"""

from __future__ import annotations

import math
from collections import Counter, deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .polarity import LoopedView


@dataclass(eq=False)
class SimpleGraph:
    adjacency: list[tuple[int, ...]]
    absolute: list[bool]
    q: int = 0

    @property
    def n(self) -> int:
        return len(self.adjacency)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]],
                   absolute: Iterable[int] = ()) -> SimpleGraph:
        nb: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if u != v:
                nb[u].add(v)
                nb[v].add(u)
        flags = [False] * n
        for v in absolute:
            flags[v] = True
        return cls([tuple(sorted(s)) for s in nb], flags)

    @cached_property
    def neighbor_sets(self) -> list[frozenset[int]]:
        return [frozenset(a) for a in self.adjacency]


def _nsets(g) -> list[frozenset[int]]:
    return g.neighbor_sets if hasattr(g, "neighbor_sets") else [frozenset(a) for a in g.adjacency]


def triangles(g) -> list[tuple[int, int, int]]:
    """All triangles as sorted triples, in lexicographic order.

    Each triangle is found from its smallest vertex by scanning the edges
    inside that vertex's neighbourhood.
    """
    ns = _nsets(g)
    out = []
    for v in range(g.n):
        for u in g.adjacency[v]:
            if u <= v:
                continue
            for w in sorted(ns[v] & ns[u]):
                if w > u:
                    out.append((v, u, w))
    return out


@dataclass(eq=False)
class TriangleHypergraph:
    """3-uniform hypergraph of triangles on the non-absolute vertices."""
    vertices: list[int]
    edges: list[tuple[int, int, int]]
    q: int = 0
    graph: object = field(default=None, repr=False)

    @cached_property
    def incident(self) -> dict[int, list[int]]:
        inc: dict[int, list[int]] = {v: [] for v in self.vertices}
        for i, e in enumerate(self.edges):
            for v in e:
                inc[v].append(i)
        return inc

    @cached_property
    def degree(self) -> dict[int, int]:
        return {v: len(es) for v, es in self.incident.items()}

    def max_degree(self) -> int:
        return max(self.degree.values(), default=0)

    def max_codegree(self) -> int:
        pairs = Counter()
        for a, b, c in self.edges:
            pairs[(a, b)] += 1
            pairs[(a, c)] += 1
            pairs[(b, c)] += 1
        return max(pairs.values(), default=0)

    def is_independent(self, vs: Iterable[int]) -> bool:
        s = set(vs)
        return not any(a in s and b in s and c in s for a, b, c in self.edges)

    def induced(self, subset: Iterable[int]) -> TriangleHypergraph:
        s = set(subset)
        return TriangleHypergraph(sorted(s), [e for e in self.edges if set(e) <= s],
                                  self.q, None)


def triangle_hypergraph(g) -> TriangleHypergraph:
    verts = [v for v in range(g.n) if not g.absolute[v]]
    keep = set(verts)
    edges = [t for t in triangles(g) if keep.issuperset(t)]
    return TriangleHypergraph(verts, edges, getattr(g, "q", 0), g)


def parsons_partition(g) -> tuple[list[int], list[int], list[int]]:
    """(absolute points, their non-absolute neighbours, everything else)."""
    a = [v for v in range(g.n) if g.absolute[v]]
    s, e = [], []
    for v in range(g.n):
        if g.absolute[v]:
            continue
        (s if any(g.absolute[u] for u in g.adjacency[v]) else e).append(v)
    return a, s, e


def neighborhood_split(g, p: int) -> tuple[list[int], list[int]]:
    if g.absolute[p]:
        raise ValueError(f"vertex {p} is absolute")
    a_p = [u for u in g.adjacency[p] if g.absolute[u]]
    b_p = [u for u in g.adjacency[p] if not g.absolute[u]]
    return a_p, b_p


def induced_degrees(g, vs: Iterable[int]) -> dict[int, int]:
    s = set(vs)
    return {v: sum(1 for u in g.adjacency[v] if u in s) for v in s}


def induced_max_degree(g, vs: Iterable[int]) -> int:
    return max(induced_degrees(g, vs).values(), default=0)


def absolute_in_triangles(g, tris: Sequence[tuple[int, int, int]] | None = None) -> list[tuple]:
    """Triangles containing an absolute point (expected: none)."""
    tris = triangles(g) if tris is None else tris
    return [t for t in tris if any(g.absolute[v] for v in t)]


def matching_violations(g) -> list[int]:
    """Non-absolute vertices whose non-absolute neighbourhood is not a matching."""
    bad = []
    for p in range(g.n):
        if not g.absolute[p] and induced_max_degree(g, neighborhood_split(g, p)[1]) > 1:
            bad.append(p)
    return bad


def _sorted_intersection(a: Sequence[int], b: Sequence[int]) -> list[int]:
    i = j = 0
    out = []
    while i < len(a) and j < len(b):
        if a[i] == b[j]:
            out.append(a[i])
            i += 1
            j += 1
        elif a[i] < b[j]:
            i += 1
        else:
            j += 1
    return out


def is_c4_free(g) -> tuple[bool, tuple[int, int, int, int] | None]:
    """True iff no two distinct vertices share two neighbours.

    On failure the witness is a 4-cycle (u, a, v, b).
    """
    for u in range(g.n):
        for v in range(u + 1, g.n):
            common = _sorted_intersection(g.adjacency[u], g.adjacency[v])
            if len(common) >= 2:
                return False, (u, common[0], v, common[1])
    return True, None


class DisconnectedGraphError(ValueError):
    pass


def diameter(g) -> int:
    best = 0
    for s in range(g.n):
        dist = [-1] * g.n
        dist[s] = 0
        dq = deque([s])
        while dq:
            v = dq.popleft()
            for u in g.adjacency[v]:
                if dist[u] < 0:
                    dist[u] = dist[v] + 1
                    dq.append(u)
        if min(dist) < 0:
            raise DisconnectedGraphError(f"vertex {dist.index(-1)} unreachable from {s}")
        best = max(best, max(dist))
    return best


@dataclass(frozen=True)
class EMLResult:
    e: int
    expected: float
    deviation: float
    bound: float

    @property
    def slack(self) -> float:
        return self.bound - self.deviation

    @property
    def holds(self) -> bool:
        return self.slack >= -1e-9


def eml_check(view: LoopedView, xs: Iterable[int], ys: Iterable[int],
              lam: float | None = None) -> EMLResult:
    """Compare e(X,Y) with d|X||Y|/n; the mixing bound is lam*sqrt(|X||Y|).

    ``lam`` defaults to sqrt(q).
    """
    d = view.regular_degree()
    if d is None:
        raise ValueError("expander mixing check needs a regular (looped) graph")
    xs, ys = set(xs), set(ys)
    if lam is None:
        lam = math.sqrt(view.graph.q)
    e = view.e(xs, ys)
    expected = d * len(xs) * len(ys) / view.n
    return EMLResult(e, expected, abs(e - expected), lam * math.sqrt(len(xs) * len(ys)))


@dataclass(frozen=True)
class BoundValue:
    value: float
    floor: int


def independence_bound(q: int) -> BoundValue:
    """Upper bound (q^2+q+1)/2 + sqrt(q)(q^2+q+1)/(q+1) on triangle-free sets.

    Written as (A + B sqrt(q)) / C with integers, the floor is
    (A + isqrt(B^2 q)) // C, exact for every q.
    """
    if q < 2:
        raise ValueError("q must be at least 2")
    n = q * q + q + 1
    a, b, c = n * (q + 1), 2 * n, 2 * (q + 1)
    return BoundValue(n / 2 + math.sqrt(q) * n / (q + 1), (a + math.isqrt(b * b * q)) // c)


# name used by the original API
theorem12_bound = independence_bound


def hypergraph_vertex_floor_ok(q: int, n_vertices: int) -> bool:
    """Exact test of n_vertices >= q^2 + q - q^(3/2)."""
    gap = q * q + q - n_vertices
    return gap <= 0 or gap * gap <= q ** 3


def absolute_count_bounds_ok(q: int, n_absolute: int) -> bool:
    """q + 1 <= n_absolute <= q^(3/2) + 1, exactly."""
    m = n_absolute - 1
    return n_absolute >= q + 1 and m * m <= q ** 3
