"""Polarities of projective planes and their polarity graphs."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, TextIO

import numpy as np

from .gf import FieldSpec, field_of_order
from .plane import (IncidencePlane, PlaneFormatError, ValidationReport, build_pg2,
                    normalize_codes, point_id)


class PolarityError(ValueError):
    pass


class PolarityValidationError(PolarityError):
    def __init__(self, report: ValidationReport):
        super().__init__("invalid polarity: " + "; ".join(
            f"{c.name} ({c.witness})" for c in report.failures))
        self.report = report


@dataclass(frozen=True)
class Polarity:
    point_to_line: tuple[int, ...]
    line_to_point: tuple[int, ...]
    kind: str = "custom"

    @classmethod
    def from_point_map(cls, point_to_line: Iterable[int], kind: str = "custom") -> Polarity:
        p2l = tuple(int(x) for x in point_to_line)
        l2p = [-1] * len(p2l)
        for p, l in enumerate(p2l):
            if 0 <= l < len(p2l):
                l2p[l] = p
        return cls(p2l, tuple(l2p), kind)


@dataclass(frozen=True)
class GraphDescriptor:
    construction: str  # "ER" | "U" | "custom"
    q: int
    modulus: tuple[int, ...]
    polarity: str

    def as_dict(self) -> dict:
        return {"construction": self.construction, "q": self.q,
                "modulus": list(self.modulus), "polarity": self.polarity}


def orthogonal_polarity(plane: IncidencePlane) -> Polarity:
    """Point (x0,x1,x2) -> line [x0,x1,x2]; identity on labels."""
    if plane.coords is None:
        raise PolarityError("orthogonal polarity needs a coordinatized PG(2,q); "
                            "supply a polarity file for loaded planes")
    ids = tuple(range(plane.n_points))
    return Polarity(ids, ids, "orthogonal")


def is_square_order(field: FieldSpec) -> bool:
    return field.k % 2 == 0


def unitary_polarity(plane: IncidencePlane) -> Polarity:
    """Point (x0,x1,x2) -> line [x0^s, x1^s, x2^s] with s = sqrt(q)."""
    fld = plane.field
    if plane.coords is None or fld is None:
        raise PolarityError("unitary polarity needs a coordinatized PG(2,q)")
    if not is_square_order(fld):
        raise PolarityError(f"q must be an even prime power (got q={fld.q})")
    s = math.isqrt(fld.q)
    p2l = []
    for codes in plane.coords:
        image = normalize_codes(fld, (fld.pow(c, s) for c in codes))
        p2l.append(point_id(image, fld.q))
    return Polarity.from_point_map(p2l, "unitary")


def validate_polarity(plane: IncidencePlane, theta: Polarity) -> ValidationReport:
    n, m = plane.n_points, plane.n_lines
    rep = ValidationReport()
    p2l = np.asarray(theta.point_to_line)
    l2p = np.asarray(theta.line_to_point)
    shape_ok = (len(p2l) == n and len(l2p) == m
                and ((0 <= p2l) & (p2l < m)).all() and ((0 <= l2p) & (l2p < n)).all())
    rep.add("bijection", shape_ok and len(set(p2l.tolist())) == n,
            {"points": len(p2l), "lines": len(l2p)})
    if not shape_ok:
        return rep
    bad = np.flatnonzero(l2p[p2l] != np.arange(n))
    bad_l = np.flatnonzero(p2l[l2p] != np.arange(m))
    witness = ({"point": int(bad[0]), "image": int(p2l[bad[0]]),
                "back": int(l2p[p2l[bad[0]]])} if len(bad)
               else {"line": int(bad_l[0])} if len(bad_l) else None)
    rep.add("involution", witness is None, witness)
    # p I l  <=>  theta(l) I theta(p), i.e. inc[p, l] == inc[l2p[l], p2l[p]]
    inc = plane.incidence
    image = inc[np.ix_(l2p, p2l)].T
    mism = np.argwhere(image != inc)
    rep.add("incidence preserving", len(mism) == 0,
            len(mism) and {"point": int(mism[0][0]), "line": int(mism[0][1])})
    return rep


@dataclass(eq=False)
class PolarityGraph:
    """G(Pi, theta): p ~ p' iff p is on theta(p'). Loops are not stored."""
    q: int
    adjacency: list[tuple[int, ...]]
    absolute: list[bool]
    descriptor: GraphDescriptor
    plane: IncidencePlane | None = None
    polarity: Polarity | None = None

    @property
    def n(self) -> int:
        return len(self.adjacency)

    @cached_property
    def neighbor_sets(self) -> list[frozenset[int]]:
        return [frozenset(a) for a in self.adjacency]

    @cached_property
    def absolute_vertices(self) -> list[int]:
        return [v for v, a in enumerate(self.absolute) if a]

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u, nb in enumerate(self.adjacency) for v in nb if u < v]

    def edge_count(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def degree_profile(self) -> dict[int, int]:
        prof: dict[int, int] = {}
        for a in self.adjacency:
            prof[len(a)] = prof.get(len(a), 0) + 1
        return dict(sorted(prof.items()))

    def adjacency_matrix(self, loops: bool = False) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=np.int64)
        for v, nb in enumerate(self.adjacency):
            a[v, list(nb)] = 1
        if loops:
            a[np.diag_indices(self.n)] = np.asarray(self.absolute, dtype=np.int64)
        return a

    def looped(self) -> LoopedView:
        return LoopedView(self)

    def __getstate__(self):
        state = self.__dict__.copy()
        state.pop("neighbor_sets", None)
        state.pop("absolute_vertices", None)
        return state


class LoopedView:
    """G-circle: the polarity graph with one loop at each absolute point.

    A loop adds one to the degree of its vertex and counts once in e(X, Y)
    when its vertex lies in X and in Y.
    """

    def __init__(self, graph: PolarityGraph):
        self.graph = graph

    @property
    def n(self) -> int:
        return self.graph.n

    def has_loop(self, v: int) -> bool:
        return self.graph.absolute[v]

    def degree(self, v: int) -> int:
        return len(self.graph.adjacency[v]) + int(self.graph.absolute[v])

    def degrees(self) -> list[int]:
        return [self.degree(v) for v in range(self.n)]

    def regular_degree(self) -> int | None:
        d = set(self.degrees())
        return d.pop() if len(d) == 1 else None

    def matrix(self) -> np.ndarray:
        return self.graph.adjacency_matrix(loops=True)

    def e(self, xs: Iterable[int], ys: Iterable[int]) -> int:
        """Number of ordered pairs (x, y) in X x Y joined by an edge or loop."""
        yset = set(ys)
        total = 0
        for x in set(xs):
            total += sum(1 for y in self.graph.adjacency[x] if y in yset)
            if self.graph.absolute[x] and x in yset:
                total += 1
        return total


def build_graph(plane: IncidencePlane, theta: Polarity,
                descriptor: GraphDescriptor | None = None,
                validate: bool = True) -> PolarityGraph:
    if validate:
        rep = validate_polarity(plane, theta)
        if not rep.ok:
            raise PolarityValidationError(rep)
    adjacency = []
    absolute = []
    for p in range(plane.n_points):
        lines = plane.point_lines[p]
        nb = sorted(theta.line_to_point[l] for l in lines)
        absolute.append(theta.point_to_line[p] in lines)
        adjacency.append(tuple(x for x in nb if x != p))
    if descriptor is None:
        modulus = tuple(plane.field.modulus) if plane.field else ()
        construction = {"orthogonal": "ER", "unitary": "U"}.get(theta.kind, "custom")
        if plane.coords is None:
            construction = "custom"
        descriptor = GraphDescriptor(construction, plane.order, modulus, theta.kind)
    return PolarityGraph(plane.order, adjacency, absolute, descriptor, plane, theta)


@lru_cache(maxsize=None)
def er_graph(q: int) -> PolarityGraph:
    """ER_q: PG(2,q) with the orthogonal polarity."""
    plane = build_pg2(field_of_order(q))
    return build_graph(plane, orthogonal_polarity(plane))


@lru_cache(maxsize=None)
def unitary_graph(q: int) -> PolarityGraph:
    """U_q for square q."""
    fld = field_of_order(q)
    if not is_square_order(fld):
        raise PolarityError(f"q must be an even prime power (got q={q})")
    plane = build_pg2(fld)
    return build_graph(plane, unitary_polarity(plane))


# -- polarity text format -------------------------------------------------------

_HEADER = re.compile(r"polarity\s+order=(\d+)\s*$")
_ENTRY = re.compile(r"P\s+(\d+)\s*->\s*L\s+(\d+)\s*$")


def load_polarity(source: TextIO | str) -> Polarity:
    text = source if isinstance(source, str) else source.read()
    header = None
    mapping: dict[int, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        if header is None:
            m = _HEADER.match(body)
            if not m:
                raise PlaneFormatError("expected 'polarity order=<q>'", lineno)
            header = int(m.group(1))
            continue
        m = _ENTRY.match(body)
        if not m:
            raise PlaneFormatError("expected 'P <point> -> L <line>'", lineno)
        p, l = int(m.group(1)), int(m.group(2))
        if p in mapping:
            raise PlaneFormatError(f"point {p} mapped twice", lineno)
        mapping[p] = l
    if header is None:
        raise PlaneFormatError("missing header", 1)
    n = header * header + header + 1
    if sorted(mapping) != list(range(n)):
        raise PolarityError(f"polarity must map every point 0..{n - 1}")
    return Polarity.from_point_map((mapping[p] for p in range(n)), "custom")


def dump_polarity(theta: Polarity, order: int) -> str:
    out = [f"polarity order={order}"]
    out += [f"P {p} -> L {l}" for p, l in enumerate(theta.point_to_line)]
    return "\n".join(out) + "\n"
