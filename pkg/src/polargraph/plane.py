"""Projective planes as explicit point-line incidence structures.

PG(2,q) is built from homogeneous coordinates; any other plane of order q
can be loaded from the text format handled by ``load_plane``/``dump_plane``::

    # comment
    plane order=2 points=7 lines=7
    L 0: 0 1 2
    ...
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, TextIO

import numpy as np

from .gf import FieldElem, FieldSpec

MAX_PLANE_ORDER = 32


class PlaneError(ValueError):
    pass


class PlaneFormatError(PlaneError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class PlaneValidationError(PlaneError):
    def __init__(self, report: ValidationReport):
        super().__init__("plane fails axioms: " + "; ".join(
            f"{c.name} ({c.witness})" for c in report.failures))
        self.report = report


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    witness: object = None


@dataclass
class ValidationReport:
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def __getitem__(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def add(self, name: str, passed: bool, witness: object = None) -> None:
        self.checks.append(CheckResult(name, bool(passed), None if passed else witness))


@dataclass(frozen=True)
class PPoint:
    """Canonical representative of a projective point (leftmost nonzero entry 1)."""
    coords: tuple[FieldElem, FieldElem, FieldElem]
    id: int

    @property
    def codes(self) -> tuple[int, int, int]:
        return tuple(c.value for c in self.coords)


def point_id(codes: tuple[int, int, int], q: int) -> int:
    """Index of a normalized triple of field codes in lexicographic order."""
    x0, x1, x2 = codes
    if x0:
        return 1 + q + x1 * q + x2
    if x1:
        return 1 + x2
    return 0


def point_codes(pid: int, q: int) -> tuple[int, int, int]:
    if pid == 0:
        return (0, 0, 1)
    if pid <= q:
        return (0, 1, pid - 1)
    a, b = divmod(pid - 1 - q, q)
    return (1, a, b)


def normalize_codes(field: FieldSpec, codes: Iterable[int]) -> tuple[int, int, int]:
    codes = tuple(codes)
    lead = next((c for c in codes if c), None)
    if lead is None:
        raise PlaneError("the zero vector is not a projective point")
    s = field.inv(lead)
    return tuple(field.mul(s, c) for c in codes)


def normalize(raw: Iterable[FieldElem]) -> PPoint:
    raw = tuple(raw)
    if len(raw) != 3:
        raise PlaneError("projective points of PG(2,q) have three coordinates")
    fld = raw[0].field
    codes = normalize_codes(fld, (r.value for r in raw))
    return PPoint(tuple(FieldElem(c, fld) for c in codes), point_id(codes, fld.q))


@dataclass(eq=False)
class IncidencePlane:
    """A point-line incidence structure claimed to be a projective plane.

    ``line_points[l]`` is the sorted tuple of point ids on line ``l``.
    Planes built from coordinates also carry ``field`` and ``coords``
    (normalized code triples); lines share the point labels.
    """
    order: int
    line_points: list[tuple[int, ...]]
    n_points: int
    field: FieldSpec | None = None
    coords: list[tuple[int, int, int]] | None = None

    @property
    def n_lines(self) -> int:
        return len(self.line_points)

    @cached_property
    def point_lines(self) -> list[tuple[int, ...]]:
        out: list[list[int]] = [[] for _ in range(self.n_points)]
        for l, pts in enumerate(self.line_points):
            for p in pts:
                out[p].append(l)
        return [tuple(ls) for ls in out]

    @cached_property
    def incidence(self) -> np.ndarray:
        """Boolean matrix indexed [point, line]."""
        m = np.zeros((self.n_points, self.n_lines), dtype=bool)
        for l, pts in enumerate(self.line_points):
            m[list(pts), l] = True
        m.setflags(write=False)
        return m

    def incident(self, p: int, l: int) -> bool:
        return bool(self.incidence[p, l])

    def point(self, pid: int) -> PPoint:
        if self.coords is None:
            raise PlaneError("plane has no coordinates")
        return PPoint(tuple(FieldElem(c, self.field) for c in self.coords[pid]), pid)

    def same_structure(self, other: IncidencePlane) -> bool:
        return (self.order == other.order and self.n_points == other.n_points
                and list(self.line_points) == list(other.line_points))


def build_pg2(field: FieldSpec) -> IncidencePlane:
    """PG(2,q): line [a] contains point (x) iff a0x0 + a1x1 + a2x2 = 0."""
    q = field.q
    if q > MAX_PLANE_ORDER:
        raise PlaneError(f"plane order {q} exceeds {MAX_PLANE_ORDER}")
    n = q * q + q + 1
    coords = [point_codes(i, q) for i in range(n)]
    c = np.array(coords, dtype=np.int64)
    add, mul = field.add_table, field.mul_table
    dot = mul[c[:, None, 0], c[None, :, 0]]
    dot = add[dot, mul[c[:, None, 1], c[None, :, 1]]]
    dot = add[dot, mul[c[:, None, 2], c[None, :, 2]]]
    inc = dot == 0  # symmetric: labels of points and lines coincide
    line_points = [tuple(np.flatnonzero(inc[:, l]).tolist()) for l in range(n)]
    plane = IncidencePlane(q, line_points, n, field=field, coords=coords)
    plane.__dict__["incidence"] = inc
    inc.setflags(write=False)
    return plane


def validate_plane(plane: IncidencePlane) -> ValidationReport:
    """Check the projective plane axioms for order ``plane.order``."""
    q = plane.order
    n = q * q + q + 1
    rep = ValidationReport()
    rep.add("counts", plane.n_points == n and plane.n_lines == n,
            {"points": plane.n_points, "lines": plane.n_lines, "expected": n})

    bad_line = next(((l, len(pts)) for l, pts in enumerate(plane.line_points)
                     if len(pts) != q + 1 or len(set(pts)) != len(pts)), None)
    rep.add("uniform line size", bad_line is None,
            bad_line and {"line": bad_line[0], "size": bad_line[1]})

    deg = [len(ls) for ls in plane.point_lines]
    bad_pt = next(((p, d) for p, d in enumerate(deg) if d != q + 1), None)
    rep.add("uniform point degree", bad_pt is None,
            bad_pt and {"point": bad_pt[0], "degree": bad_pt[1]})

    m = plane.incidence.astype(np.int32)
    rep.add(*_pairwise_check("unique joining line", m @ m.T, "points"))
    rep.add(*_pairwise_check("unique meeting point", m.T @ m, "lines"))
    return rep


def _pairwise_check(name: str, gram: np.ndarray, what: str):
    off = gram.copy()
    np.fill_diagonal(off, 1)
    bad = np.argwhere(off != 1)
    if len(bad) == 0:
        return name, True, None
    a, b = (int(x) for x in bad[0])
    return name, False, {what: (a, b), "common": int(gram[a, b])}


# -- text format --------------------------------------------------------------

_HEADER = re.compile(r"plane\s+order=(\d+)\s+points=(\d+)\s+lines=(\d+)\s*$")
_LINE = re.compile(r"L\s+(\d+)\s*:\s*(.*)$")


def _content_lines(source: TextIO | str):
    text = source if isinstance(source, str) else source.read()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].rstrip()
        if body.strip():
            indent = len(body) - len(body.lstrip())
            yield lineno, indent, body.strip()


def load_plane(source: TextIO | str, validate: bool = True) -> IncidencePlane:
    """Parse the plane text format; raise unless the result is a projective plane."""
    header = None
    lines: dict[int, tuple[int, ...]] = {}
    for lineno, indent, body in _content_lines(source):
        if header is None:
            m = _HEADER.match(body)
            if not m:
                raise PlaneFormatError("expected 'plane order=<q> points=<n> lines=<n>'",
                                       lineno, indent + 1)
            header = tuple(int(g) for g in m.groups())
            continue
        m = _LINE.match(body)
        if not m:
            raise PlaneFormatError("expected 'L <index>: <point indices>'", lineno, indent + 1)
        idx = int(m.group(1))
        if idx in lines:
            raise PlaneFormatError(f"line {idx} listed twice", lineno, indent + 1)
        pts = []
        for tok in re.finditer(r"\S+", m.group(2)):
            if not tok.group().isdigit():
                col = indent + m.start(2) + tok.start() + 1
                raise PlaneFormatError(f"bad point index {tok.group()!r}", lineno, col)
            pts.append(int(tok.group()))
        lines[idx] = tuple(sorted(pts))
    if header is None:
        raise PlaneFormatError("missing header", 1)
    q, n_points, n_lines = header
    if q > MAX_PLANE_ORDER:
        raise PlaneError(f"plane order {q} exceeds {MAX_PLANE_ORDER}")
    if sorted(lines) != list(range(n_lines)):
        raise PlaneError(f"expected lines 0..{n_lines - 1}, got {len(lines)} entries")
    for idx, pts in lines.items():
        if any(p >= n_points for p in pts):
            raise PlaneError(f"line {idx} references a point id >= {n_points}")
    plane = IncidencePlane(q, [lines[i] for i in range(n_lines)], n_points)
    if validate:
        report = validate_plane(plane)
        if not report.ok:
            raise PlaneValidationError(report)
    return plane


def dump_plane(plane: IncidencePlane) -> str:
    out = [f"plane order={plane.order} points={plane.n_points} lines={plane.n_lines}"]
    for l, pts in enumerate(plane.line_points):
        out.append(f"L {l}: " + " ".join(map(str, pts)))
    return "\n".join(out) + "\n"
