"""Graph export/import: DIMACS edge format, adjacency lists, build artifacts."""

from __future__ import annotations

import json
from pathlib import Path
from typing import TextIO

from .plane import dump_plane
from .polarity import GraphDescriptor, PolarityGraph, dump_polarity


class GraphFormatError(ValueError):
    pass


def to_dimacs(g: PolarityGraph) -> str:
    """1-based DIMACS ``p edge`` format; absolute points noted in comments."""
    d = g.descriptor
    out = [f"c polarity graph construction={d.construction} q={d.q} polarity={d.polarity}",
           "c absolute " + " ".join(str(v + 1) for v in g.absolute_vertices),
           f"p edge {g.n} {g.edge_count()}"]
    out += [f"e {u + 1} {v + 1}" for u, v in g.edges()]
    return "\n".join(out) + "\n"


def read_dimacs(source: TextIO | str) -> tuple[int, list[tuple[int, int]]]:
    text = source if isinstance(source, str) else source.read()
    n = m = None
    edges = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        tok = line.split()
        if not tok or tok[0] == "c":
            continue
        if tok[0] == "p":
            if len(tok) != 4 or tok[1] != "edge":
                raise GraphFormatError(f"line {lineno}: expected 'p edge <n> <m>'")
            n, m = int(tok[2]), int(tok[3])
        elif tok[0] == "e" and len(tok) == 3:
            edges.append((int(tok[1]) - 1, int(tok[2]) - 1))
        else:
            raise GraphFormatError(f"line {lineno}: unknown line {line!r}")
    if n is None:
        raise GraphFormatError("missing problem line")
    if len(edges) != m:
        raise GraphFormatError(f"problem line announces {m} edges, found {len(edges)}")
    return n, edges


def to_adjacency_text(g) -> str:
    return "".join(f"{v}: {' '.join(map(str, nb))}\n" for v, nb in enumerate(g.adjacency))


def read_adjacency_text(source: TextIO | str) -> list[tuple[int, ...]]:
    text = source if isinstance(source, str) else source.read()
    adj: dict[int, tuple[int, ...]] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        head, sep, rest = line.partition(":")
        if not sep:
            raise GraphFormatError(f"line {lineno}: expected 'v: n1 n2 ...'")
        try:
            adj[int(head)] = tuple(sorted(int(x) for x in rest.split()))
        except ValueError as exc:
            raise GraphFormatError(f"line {lineno}: {exc}") from None
    if sorted(adj) != list(range(len(adj))):
        raise GraphFormatError("vertex ids must be 0..n-1 without gaps")
    return [adj[v] for v in range(len(adj))]


def summary(g: PolarityGraph) -> dict:
    return {**g.descriptor.as_dict(), "n": g.n, "edges": g.edge_count(),
            "absolute": len(g.absolute_vertices),
            "absolute_vertices": g.absolute_vertices,
            "degree_profile": {str(k): v for k, v in g.degree_profile().items()}}


def write_artifact(g: PolarityGraph, out: str | Path) -> dict[str, Path]:
    """Write summary.json, graph.adj, graph.dimacs (and plane/polarity files)."""
    out = Path(out)
    out.mkdir(parents=True, exist_ok=True)
    paths = {"summary": out / "summary.json", "adj": out / "graph.adj",
             "dimacs": out / "graph.dimacs"}
    paths["summary"].write_text(json.dumps(summary(g), indent=2) + "\n")
    paths["adj"].write_text(to_adjacency_text(g))
    paths["dimacs"].write_text(to_dimacs(g))
    if g.plane is not None and g.polarity is not None:
        paths["plane"] = out / "plane.txt"
        paths["polarity"] = out / "polarity.txt"
        paths["plane"].write_text(dump_plane(g.plane))
        paths["polarity"].write_text(dump_polarity(g.polarity, g.q))
    return paths


def load_artifact(path: str | Path) -> PolarityGraph:
    """Rebuild a graph from a build directory (adjacency + summary)."""
    path = Path(path)
    try:
        info = json.loads((path / "summary.json").read_text())
        adjacency = read_adjacency_text((path / "graph.adj").read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise GraphFormatError(f"cannot read graph artifact {path}: {exc}") from None
    if len(adjacency) != info.get("n"):
        raise GraphFormatError("summary vertex count disagrees with adjacency list")
    absolute = [False] * len(adjacency)
    for v in info["absolute_vertices"]:
        absolute[v] = True
    desc = GraphDescriptor(info["construction"], int(info["q"]),
                           tuple(info["modulus"]), info["polarity"])
    return PolarityGraph(desc.q, adjacency, absolute, desc)
