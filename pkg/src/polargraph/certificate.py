"""Certificates: explicit vertex sets claimed triangle-free and absolute-free.

The verifier deliberately shares no code with the search or analysis
modules; it re-derives triangles from the raw adjacency lists.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any


class CertificateError(ValueError):
    pass


class DescriptorMismatch(CertificateError):
    """The certificate names a different graph than the one supplied."""


@dataclass
class Certificate:
    construction: str
    q: int
    modulus: list[int]
    polarity: str
    vertices: list[int]
    generator: str = "manual"
    seed: int = 0
    manifest: str | None = None
    extra: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        self.vertices = sorted(int(v) for v in self.vertices)
        self.modulus = [int(c) for c in self.modulus]

    @property
    def size(self) -> int:
        return len(self.vertices)

    @property
    def descriptor(self) -> dict:
        return {"construction": self.construction, "q": self.q,
                "modulus": list(self.modulus), "polarity": self.polarity}

    @classmethod
    def for_graph(cls, graph, vertices, generator: str = "manual", seed: int = 0,
                  **extra) -> Certificate:
        d = graph.descriptor
        return cls(d.construction, d.q, list(d.modulus), d.polarity, list(vertices),
                   generator, seed, extra=extra)

    def to_dict(self) -> dict:
        out = {**self.descriptor, "vertices": list(self.vertices), "size": self.size,
               "generator": self.generator, "seed": self.seed}
        if self.manifest is not None:
            out["manifest"] = self.manifest
        out.update(self.extra)
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def from_dict(cls, data: dict) -> Certificate:
        required = ("construction", "q", "modulus", "polarity", "vertices")
        missing = [k for k in required if k not in data]
        if missing:
            raise CertificateError(f"certificate missing fields: {missing}")
        vertices = data["vertices"]
        if len(set(vertices)) != len(vertices):
            raise CertificateError("certificate lists a vertex twice")
        if "size" in data and data["size"] != len(vertices):
            raise CertificateError(f"claimed size {data['size']} != {len(vertices)} vertices")
        known = set(required) | {"size", "generator", "seed", "manifest"}
        return cls(data["construction"], int(data["q"]), list(data["modulus"]),
                   data["polarity"], list(vertices), data.get("generator", "manual"),
                   int(data.get("seed", 0)), data.get("manifest"),
                   {k: v for k, v in data.items() if k not in known})

    @classmethod
    def from_json(cls, text: str) -> Certificate:
        return cls.from_dict(json.loads(text))

    def save(self, path: str | Path) -> None:
        Path(path).write_text(self.to_json())

    @classmethod
    def load(cls, path: str | Path) -> Certificate:
        return cls.from_json(Path(path).read_text())


@dataclass(frozen=True)
class Verdict:
    accepted: bool
    reason: str = ""
    witness: tuple[int, ...] | None = None

    def __bool__(self) -> bool:
        return self.accepted

    def to_dict(self) -> dict:
        return {"accepted": self.accepted, "reason": self.reason,
                "witness": list(self.witness) if self.witness else None}


def check_descriptor(graph, cert: Certificate) -> None:
    ours = graph.descriptor.as_dict()
    if ours != cert.descriptor:
        raise DescriptorMismatch(f"certificate is for {cert.descriptor}, graph is {ours}")


def verify_vertex_set(graph, vertices) -> Verdict:
    """Accept iff no listed vertex is absolute and no triangle lies inside."""
    vs = list(vertices)
    for v in vs:
        if not 0 <= v < graph.n:
            raise CertificateError(f"vertex id {v} out of range 0..{graph.n - 1}")
    inside = set(vs)
    if len(inside) != len(vs):
        return Verdict(False, "duplicate vertex")
    for v in sorted(inside):
        if graph.absolute[v]:
            return Verdict(False, "absolute point", (v,))
    adj = graph.adjacency
    for u in sorted(inside):
        nu = [x for x in adj[u] if x > u and x in inside]
        for i, v in enumerate(nu):
            nv = set(adj[v])
            for w in nu[i + 1:]:
                if w in nv:
                    return Verdict(False, "triangle", (u, v, w))
    return Verdict(True)


def verify_certificate(graph, cert: Certificate, check_graph: bool = True) -> Verdict:
    if check_graph:
        check_descriptor(graph, cert)
    return verify_vertex_set(graph, cert.vertices)
