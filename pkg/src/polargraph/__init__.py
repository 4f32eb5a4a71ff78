"""Polarity graphs of finite projective planes and their triangle-free subsets."""

__version__ = "0.1.0"

from .gf import FieldElem, FieldSpec, make_field
from .plane import IncidencePlane, build_pg2, load_plane, normalize, validate_plane
from .polarity import (Polarity, PolarityGraph, build_graph, er_graph, orthogonal_polarity,
                       unitary_graph, unitary_polarity, validate_polarity)
from .certificate import Certificate, verify_certificate

__all__ = [
    "FieldElem", "FieldSpec", "make_field",
    "IncidencePlane", "build_pg2", "load_plane", "normalize", "validate_plane",
    "Polarity", "PolarityGraph", "build_graph", "er_graph", "orthogonal_polarity",
    "unitary_graph", "unitary_polarity", "validate_polarity",
    "Certificate", "verify_certificate",
]
