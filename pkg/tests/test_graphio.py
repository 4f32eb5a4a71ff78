import pytest

from polargraph.graphio import (GraphFormatError, load_artifact, read_adjacency_text,
                                read_dimacs, to_adjacency_text, to_dimacs, write_artifact)
from polargraph.plane import load_plane
from polargraph.polarity import build_graph, load_polarity


def test_dimacs_roundtrip(er):
    g = er(4)
    n, edges = read_dimacs(to_dimacs(g))
    assert n == 21
    assert sorted(tuple(sorted(e)) for e in edges) == g.edges()


def test_dimacs_edge_count_checked():
    with pytest.raises(GraphFormatError):
        read_dimacs("p edge 3 2\ne 1 2\n")


def test_adjacency_roundtrip(er):
    g = er(5)
    text = to_adjacency_text(g)
    assert text.splitlines()[0].startswith("0: ")
    assert read_adjacency_text(text) == g.adjacency


def test_artifact_roundtrip(er, tmp_path):
    g = er(7)
    paths = write_artifact(g, tmp_path)
    again = load_artifact(tmp_path)
    assert again.adjacency == g.adjacency
    assert again.absolute == g.absolute
    assert again.descriptor == g.descriptor
    rebuilt = build_graph(load_plane(paths["plane"].read_text()),
                          load_polarity(paths["polarity"].read_text()))
    assert rebuilt.adjacency == g.adjacency


def test_missing_artifact(tmp_path):
    with pytest.raises(GraphFormatError):
        load_artifact(tmp_path / "nope")
