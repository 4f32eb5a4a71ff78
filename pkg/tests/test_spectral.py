import math
import random

import numpy as np
import pytest

from polargraph.analysis import SimpleGraph, eml_check
from polargraph.polarity import LoopedView
from polargraph.spectral import (adjacency_spectrum, clusters, jacobi_eigh, matrix_spectrum,
                                 spectral_gap_check)


def test_jacobi_matches_dense_solver_on_random_matrices():
    rng = np.random.default_rng(0)
    for n in [1, 2, 3, 10, 31]:
        a = rng.normal(size=(n, n))
        a = a + a.T
        vals, vecs, _ = jacobi_eigh(a)
        assert np.allclose(np.sort(vals), np.linalg.eigvalsh(a), atol=1e-10)
        assert np.allclose(vecs.T @ vecs, np.eye(n), atol=1e-10)


def test_jacobi_rejects_nonsymmetric():
    with pytest.raises(ValueError):
        jacobi_eigh(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_er2_spectrum(er):
    spec = adjacency_spectrum(er(2).looped())
    ref = np.linalg.eigvalsh(er(2).adjacency_matrix(loops=True).astype(float))
    assert np.allclose(sorted(spec.eigenvalues), ref, atol=1e-10)
    assert spec.lambda1 == pytest.approx(3, abs=1e-8)
    assert all(abs(abs(x) - math.sqrt(2)) < 1e-8 for x in spec.eigenvalues[1:])


def test_er5_principal_eigenvalue_simple(er):
    spec = adjacency_spectrum(er(5).looped())
    groups = clusters(spec.eigenvalues)
    assert groups[0][0] == pytest.approx(6, abs=1e-8) and groups[0][1] == 1


def test_er9_rest_is_sqrt_q(er):
    spec = adjacency_spectrum(er(9).looped())
    assert spec.lambda_max_rest == pytest.approx(3, abs=1e-8)


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7])
def test_gap_check_er(er, q):
    assert spectral_gap_check(er(q).looped(), q).passed


def test_gap_check_unitary(unitary):
    assert spectral_gap_check(unitary(4).looped(), 4).passed


def test_gap_check_irregular_graph_fails():
    rng = random.Random(5)
    edges = [(i, j) for i in range(12) for j in range(i + 1, 12) if rng.random() < 0.3]
    g = SimpleGraph.from_edges(12, edges + [(0, 1), (0, 2), (0, 3)])
    verdict = spectral_gap_check(LoopedView(g), 3)
    assert not verdict.passed and "regular" in verdict.reasons[0]


def test_trace_identities(er, unitary):
    for g in [er(3), er(8), unitary(4)]:
        spec = adjacency_spectrum(g.looped())
        ev = np.array(spec.eigenvalues)
        assert ev.sum() == pytest.approx(len(g.absolute_vertices), abs=1e-6)
        assert (ev ** 2).sum() == pytest.approx(g.n * (g.q + 1), abs=1e-5)


def test_eml_with_measured_lambda(er):
    g = er(5)
    spec = adjacency_spectrum(g.looped())
    rng = random.Random(11)
    for _ in range(50):
        xs = rng.sample(range(g.n), rng.randrange(g.n + 1))
        ys = rng.sample(range(g.n), rng.randrange(g.n + 1))
        assert eml_check(g.looped(), xs, ys, spec.lambda_max_rest).holds


def test_clusters():
    assert clusters([3.0, 1.0 + 1e-9, 1.0, -1.0]) == [(3.0, 1), (pytest.approx(1.0), 2), (-1.0, 1)]


def test_matrix_spectrum_residual_small():
    a = np.diag([2.0, 1.0]) + np.array([[0, 0.5], [0.5, 0]])
    spec = matrix_spectrum(a)
    assert spec.residual < 1e-12
