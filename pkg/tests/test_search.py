import random

import pytest

from oracles import naive_max_independent
from polargraph.analysis import TriangleHypergraph, independence_bound, triangle_hypergraph
from polargraph.certificate import Certificate, verify_certificate
from polargraph.search import (ConflictState, SearchConfig, SearchError, dlr_greedy, exact_max,
                               local_search, parsons_construction, run_search, seeded_heuristic)


def test_exact_small_table_values(er):
    r3 = exact_max(triangle_hypergraph(er(3)))
    assert (r3.certificate.size, r3.optimal) == (6, True)
    r5 = exact_max(triangle_hypergraph(er(5)))
    assert (r5.certificate.size, r5.optimal) == (16, True)
    assert verify_certificate(er(5), r5.certificate)


def test_exact_on_hypergraph_without_edges():
    h = TriangleHypergraph([1, 4, 7], [])
    assert exact_max(h).certificate.vertices == [1, 4, 7]


@pytest.mark.parametrize("q", [2, 3, 5])
def test_exact_below_bound(er, q):
    assert exact_max(triangle_hypergraph(er(q))).certificate.size <= independence_bound(q).floor


def test_exact_node_cap_reports_non_optimal(er):
    res = exact_max(triangle_hypergraph(er(5)), SearchConfig(strategy="exact", max_nodes=3))
    assert not res.optimal
    assert verify_certificate(er(5), res.certificate)


def test_exact_refuses_large_instances(er):
    with pytest.raises(SearchError):
        exact_max(triangle_hypergraph(er(7)))


def test_exact_matches_enumeration_on_random_subhypergraphs(er):
    rng = random.Random(2024)
    sources = [triangle_hypergraph(er(q)) for q in (5, 7, 9)]
    for _ in range(50):
        h = rng.choice(sources)
        sub = h.induced(rng.sample(h.vertices, rng.randint(6, 18)))
        expected = naive_max_independent(sub.vertices, sub.edges)
        res = exact_max(sub)
        assert res.optimal
        assert res.certificate.size == expected
        assert sub.is_independent(res.certificate.vertices)


@pytest.mark.parametrize("q,size", [(3, 6), (5, 10), (7, 28), (9, 36), (11, 66), (13, 78)])
def test_parsons_sizes(er, q, size):
    cert = parsons_construction(er(q))
    assert cert.size == size
    assert verify_certificate(er(q), cert)


def test_parsons_rejects_even_q_and_unitary(er, unitary):
    with pytest.raises(SearchError):
        parsons_construction(er(4))
    with pytest.raises(SearchError):
        parsons_construction(unitary(9))


def test_conflict_state_counts_match_recount(er):
    g = er(7)
    h = triangle_hypergraph(g)
    st = ConflictState(h, g.n)
    rng = random.Random(1)
    for _ in range(400):
        v = rng.choice(h.vertices)
        (st.remove if st.inside[v] else st.add)(v)
        inside = set(st.members())
        for u in h.vertices:
            expect = sum(1 for e in h.edges if u in e and set(e) - {u} <= inside)
            assert st.block[u] == expect
        assert st.violations == sum(1 for e in h.edges if set(e) <= inside)
        assert set(st.free.items) == {u for u in h.vertices if u not in inside and st.block[u] == 0}


@pytest.mark.parametrize("seed", range(5))
def test_seeded_output_verifies(er, unitary, seed):
    for g in (er(7), er(8), unitary(9)):
        cert = seeded_heuristic(g, SearchConfig(seed=seed))
        assert verify_certificate(g, cert)


def test_seeded_with_polish_reaches_parsons_q7(er):
    cert = seeded_heuristic(er(7), SearchConfig(seed=1), polish=True)
    assert cert.size >= 28


def test_local_search_is_monotone(er):
    g = er(5)
    h = triangle_hypergraph(g)
    e5 = parsons_construction(g).vertices
    assert len(local_search(g, h, e5, random.Random(0), 2000)) >= 10
    opt = exact_max(h).certificate.vertices
    assert len(local_search(g, h, opt, random.Random(0), 2000)) == 16


def test_local_search_from_empty_er3(er):
    g = er(3)
    out = local_search(g, triangle_hypergraph(g), [], random.Random(0), 1000)
    assert len(out) == 6  # regression anchor, seed 0


def test_local_search_rejects_invalid_init(er):
    g = er(5)
    with pytest.raises(SearchError):
        local_search(g, triangle_hypergraph(g), [g.absolute_vertices[0]], random.Random(0))


def test_dlr_greedy(er):
    h = TriangleHypergraph([0, 1, 2], [])
    assert dlr_greedy(h, random.Random(0)) == [0, 1, 2]
    g = er(7)
    h7 = triangle_hypergraph(g)
    sizes = []
    for s in range(100):
        out = dlr_greedy(h7, random.Random(s))
        assert h7.is_independent(out)
        assert verify_certificate(g, Certificate.for_graph(g, out))
        sizes.append(len(out))
    assert max(sizes) >= 29  # measured floor, seeds 0..99


def test_run_search_is_deterministic(er):
    g = er(9)
    cfg = SearchConfig(strategy="seeded", seed=3, restarts=2, max_moves=500)
    a = run_search(g, cfg).certificate.to_json()
    b = run_search(g, cfg).certificate.to_json()
    assert a == b


def test_parallel_matches_serial(er):
    g = er(7)
    cfg = SearchConfig(strategy="seeded", seed=5, restarts=3, max_moves=300)
    serial = run_search(g, cfg).certificate
    parallel = run_search(g, SearchConfig(strategy="seeded", seed=5, restarts=3,
                                          max_moves=300, workers=2)).certificate
    assert serial.to_json() == parallel.to_json()


def test_local_strategy_keeps_initial(er):
    g = er(13)
    init = parsons_construction(g)
    res = run_search(g, SearchConfig(strategy="local", initial=init, max_moves=200))
    assert res.certificate.size >= 78


def test_unknown_strategy():
    with pytest.raises(SearchError):
        SearchConfig(strategy="annealing")


def test_progress_log_lines(er, caplog):
    caplog.set_level("INFO", logger="polargraph.search")
    run_search(er(5), SearchConfig(strategy="greedy", restarts=2))
    lines = [r.getMessage() for r in caplog.records]
    assert len(lines) == 2
    assert lines[0].startswith("restart=0 size=") and " best=" in lines[0] and " elapsed=" in lines[0]
