"""Search for large triangle-free, absolute-point-free vertex sets.

All strategies work on the triangle hypergraph H: a vertex set is good
exactly when it is independent in H.  Because two triangles of a polarity
graph never share an edge, adding or removing a vertex touches at most
(q+1)/2 hyperedges, which keeps every move O(q).
"""

from __future__ import annotations

import logging
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

from .analysis import TriangleHypergraph, parsons_partition, triangle_hypergraph
from .certificate import Certificate, verify_certificate, verify_vertex_set

log = logging.getLogger("polargraph.search")

STRATEGIES = ("exact", "parsons", "seeded", "local", "greedy")
EXACT_MAX_VERTICES = 40


class SearchError(ValueError):
    pass


@dataclass
class SearchConfig:
    strategy: str = "seeded"
    seed: int = 0
    restarts: int = 1
    budget_sec: float | None = None  # wall clock for the whole run; None = no limit
    max_moves: int = 20000           # local-search moves per restart
    max_nodes: int | None = None     # branch-and-bound node cap
    workers: int = 1
    initial: Certificate | None = None
    target: int | None = None        # stop once a certificate this large is found

    def __post_init__(self):
        if self.strategy not in STRATEGIES:
            raise SearchError(f"unknown strategy {self.strategy!r}; choose from {STRATEGIES}")


@dataclass
class SearchResult:
    certificate: Certificate
    optimal: bool = False
    nodes: int = 0
    restarts_run: int = 0
    elapsed: float = 0.0
    history: list[int] = field(default_factory=list)


def _emit(graph, vertices, generator: str, seed: int) -> Certificate:
    cert = Certificate.for_graph(graph, sorted(vertices), generator, seed)
    verdict = verify_certificate(graph, cert)
    if not verdict:
        raise AssertionError(f"{generator} produced an invalid set: {verdict}")
    return cert


# -- incremental conflict bookkeeping ---------------------------------------------

class _IndexedSet:
    """Set with O(1) add/remove and uniform random choice."""

    def __init__(self):
        self.items: list[int] = []
        self.pos: dict[int, int] = {}

    def add(self, x: int) -> None:
        if x not in self.pos:
            self.pos[x] = len(self.items)
            self.items.append(x)

    def discard(self, x: int) -> None:
        i = self.pos.pop(x, None)
        if i is None:
            return
        last = self.items.pop()
        if i < len(self.items):
            self.items[i] = last
            self.pos[last] = i

    def __len__(self) -> int:
        return len(self.items)

    def __contains__(self, x: int) -> bool:
        return x in self.pos

    def choice(self, rng: random.Random) -> int:
        return self.items[rng.randrange(len(self.items))]


class ConflictState:
    """A vertex set J with per-vertex counts of blocking triangles.

    ``block[v]`` is the number of hyperedges through v whose other two
    vertices are in J.  For v in J it counts violated triangles at v;
    for v outside J it counts the violations that adding v would create.
    """

    def __init__(self, hyper: TriangleHypergraph, n: int):
        self.edges = hyper.edges
        self.tri_of: list[list[int]] = [[] for _ in range(n)]
        for i, e in enumerate(self.edges):
            for v in e:
                self.tri_of[v].append(i)
        self.candidates = sorted(hyper.vertices)
        self.inside = bytearray(n)
        self.cnt = [0] * len(self.edges)
        self.block = [0] * n
        self.violations = 0
        self.size = 0
        self.free = _IndexedSet()      # outside J, block == 0
        self.one = _IndexedSet()       # outside J, block == 1
        for v in self.candidates:
            self.free.add(v)

    def _classify(self, u: int) -> None:
        if self.inside[u]:
            self.free.discard(u)
            self.one.discard(u)
            return
        b = self.block[u]
        (self.free.add if b == 0 else self.free.discard)(u)
        (self.one.add if b == 1 else self.one.discard)(u)

    def add(self, v: int) -> None:
        self.inside[v] = 1
        self.size += 1
        for t in self.tri_of[v]:
            self.cnt[t] += 1
            c = self.cnt[t]
            if c == 3:
                self.violations += 1
            for u in self.edges[t]:
                if u != v and c - self.inside[u] == 2:
                    self.block[u] += 1
                    self._classify(u)
        self._classify(v)

    def remove(self, v: int) -> None:
        self.inside[v] = 0
        self.size -= 1
        for t in self.tri_of[v]:
            c = self.cnt[t]
            if c == 3:
                self.violations -= 1
            for u in self.edges[t]:
                if u != v and c - self.inside[u] == 2:
                    self.block[u] -= 1
                    self._classify(u)
            self.cnt[t] = c - 1
        self._classify(v)

    def members(self) -> list[int]:
        return [v for v in self.candidates if self.inside[v]]

    def load(self, vertices) -> None:
        for v in vertices:
            if not self.inside[v]:
                self.add(v)

    def blocking(self, v: int) -> list[tuple[int, int, int]]:
        return [self.edges[t] for t in self.tri_of[v]
                if self.cnt[t] - self.inside[v] == 2]

    def violated_at(self, v: int) -> list[int]:
        return [t for t in self.tri_of[v] if self.cnt[t] == 3]


# -- exact branch and bound -------------------------------------------------------

def _popcount(x: int) -> int:
    return bin(x).count("1")


def exact_max(hyper: TriangleHypergraph, cfg: SearchConfig | None = None,
              graph=None) -> SearchResult:
    """Maximum independent set of a 3-uniform hypergraph by branch and bound.

    A node keeps the set of still-alive vertices (undecided or fixed in).
    While some hyperedge is fully alive, branch on the undecided vertex
    lying in the most such edges: exclude it first, then fix it in.
    Bound: alive count minus a greedy packing of violated edges that are
    pairwise disjoint on their undecided vertices.
    """
    cfg = cfg or SearchConfig(strategy="exact")
    graph = graph if graph is not None else hyper.graph
    verts = sorted(hyper.vertices)
    if len(verts) > EXACT_MAX_VERTICES:
        raise SearchError(f"exact search limited to {EXACT_MAX_VERTICES} vertices, "
                          f"hypergraph has {len(verts)}")
    idx = {v: i for i, v in enumerate(verts)}
    masks = sorted({sum(1 << idx[v] for v in e) for e in hyper.edges})
    m = len(verts)
    full = (1 << m) - 1
    start = time.monotonic()
    deadline = start + cfg.budget_sec if cfg.budget_sec else None

    # incumbent from a deterministic min-degree greedy
    deg = [sum(1 for e in masks if e >> i & 1) for i in range(m)]
    inc = 0
    for i in sorted(range(m), key=lambda i: (deg[i], i)):
        cand = inc | (1 << i)
        if all(e & cand != e for e in masks if e >> i & 1):
            inc = cand
    best = [inc, _popcount(inc)]
    nodes = 0
    exhausted = True

    class _Stop(Exception):
        pass

    def propagate(alive: int, fixed: int) -> int | None:
        changed = True
        while changed:
            changed = False
            for e in masks:
                if e & alive == e:
                    free = e & ~fixed
                    if free == 0:
                        return None
                    if free & (free - 1) == 0:
                        alive &= ~free
                        changed = True
        return alive

    def rec(alive: int, fixed: int) -> None:
        nonlocal nodes, exhausted
        nodes += 1
        if cfg.max_nodes is not None and nodes > cfg.max_nodes:
            raise _Stop
        if deadline is not None and nodes % 1024 == 0 and time.monotonic() > deadline:
            raise _Stop
        violated = [e for e in masks if e & alive == e]
        size = _popcount(alive)
        if not violated:
            if size > best[1]:
                best[0], best[1] = alive, size
            return
        used = 0
        packing = 0
        for e in violated:
            free = e & ~fixed
            if free & used == 0:
                used |= free
                packing += 1
        if size - packing <= best[1]:
            return
        counts: dict[int, int] = {}
        for e in violated:
            free = e & ~fixed
            while free:
                low = free & -free
                counts[low] = counts.get(low, 0) + 1
                free ^= low
        bit = max(counts, key=lambda b: (counts[b], -b))
        rec(alive & ~bit, fixed)
        nxt = propagate(alive, fixed | bit)
        if nxt is not None:
            rec(nxt, fixed | bit)

    try:
        rec(full, 0)
    except _Stop:
        exhausted = False
    chosen = [verts[i] for i in range(m) if best[0] >> i & 1]
    if graph is not None and hasattr(graph, "descriptor"):
        cert = _emit(graph, chosen, "exact", cfg.seed)
    else:
        if not hyper.is_independent(chosen):
            raise AssertionError("exact search returned a dependent set")
        cert = Certificate("custom", hyper.q, [], "custom", chosen, "exact", cfg.seed)
    return SearchResult(cert, exhausted, nodes, 1, time.monotonic() - start)


# -- constructions ------------------------------------------------------------------

def parsons_construction(graph) -> Certificate:
    """E_q for q = 1 (mod 4), S_q for q = 3 (mod 4), on ER_q with q odd."""
    q = graph.q
    if graph.descriptor.construction != "ER":
        raise SearchError("the Parsons construction applies to ER_q only")
    if q % 2 == 0:
        raise SearchError(f"the Parsons construction needs odd q (got {q})")
    _, s, e = parsons_partition(graph)
    return _emit(graph, e if q % 4 == 1 else s, "parsons", 0)


def dlr_greedy(hyper: TriangleHypergraph, rng: random.Random) -> list[int]:
    """Random-order greedy independent set of the triangle hypergraph."""
    order = sorted(hyper.vertices)
    rng.shuffle(order)
    chosen: set[int] = set()
    inc = hyper.incident
    for v in order:
        if all(not (set(hyper.edges[t]) - {v}) <= chosen for t in inc[v]):
            chosen.add(v)
    return sorted(chosen)


def random_independent_set(graph, size: int, rng: random.Random) -> list[int]:
    """Randomised greedy independent set (in G) of non-absolute vertices."""
    order = [v for v in range(graph.n) if not graph.absolute[v]]
    rng.shuffle(order)
    chosen: list[int] = []
    blocked: set[int] = set()
    for v in order:
        if v not in blocked:
            chosen.append(v)
            blocked.add(v)
            blocked.update(graph.adjacency[v])
            if len(chosen) == size:
                break
    return chosen


def seeded_construction(graph, hyper: TriangleHypergraph, rng: random.Random,
                        state: ConflictState | None = None) -> ConflictState:
    """Pick an independent set I of size q; from each triangle through each
    v in I take one non-absolute endpoint of the opposite edge, choosing the
    endpoint that creates fewer violations; then delete vertices until no
    triangle remains inside."""
    st = state or ConflictState(hyper, graph.n)
    anchors = random_independent_set(graph, graph.q, rng)
    inc = hyper.incident
    for v in anchors:
        for t in inc.get(v, ()):
            a, b = (u for u in hyper.edges[t] if u != v)
            if st.inside[a] or st.inside[b]:
                continue
            pick = min((a, b), key=lambda u: (st.block[u], u))
            st.add(pick)
    repair(st)
    return st


def repair(st: ConflictState) -> None:
    """Drop the vertex in most violated triangles (lowest id on ties) until clean."""
    while st.violations:
        worst = max((v for v in st.members() if st.block[v]),
                    key=lambda v: (st.block[v], -v))
        st.remove(worst)


def local_search(graph, hyper: TriangleHypergraph, init, rng: random.Random,
                 max_moves: int = 20000, deadline: float | None = None,
                 target: int | None = None, tenure: int = 7,
                 stall_limit: int | None = None) -> list[int]:
    """Hill climbing on triangle-free sets with free adds, (1,2) exchanges
    and tabu-guarded (1,1) plateau swaps; when stuck, restart from the best
    set with a few vertices forced in.  Never returns fewer vertices than
    ``init``."""
    init = sorted(init)
    verdict = verify_vertex_set(graph, init)
    if not verdict:
        raise SearchError(f"initial set is not valid: {verdict.reason} {verdict.witness}")
    st = ConflictState(hyper, graph.n)
    st.load(init)
    best = list(init)
    stall_limit = stall_limit or 4 * len(hyper.vertices)
    tabu: dict[int, int] = {}
    stall = 0
    moves = 0
    while moves < max_moves:
        if target is not None and len(best) >= target:
            break
        if deadline is not None and moves % 64 == 0 and time.monotonic() > deadline:
            break
        moves += 1
        if len(st.free):
            st.add(st.free.choice(rng))
        elif not _two_for_one(st, rng):
            if stall >= stall_limit or not len(st.one):
                _perturb(st, best, rng)
                stall = 0
                continue
            v = _pick_swap(st, rng, tabu, moves)
            if v is None:
                _perturb(st, best, rng)
                stall = 0
                continue
            a, b = (u for u in st.blocking(v)[0] if u != v)
            out = a if rng.random() < 0.5 else b
            st.remove(out)
            st.add(v)
            tabu[out] = moves + tenure
        if st.size > len(best):
            best = st.members()
            stall = 0
        else:
            stall += 1
    return best


def _pick_swap(st: ConflictState, rng: random.Random, tabu: dict[int, int],
               now: int) -> int | None:
    for _ in range(8):
        v = st.one.choice(rng)
        if tabu.get(v, 0) <= now:
            return v
    allowed = [v for v in st.one.items if tabu.get(v, 0) <= now]
    return rng.choice(allowed) if allowed else None


def _two_for_one(st: ConflictState, rng: random.Random) -> bool:
    """Find y in J whose removal lets two vertices in; apply it if found."""
    members = st.members()
    rng.shuffle(members)
    for y in members:
        cands = []
        for t in st.tri_of[y]:
            a, b = (u for u in st.edges[t] if u != y)
            for u, w in ((a, b), (b, a)):
                if not st.inside[u] and st.inside[w] and st.block[u] == 1:
                    cands.append(u)
        if len(cands) < 2:
            continue
        st.remove(y)
        added = []
        for u in cands:
            if not st.inside[u] and st.block[u] == 0:
                st.add(u)
                added.append(u)
        if len(added) >= 2:
            return True
        for u in added:
            st.remove(u)
        st.add(y)
    return False


def _perturb(st: ConflictState, best: list[int], rng: random.Random) -> None:
    for v in st.members():
        st.remove(v)
    st.load(best)
    k = 1
    while k < 4 and rng.random() < 0.5:
        k += 1
    outside = [v for v in st.candidates if not st.inside[v]]
    for v in rng.sample(outside, min(k, len(outside))):
        st.add(v)
        for t in st.violated_at(v):
            if st.cnt[t] == 3:
                a, b = (u for u in st.edges[t] if u != v)
                st.remove(a if rng.random() < 0.5 else b)


# -- drivers -------------------------------------------------------------------------

def seeded_heuristic(graph, cfg: SearchConfig, hyper: TriangleHypergraph | None = None,
                     polish: bool = False) -> Certificate:
    """Best verified seeded construction over ``cfg.restarts`` restarts.

    With ``polish`` each restart is followed by ``local_search``.
    """
    result = run_search(graph, replace(cfg, strategy="seeded"), hyper, polish=polish)
    return result.certificate


def _restart(graph, hyper: TriangleHypergraph, cfg: SearchConfig, i: int,
             deadline: float | None, polish: bool) -> list[int]:
    rng = random.Random(cfg.seed + i)
    if cfg.strategy == "greedy":
        return dlr_greedy(hyper, rng)
    if cfg.strategy == "seeded":
        found = seeded_construction(graph, hyper, rng).members()
        if not polish:
            return found
    else:  # local
        found = list(cfg.initial.vertices) if cfg.initial else []
    return local_search(graph, hyper, found, rng, cfg.max_moves, deadline, cfg.target)


def _restart_job(args):
    return _restart(*args)


def run_search(graph, cfg: SearchConfig, hyper: TriangleHypergraph | None = None,
               polish: bool = True) -> SearchResult:
    """Run one strategy and return its best verified certificate.

    Restart i uses seed ``cfg.seed + i``.  Among the largest sets found the
    lexicographically least wins, so the result does not depend on worker
    scheduling (only on budgets, when a wall-clock budget is set).
    """
    start = time.monotonic()
    deadline = start + cfg.budget_sec if cfg.budget_sec else None
    if cfg.strategy == "parsons":
        cert = parsons_construction(graph)
        return SearchResult(cert, False, 0, 1, time.monotonic() - start, [cert.size])
    hyper = hyper or triangle_hypergraph(graph)
    if cfg.initial is not None:
        verdict = verify_certificate(graph, cfg.initial)
        if not verdict:
            raise SearchError(f"initial certificate rejected: {verdict.reason}")
    if cfg.strategy == "exact":
        res = exact_max(hyper, cfg, graph)
        log.info("restart=0 size=%d best=%d elapsed=%.3f", res.certificate.size,
                 res.certificate.size, res.elapsed)
        return res

    best: list[int] | None = None
    history: list[int] = []

    def consider(i: int, found: list[int]) -> None:
        nonlocal best
        found = sorted(found)
        if best is None or (-len(found), found) < (-len(best), best):
            best = found
        history.append(len(found))
        log.info("restart=%d size=%d best=%d elapsed=%.3f", i, len(found), len(best),
                 time.monotonic() - start)

    jobs = range(max(cfg.restarts, 1))
    if cfg.workers > 1:
        with ProcessPoolExecutor(cfg.workers) as pool:
            args = [(graph, hyper, cfg, i, deadline, polish) for i in jobs]
            for i, found in zip(jobs, pool.map(_restart_job, args)):
                consider(i, found)
    else:
        for i in jobs:
            if i > 0 and deadline is not None and time.monotonic() > deadline:
                break
            if i > 0 and cfg.target is not None and best is not None and len(best) >= cfg.target:
                break
            consider(i, _restart(graph, hyper, cfg, i, deadline, polish))
    if cfg.initial is not None and len(cfg.initial.vertices) > len(best):
        best = sorted(cfg.initial.vertices)
    cert = _emit(graph, best, cfg.strategy, cfg.seed)
    return SearchResult(cert, False, 0, len(history), time.monotonic() - start, history)
