"""Slow, independent reference computations used only by the tests."""

from itertools import combinations

import numpy as np


def brute_triangles(g):
    """O(n^3) scan over all vertex triples."""
    adj = [set(a) for a in g.adjacency]
    return [t for t in combinations(range(g.n), 3)
            if t[1] in adj[t[0]] and t[2] in adj[t[0]] and t[2] in adj[t[1]]]


def naive_max_independent(vertices, edges):
    """Largest vertex subset containing no edge, by enumerating all 2^m subsets."""
    vertices = sorted(vertices)
    m = len(vertices)
    idx = {v: i for i, v in enumerate(vertices)}
    masks = np.arange(1 << m, dtype=np.int64)
    ok = np.ones(1 << m, dtype=bool)
    for e in edges:
        em = sum(1 << idx[v] for v in e)
        ok &= (masks & em) != em
    counts = np.zeros(1 << m, dtype=np.int64)
    for i in range(m):
        counts += (masks >> i) & 1
    return int(counts[ok].max())


def poly_mulmod(a, b, modulus, p):
    """Schoolbook product of coefficient lists, reduced by a monic modulus."""
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            prod[i + j] = (prod[i + j] + x * y) % p
    k = len(modulus) - 1
    for d in range(len(prod) - 1, k - 1, -1):
        c = prod[d]
        if c:
            for i in range(k + 1):
                prod[d - k + i] = (prod[d - k + i] - c * modulus[i]) % p
    out = prod[:k] + [0] * (k - len(prod[:k]))
    return out
