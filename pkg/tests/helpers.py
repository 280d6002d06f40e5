"""Independent brute-force oracles and shared fixtures for the test suite.

Nothing here calls into the search or elimination code being tested; the
oracles enumerate definitions directly and are only usable on tiny inputs.
"""

from __future__ import annotations

import itertools
import math
import random
from functools import reduce

import numpy as np
import sympy

from homchrom.graphs import Graph, complete, cycle, kneser, path, star


def all_subsets(n, nonempty=True):
    start = 1 if nonempty else 0
    return [frozenset(c) for r in range(start, n + 1) for c in itertools.combinations(range(n), r)]


def brute_homs(T, G):
    """Every vertex map T -> G that sends edges (and loops) to edges."""
    out = []
    for f in itertools.product(range(G.n), repeat=T.n):
        if all(G.has_edge(f[x], f[y]) for x, y in T.edges()):
            out.append(f)
    return out


def brute_cells(T, G, plus=False):
    """All list assignments satisfying the complete-bipartite condition."""
    subsets = all_subsets(G.n, nonempty=not plus)
    out = []
    for eta in itertools.product(subsets, repeat=T.n):
        if plus and not any(eta):
            continue
        ok = all(G.has_edge(a, b) for x, y in T.edges() for a in eta[x] for b in eta[y])
        if ok:
            out.append(eta)
    return out


def cell_dims(cells, plus=False):
    counts = {}
    for eta in cells:
        d = sum(len(s) for s in eta) - (1 if plus else len(eta))
        counts[d] = counts.get(d, 0) + 1
    return [counts.get(d, 0) for d in range(max(counts, default=-1) + 1)]


def as_sets(eta):
    return tuple(frozenset(v for v in range(s.bit_length()) if (s >> v) & 1) for s in eta)


def same_cells(X, cells):
    """The complex's cells, as tuples of sets, are exactly ``cells`` (no repeats)."""
    mine = [as_sets(eta) for eta in X.all_cells]
    return len(mine) == len(cells) == len(set(cells)) and set(mine) == set(cells)


def cycle_cell_counts_transfer(m, n):
    """Cell counts of Hom(C_m, K_n) by dimension, via a weighted transfer matrix.

    States are nonempty subsets of [n]; consecutive lists must be disjoint
    (that is what complete bipartite means inside K_n).  The weight
    ``t^(|A|-1)`` of each state tracks dimension; the trace of ``(DM)^m``
    sums over closed walks, i.e. over cells.
    """
    t = sympy.Symbol("t")
    states = all_subsets(n)
    k = len(states)
    M = sympy.zeros(k, k)
    for i, A in enumerate(states):
        for j, B in enumerate(states):
            if not A & B:
                M[i, j] = t ** (len(A) - 1)
    poly = sympy.Poly(sympy.expand((M ** m).trace()), t)
    coeffs = poly.all_coeffs()[::-1]
    return [int(c) for c in coeffs]


def dense_rank_gf2(rows, ncols):
    """Rank over GF(2) by textbook dense elimination on a numpy array."""
    a = np.zeros((len(rows), ncols), dtype=np.uint8)
    for i, r in enumerate(rows):
        for j in range(ncols):
            a[i, j] = (r >> j) & 1
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, a.shape[0]) if a[i, col]), None)
        if piv is None:
            continue
        a[[rank, piv]] = a[[piv, rank]]
        for i in range(a.shape[0]):
            if i != rank and a[i, col]:
                a[i] ^= a[rank]
        rank += 1
    return rank


def determinantal_divisors(rows):
    """Invariant factors from gcds of k x k minors (d_k = D_k / D_{k-1})."""
    M = sympy.Matrix(rows)
    m, n = M.shape
    factors = []
    prev = 1
    for k in range(1, min(m, n) + 1):
        g = 0
        for r in itertools.combinations(range(m), k):
            for c in itertools.combinations(range(n), k):
                g = math.gcd(g, int(M.extract(list(r), list(c)).det()))
        if g == 0:
            break
        factors.append(g // prev)
        prev = g
    return factors


def betti_convolve(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def trim(seq):
    seq = list(seq)
    while seq and seq[-1] == 0:
        seq.pop()
    return seq


def sphere_betti(d):
    """Unreduced Betti numbers of S^d (S^0 is two points)."""
    if d == 0:
        return [2]
    return [1] + [0] * (d - 1) + [1]


def wedge_betti(d, count):
    if count == 0:
        return [1]
    if d == 0:
        return [count + 1]
    return [1] + [0] * (d - 1) + [count]


RP2_FACETS = [(0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 1, 5),
              (1, 2, 4), (2, 3, 5), (1, 3, 4), (2, 4, 5), (1, 3, 5)]


def binary_tree(depth=2):
    n = 2 ** (depth + 1) - 1
    return Graph.from_edges(n, [(i, (i - 1) // 2) for i in range(1, n)], name=f"binary-tree:{depth}")


def random_graph(n, p, seed):
    rng = random.Random(seed)
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Graph.from_edges(n, edges, name=f"random:{n},{p},{seed}")


def random_tree(n, seed):
    rng = random.Random(seed)
    return Graph.from_edges(n, [(i, rng.randrange(i)) for i in range(1, n)], name=f"tree:{n},{seed}")


def soundness_corpus():
    """25 loopfree graphs on at most 12 vertices."""
    graphs = [cycle(m) for m in range(3, 9)]
    graphs += [complete(n) for n in range(2, 6)]
    graphs += [kneser(4, 2), kneser(5, 2)]
    graphs += [path(4), path(6), star(4), binary_tree(2)]
    graphs += [random_graph(n, p, seed) for n, p, seed in
               [(6, 0.5, 1), (7, 0.4, 2), (7, 0.5, 3), (8, 0.35, 4), (8, 0.45, 5),
                (9, 0.3, 6), (9, 0.4, 7), (10, 0.3, 8), (12, 0.25, 9)]]
    assert len(graphs) == 25 and all(G.n <= 12 and not G.has_loops for G in graphs)
    return graphs


def product(xs):
    return reduce(lambda a, b: a * b, xs, 1)
