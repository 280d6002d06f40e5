"""Graph homomorphisms: search, counting, colorings, folds, winding numbers."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import ParameterError, ShapeError
from .graphs import Graph, bits, circular, complete, kneser


@dataclass(frozen=True)
class GraphHom:
    source: Graph
    target: Graph
    map: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "map", tuple(self.map))
        if len(self.map) != self.source.n:
            raise ShapeError(f"map has length {len(self.map)}, source has {self.source.n} vertices")
        for x in self.map:
            if not 0 <= x < self.target.n:
                raise ShapeError(f"map value {x} outside target 0..{self.target.n - 1}")


def is_homomorphism(h):
    f = h.map
    return all(h.target.has_edge(f[x], f[y]) for x, y in h.source.edges())


class HomList(list):
    """List of homomorphisms; ``partial`` is True when a limit cut it short."""

    partial = False


def _backtrack(T, G):
    """Yield every homomorphism T -> G as a tuple, in lexicographic order.

    Vertices of T are assigned in index order; the candidates for ``x`` are
    the common neighbours of the images of its already-assigned neighbours.
    """
    t = T.n
    earlier = [T.nbr[x] & ((1 << x) - 1) for x in range(t)]
    looped = [T.has_loop(x) for x in range(t)]
    loopmask = sum(1 << v for v in range(G.n) if G.has_loop(v))
    f = [0] * t

    def rec(x):
        if x == t:
            yield tuple(f)
            return
        cand = G.all_mask
        for y in bits(earlier[x]):
            cand &= G.nbr[f[y]]
        if looped[x]:
            cand &= loopmask
        for v in bits(cand):
            f[x] = v
            yield from rec(x + 1)

    yield from rec(0)


def enumerate_homs(T, G, limit=None):
    if limit is not None and limit < 1:
        raise ParameterError("limit must be >= 1")
    out = HomList()
    for f in _backtrack(T, G):
        if limit is not None and len(out) >= limit:
            out.partial = True
            break
        out.append(GraphHom(T, G, f))
    return out


def count_homs(T, G):
    return sum(1 for _ in _backtrack(T, G))


def find_hom(T, G):
    """First homomorphism in lexicographic order, or None."""
    return next(_backtrack(T, G), None)


# -- chromatic number ------------------------------------------------------------


def _colorable(G, k):
    """Backtracking k-coloring; colors are introduced in order (no relabelled repeats)."""
    order = sorted(range(G.n), key=lambda u: -G.degree(u))
    color = [-1] * G.n

    def rec(i, used):
        if i == len(order):
            return True
        u = order[i]
        taken = {color[v] for v in G.neighbors(u) if color[v] >= 0}
        for c in range(min(used + 1, k)):
            if c not in taken:
                color[u] = c
                if rec(i + 1, max(used, c + 1)):
                    return True
        color[u] = -1
        return False

    return rec(0, 0)


def chromatic_number_exact(G, cap):
    """Least n <= cap with G -> K_n.

    Returns ``math.inf`` when G has a loop, ``None`` when no coloring with
    at most ``cap`` colors exists.
    """
    if cap < 1:
        raise ParameterError("cap must be >= 1")
    if G.has_loops:
        return math.inf
    for k in range(1, cap + 1):
        if _colorable(G, k):
            return k
    return None


# -- folds -----------------------------------------------------------------------


@dataclass(frozen=True)
class FoldTrace:
    original: Graph
    removed: tuple[tuple[int, int], ...]
    result: Graph
    survivor_map: dict

    def replay(self):
        """Re-apply the steps, checking each witness condition; return the final graph."""
        alive = list(range(self.original.n))
        for v, u in self.removed:
            cur = self.original.induced(alive)
            pos = {w: i for i, w in enumerate(alive)}
            if v not in pos or u not in pos or u == v:
                raise ValueError(f"step ({v},{u}) references a removed vertex")
            nv, nu = cur.nbr[pos[v]], cur.nbr[pos[u]]
            if nv & ~nu:
                raise ValueError(f"N({u}) does not contain N({v}) at this step")
            alive.remove(v)
        return self.original.induced(alive)


def find_fold(G):
    """Smallest foldable v with smallest witness u != v, or None."""
    for v in range(G.n):
        for u in range(G.n):
            if u != v and not G.nbr[v] & ~G.nbr[u]:
                return v, u
    return None


def fold_reduce(G):
    alive = list(range(G.n))
    cur = G
    removed = []
    while True:
        step = find_fold(cur)
        if step is None:
            break
        v, u = step
        removed.append((alive[v], alive[u]))
        del alive[v]
        cur = cur.remove_vertex(v)
    return FoldTrace(G, tuple(removed), cur, {w: i for i, w in enumerate(alive)})


# -- winding numbers ----------------------------------------------------------------


def _is_cycle_graph(T):
    m = T.n
    return m >= 3 and T.num_edges == m and all(T.has_edge(i, (i + 1) % m) for i in range(m))


def winding_number(h):
    """Signed number of turns of a homomorphism C_m -> K_3 around the triangle."""
    if not _is_cycle_graph(h.source):
        raise ShapeError("winding number needs a cycle C_m (m >= 3) as source")
    if h.target.n != 3 or h.target != complete(3):
        raise ShapeError("winding number needs K_3 as target")
    f = h.map
    m = len(f)
    total = 0
    for i in range(m):
        step = (f[(i + 1) % m] - f[i]) % 3
        if step == 1:
            total += 1
        elif step == 2:
            total -= 1
        else:
            raise ShapeError("map is not a homomorphism (repeated color on an edge)")
    return total // 3


# -- fractional / circular search ---------------------------------------------------------


@dataclass(frozen=True)
class RationalBound:
    """Least n/k over the searched state graphs admitting G -> state(n, k).

    This is an upper approximation of the fractional/circular chromatic
    number; the search stops at ``cap``.
    """

    kind: str
    value: Fraction
    n: int
    k: int
    witness: GraphHom
    cap: int
    upper_approximation: bool = True


class NoWitnessError(ParameterError):
    pass


def rational_chromatic_search(G, kind, cap):
    if kind not in ("fractional", "circular"):
        raise ParameterError("kind must be 'fractional' or 'circular'")
    if cap < 2:
        raise ParameterError("cap must be >= 2")
    if G.has_loops:
        raise ParameterError("rational chromatic search needs a loopfree graph")
    state = kneser if kind == "fractional" else circular
    best = None
    for n in range(2, cap + 1):
        for k in range(1, n // 2 + 1):
            ratio = Fraction(n, k)
            if best is not None and ratio >= best.value:
                continue
            S = state(n, k)
            f = find_hom(G, S)
            if f is not None:
                best = RationalBound(kind, ratio, n, k, GraphHom(G, S, f), cap)
    if best is None:
        raise NoWitnessError(f"no witness under cap {cap}")
    return best
