"""Finite graphs with loops, named constructors and graph algebra.

Vertices are the integers ``0..n-1``.  Adjacency is stored as one bitmask
per vertex (bit ``v`` of ``nbr[u]`` is set iff ``(u, v)`` is an edge), so
neighbourhood intersections are single ``&`` operations.  Loops are edges
``(u, u)``.  Graphs are immutable.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import BudgetError, GraphFormatError, ParameterError

DEFAULT_POWER_CAP = 4096


def bits(mask):
    """Indices of the set bits of ``mask``, increasing."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


@dataclass(frozen=True)
class Graph:
    n: int
    nbr: tuple[int, ...]
    labels: tuple[str, ...] | None = field(default=None, compare=False)
    name: str | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.n < 0:
            raise ParameterError("vertex count must be nonnegative")
        if len(self.nbr) != self.n:
            raise ParameterError("one adjacency mask per vertex required")
        full = (1 << self.n) - 1
        for u, mask in enumerate(self.nbr):
            if mask & ~full:
                raise ParameterError(f"vertex {u} has an edge to a vertex >= n")
            for v in bits(mask):
                if not (self.nbr[v] >> u) & 1:
                    raise ParameterError(f"edge ({u},{v}) present without ({v},{u})")
        if self.labels is not None and len(self.labels) != self.n:
            raise ParameterError("one label per vertex required")

    @classmethod
    def from_edges(cls, n, edges, labels=None, name=None):
        """Build a graph from unordered edges; ``(u, u)`` is a loop."""
        nbr = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ParameterError(f"edge ({u},{v}) references a vertex outside 0..{n - 1}")
            nbr[u] |= 1 << v
            nbr[v] |= 1 << u
        return cls(n, tuple(nbr), tuple(labels) if labels is not None else None, name)

    # -- queries ---------------------------------------------------------

    def has_edge(self, u, v):
        return bool((self.nbr[u] >> v) & 1)

    def neighbors(self, u):
        return bits(self.nbr[u])

    def has_loop(self, u):
        return self.has_edge(u, u)

    @property
    def has_loops(self):
        return any(self.has_loop(u) for u in range(self.n))

    @property
    def all_mask(self):
        return (1 << self.n) - 1

    def edges(self):
        """Unordered edges ``(u, v)`` with ``u <= v``, sorted."""
        return [(u, v) for u in range(self.n) for v in bits(self.nbr[u]) if u <= v]

    @property
    def num_edges(self):
        return len(self.edges())

    def degree(self, u):
        return bin(self.nbr[u]).count("1")

    def label(self, u):
        return self.labels[u] if self.labels is not None else str(u)

    def common_neighbors(self, mask):
        """Vertices adjacent to every vertex in ``mask`` (all vertices if empty)."""
        out = self.all_mask
        for u in bits(mask):
            out &= self.nbr[u]
        return out

    def induced(self, vertices):
        """Induced subgraph on ``vertices``, renumbered in increasing order."""
        keep = sorted(set(vertices))
        pos = {v: i for i, v in enumerate(keep)}
        edges = [(pos[u], pos[v]) for u, v in self.edges() if u in pos and v in pos]
        labels = [self.label(v) for v in keep] if self.labels is not None else None
        return Graph.from_edges(len(keep), edges, labels)

    def remove_vertex(self, v):
        return self.induced(u for u in range(self.n) if u != v)

    def is_automorphism(self, perm):
        if sorted(perm) != list(range(self.n)):
            return False
        return all(self.has_edge(perm[u], perm[v]) for u, v in self.edges())

    def __repr__(self):
        tag = self.name or "Graph"
        return f"<{tag}: n={self.n}, m={self.num_edges}>"


# -- named generators ------------------------------------------------------


def complete(n):
    if n < 1:
        raise ParameterError("complete:n requires n >= 1")
    return Graph.from_edges(n, itertools.combinations(range(n), 2), name=f"complete:{n}")


def cycle(m):
    if m < 3:
        raise ParameterError("cycle:m requires m >= 3")
    return Graph.from_edges(m, [(i, (i + 1) % m) for i in range(m)], name=f"cycle:{m}")


def path(n):
    """The string L_n: a tree on n vertices without branching."""
    if n < 1:
        raise ParameterError("path:n requires n >= 1")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)], name=f"path:{n}")


def star(n):
    """K_{1,n}: centre 0 joined to leaves 1..n."""
    if n < 1:
        raise ParameterError("star:n requires n >= 1")
    return Graph.from_edges(n + 1, [(0, i) for i in range(1, n + 1)], name=f"star:{n}")


def empty(n):
    if n < 0:
        raise ParameterError("empty:n requires n >= 0")
    return Graph.from_edges(n, [], name=f"empty:{n}")


def loops(n):
    """n isolated looped vertices (the strong complement of K_n)."""
    if n < 1:
        raise ParameterError("loops:n requires n >= 1")
    return Graph.from_edges(n, [(i, i) for i in range(n)], name=f"loops:{n}")


def _subset_label(s):
    return "{" + ",".join(str(i) for i in s) + "}"


def kneser(n, k):
    if k < 1 or n < 2 * k:
        raise ParameterError("kneser:n,k requires n >= 2k >= 2")
    verts = list(itertools.combinations(range(n), k))
    masks = [sum(1 << i for i in s) for s in verts]
    edges = [(a, b) for a, b in itertools.combinations(range(len(verts)), 2) if not masks[a] & masks[b]]
    return Graph.from_edges(len(verts), edges, [_subset_label(s) for s in verts], name=f"kneser:{n},{k}")


def stable_kneser(n, k):
    if k < 1 or n < 2 * k:
        raise ParameterError("stable-kneser:n,k requires n >= 2k >= 2")
    verts = [s for s in itertools.combinations(range(n), k)
             if not any((i + 1) % n in s for i in s)]
    masks = [sum(1 << i for i in s) for s in verts]
    edges = [(a, b) for a, b in itertools.combinations(range(len(verts)), 2) if not masks[a] & masks[b]]
    return Graph.from_edges(len(verts), edges, [_subset_label(s) for s in verts],
                            name=f"stable-kneser:{n},{k}")


def circular(n, k):
    """R_{n,k}: vertices 0..n-1, x ~ y iff k <= |x - y| <= n - k."""
    if k < 1 or n < 2 * k:
        raise ParameterError("circular:n,k requires n >= 2k >= 2")
    edges = [(x, y) for x, y in itertools.combinations(range(n), 2) if k <= y - x <= n - k]
    return Graph.from_edges(n, edges, name=f"circular:{n},{k}")


GENERATORS = {
    "complete": (complete, 1),
    "cycle": (cycle, 1),
    "path": (path, 1),
    "star": (star, 1),
    "empty": (empty, 1),
    "loops": (loops, 1),
    "kneser": (kneser, 2),
    "stable-kneser": (stable_kneser, 2),
    "circular": (circular, 2),
}


def make_named_graph(spec):
    """Build a graph from ``name:p1,p2,...`` (e.g. ``kneser:5,2``)."""
    name, _, params = spec.partition(":")
    if name not in GENERATORS:
        raise ParameterError(f"unknown graph generator {name!r}; known: {', '.join(sorted(GENERATORS))}")
    func, arity = GENERATORS[name]
    try:
        args = [int(p) for p in params.split(",")] if params else []
    except ValueError:
        raise ParameterError(f"non-integer parameter in {spec!r}") from None
    if len(args) != arity:
        raise ParameterError(f"{name} takes {arity} parameter(s), got {len(args)}")
    return func(*args)


# -- graph algebra -----------------------------------------------------------


def disjoint_union(G, H):
    """G's vertices keep their indices; H's are shifted by G.n."""
    edges = G.edges() + [(u + G.n, v + G.n) for u, v in H.edges()]
    return Graph.from_edges(G.n + H.n, edges)


def direct_product(G, H):
    """Vertex (x, y) gets index ``x * H.n + y``."""
    edges = []
    for x, xp in G.edges():
        for y, yp in H.edges():
            edges.append((x * H.n + y, xp * H.n + yp))
            edges.append((x * H.n + yp, xp * H.n + y))
    return Graph.from_edges(G.n * H.n, edges)


def strong_complement(G):
    full = G.all_mask
    return Graph(G.n, tuple(full & ~m for m in G.nbr))


def apex_plus(G):
    """G_+: add a looped apex (index G.n) adjacent to every vertex."""
    a = G.n
    return Graph.from_edges(G.n + 1, G.edges() + [(x, a) for x in range(G.n + 1)])


def power(K, H, cap=DEFAULT_POWER_CAP):
    """The power graph K^H.

    Vertices are functions V(H) -> V(K), written as tuples
    ``(f(0), ..., f(h-1))`` and indexed in row-major lexicographic order.
    ``(f, g)`` is an edge iff ``(f(v), g(w))`` is an edge of K for every
    edge ``(v, w)`` of H.
    """
    size = K.n ** H.n
    if size > cap:
        raise BudgetError(f"power graph would have {size} vertices (cap {cap})", count=size)
    funcs = list(itertools.product(range(K.n), repeat=H.n))
    harcs = [(v, w) for v, w in H.edges()] + [(w, v) for v, w in H.edges() if v != w]
    nbr = []
    for f in funcs:
        mask = 0
        for j, g in enumerate(funcs):
            if all(K.has_edge(f[v], g[w]) for v, w in harcs):
                mask |= 1 << j
        nbr.append(mask)
    labels = ["(" + ",".join(map(str, f)) + ")" for f in funcs]
    return Graph(size, tuple(nbr), tuple(labels))


COMPOSE_OPS = {
    "disjoint_union": disjoint_union,
    "direct_product": direct_product,
    "strong_complement": strong_complement,
    "apex_plus": apex_plus,
    "power": power,
}


def compose_graphs(op, G, H=None, **kwargs):
    if op not in COMPOSE_OPS:
        raise ParameterError(f"unknown graph operation {op!r}")
    if op in ("disjoint_union", "direct_product", "power"):
        if H is None:
            raise ParameterError(f"{op} needs a second graph")
        return COMPOSE_OPS[op](G, H, **kwargs)
    return COMPOSE_OPS[op](G)


# -- text format ---------------------------------------------------------------


def parse_graph_text(text):
    """Parse ``n <count>`` / ``e <u> <v>`` lines; ``#`` starts a comment line."""
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        try:
            if parts[0] == "n" and len(parts) == 2:
                if n is not None:
                    raise GraphFormatError("duplicate 'n' line", lineno)
                n = int(parts[1])
                if n < 0:
                    raise GraphFormatError("vertex count must be nonnegative", lineno)
            elif parts[0] == "e" and len(parts) == 3:
                if n is None:
                    raise GraphFormatError("edge before 'n' line", lineno)
                u, v = int(parts[1]), int(parts[2])
                if not (0 <= u < n and 0 <= v < n):
                    raise GraphFormatError(f"endpoint out of range 0..{n - 1}", lineno)
                edges.append((u, v))
            else:
                raise GraphFormatError(f"cannot parse {line!r}", lineno)
        except ValueError as exc:
            if isinstance(exc, GraphFormatError):
                raise
            raise GraphFormatError(f"non-integer field in {line!r}", lineno) from None
    if n is None:
        raise GraphFormatError("missing 'n <count>' line")
    return Graph.from_edges(n, edges)


def format_graph_text(G):
    lines = [f"n {G.n}"] + [f"e {u} {v}" for u, v in G.edges()]
    return "\n".join(lines) + "\n"
