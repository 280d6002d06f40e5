"""Hom / Hom_+ cell complexes, Ind and N complexes, subdivision and links.

A cell of ``Hom(T, G)`` is a tuple ``eta`` of bitmasks, one per vertex of
T; ``eta[x]`` is the set of G-vertices in the list of ``x``.  The cell is
the product of the simplices on those lists, so its dimension is
``sum(|eta[x]| - 1)``.  ``Hom_+`` cells allow empty lists and are simplices
of dimension ``sum(|eta[x]|) - 1``.
"""

from __future__ import annotations

import itertools
from collections import defaultdict

from .errors import BudgetError, ParameterError
from .graphs import bits

DEFAULT_BUDGET = 5_000_000
UNIVERSE_WIDTH = 64

HOM = "hom"
HOM_PLUS = "hom_plus"


def popcount(mask):
    return bin(mask).count("1")


def subsets(mask, nonempty=True):
    """All submasks of ``mask`` (the empty one last unless excluded)."""
    sub = mask
    while sub:
        yield sub
        sub = (sub - 1) & mask
    if not nonempty:
        yield 0


def cell_dim(eta, kind=HOM):
    if kind == HOM:
        return sum(popcount(s) for s in eta) - len(eta)
    return sum(popcount(s) for s in eta) - 1


def support(eta):
    """T-vertices carrying a nonempty list."""
    return frozenset(x for x, s in enumerate(eta) if s)


def format_cell(eta):
    """``S0;S1;...`` with each list comma-separated, ``-`` for empty."""
    return ";".join(",".join(map(str, bits(s))) if s else "-" for s in eta)


class ProdComplex:
    """Finite prodsimplicial complex given by its list of cells.

    Cells are stored grouped by dimension and sorted within a dimension;
    ``id_of`` maps a cell to its global position, which orders cells by
    dimension first.
    """

    def __init__(self, cells, kind=HOM, T=None, G=None):
        if kind not in (HOM, HOM_PLUS):
            raise ParameterError(f"unknown complex kind {kind!r}")
        self.kind = kind
        self.T = T
        self.G = G
        by_dim = defaultdict(list)
        for eta in set(cells):
            by_dim[cell_dim(eta, kind)].append(eta)
        top = max(by_dim) if by_dim else -1
        self.cells = [sorted(by_dim.get(d, [])) for d in range(top + 1)]
        self.all_cells = [eta for group in self.cells for eta in group]
        self.id_of = {eta: i for i, eta in enumerate(self.all_cells)}
        self.offsets = list(itertools.accumulate([0] + [len(g) for g in self.cells]))

    @property
    def dim(self):
        return len(self.cells) - 1

    @property
    def is_empty(self):
        return not self.all_cells

    def __len__(self):
        return len(self.all_cells)

    def __contains__(self, eta):
        return eta in self.id_of

    def counts(self):
        return [len(g) for g in self.cells]

    def cell_dim(self, eta):
        return cell_dim(eta, self.kind)

    def index_in_dim(self, eta):
        i = self.id_of[eta]
        return i - self.offsets[self.cell_dim(eta)]

    def faces(self, eta):
        """Codimension-one faces: drop one element from one list."""
        out = []
        least = 2 if self.kind == HOM else 1
        for x, s in enumerate(eta):
            if popcount(s) < least:
                continue
            for v in bits(s):
                face = eta[:x] + (s & ~(1 << v),) + eta[x + 1:]
                if any(face):
                    out.append(face)
        return out

    def lower_faces(self, eta):
        """All proper faces of ``eta``."""
        nonempty = self.kind == HOM
        choices = [list(subsets(s, nonempty=nonempty)) for s in eta]
        out = []
        for face in itertools.product(*choices):
            if face != eta and any(face):
                out.append(face)
        return out

    def is_closed(self):
        return all(f in self.id_of for eta in self.all_cells for f in self.faces(eta))

    def euler_characteristic(self):
        return sum((-1) ** d * c for d, c in enumerate(self.counts()))

    def zero_cells_as_maps(self):
        """0-cells of a Hom complex as vertex maps (tuples)."""
        if self.kind != HOM or self.is_empty:
            return []
        return [tuple(s.bit_length() - 1 for s in eta) for eta in self.cells[0]]

    def dump_lines(self):
        return [f"{self.cell_dim(eta)} | {format_cell(eta)}" for eta in self.all_cells]

    def __repr__(self):
        return f"<ProdComplex {self.kind} dim={self.dim} counts={self.counts()}>"


def _check_universe(G):
    if G.n > UNIVERSE_WIDTH:
        raise ParameterError(f"target graph has {G.n} vertices; at most {UNIVERSE_WIDTH} supported")


def _enumerate_cells(T, G, allow_empty, budget):
    _check_universe(G)
    t = T.n
    later = [bits(T.nbr[x] >> (x + 1) << (x + 1)) for x in range(t)]
    looped = [T.has_loop(x) for x in range(t)]
    common_cache = {}

    def common(mask):
        c = common_cache.get(mask)
        if c is None:
            c = common_cache[mask] = G.common_neighbors(mask)
        return c

    def loop_ok(s):
        # s x s inside E(G): every element looped and pairwise adjacent
        return all(G.nbr[v] & s == s for v in bits(s))

    out = []
    eta = [0] * t

    def rec(x, allowed):
        if x == t:
            if allow_empty and not any(eta):
                return
            out.append(tuple(eta))
            if len(out) > budget:
                raise BudgetError(f"cell budget {budget} exceeded", count=len(out))
            return
        for s in subsets(allowed[x], nonempty=not allow_empty):
            if s and looped[x] and not loop_ok(s):
                continue
            nxt = allowed
            if s and later[x]:
                cn = common(s)
                nxt = list(allowed)
                dead = False
                for z in later[x]:
                    nxt[z] &= cn
                    if not allow_empty and not nxt[z]:
                        dead = True
                        break
                if dead:
                    continue
            eta[x] = s
            rec(x + 1, nxt)
        eta[x] = 0

    rec(0, [G.all_mask] * t)
    return out


def build_hom(T, G, budget=DEFAULT_BUDGET):
    if budget < 1:
        raise ParameterError("budget must be >= 1")
    return ProdComplex(_enumerate_cells(T, G, False, budget), HOM, T, G)


def build_hom_plus(T, G, budget=DEFAULT_BUDGET):
    if budget < 1:
        raise ParameterError("budget must be >= 1")
    return ProdComplex(_enumerate_cells(T, G, True, budget), HOM_PLUS, T, G)


# -- simplicial complexes ------------------------------------------------------------


class SimplicialComplex:
    """Downward-closed family of simplices (sorted vertex-id tuples)."""

    def __init__(self, simplices, payload=None, nvertices=None, closed=False):
        by_dim = defaultdict(set)
        for s in simplices:
            s = tuple(s)
            if list(s) != sorted(set(s)) or not s:
                raise ParameterError(f"simplex {s} is not a strictly increasing nonempty tuple")
            by_dim[len(s) - 1].add(s)
        if not closed:
            for d in range(max(by_dim, default=0), 0, -1):
                lower = by_dim[d - 1]
                for s in by_dim[d]:
                    for i in range(len(s)):
                        lower.add(s[:i] + s[i + 1:])
        top = max(by_dim) if by_dim else -1
        self.simplices = [sorted(by_dim.get(d, ())) for d in range(top + 1)]
        verts = [s[0] for s in self.simplices[0]] if self.simplices else []
        self.nvertices = nvertices if nvertices is not None else (max(verts) + 1 if verts else 0)
        self.payload = payload
        self._index = None

    @classmethod
    def from_facets(cls, facets, payload=None, nvertices=None, budget=DEFAULT_BUDGET):
        """Closure of ``facets`` under taking nonempty subsets."""
        seen = set()
        for f in facets:
            f = tuple(sorted(set(f)))
            for r in range(1, len(f) + 1):
                for s in itertools.combinations(f, r):
                    seen.add(s)
            if len(seen) > budget:
                raise BudgetError(f"simplex budget {budget} exceeded", count=len(seen))
        return cls(seen, payload, nvertices, closed=True)

    @property
    def dim(self):
        return len(self.simplices) - 1

    @property
    def is_empty(self):
        return not self.simplices

    def counts(self):
        return [len(g) for g in self.simplices]

    def __len__(self):
        return sum(self.counts())

    def index(self, d):
        if self._index is None:
            self._index = [{s: i for i, s in enumerate(g)} for g in self.simplices]
        return self._index[d]

    def faces(self, s):
        return [s[:i] + s[i + 1:] for i in range(len(s))] if len(s) > 1 else []

    def euler_characteristic(self):
        return sum((-1) ** d * c for d, c in enumerate(self.counts()))

    def __repr__(self):
        return f"<SimplicialComplex dim={self.dim} counts={self.counts()}>"


def build_independence(G):
    """Ind(G): vertices 0..n-1, simplices the independent sets (looped vertices excluded)."""
    simplices = []
    usable = [v for v in range(G.n) if not G.has_loop(v)]

    def rec(i, chosen, forbidden):
        for j in range(i, len(usable)):
            v = usable[j]
            if (forbidden >> v) & 1:
                continue
            s = chosen + (v,)
            simplices.append(s)
            rec(j + 1, s, forbidden | G.nbr[v])

    rec(0, (), 0)
    return SimplicialComplex(simplices, nvertices=G.n, closed=True)


def build_neighborhood(G, budget=DEFAULT_BUDGET):
    """N(G): generated by the neighbourhoods N(v)."""
    facets = [bits(G.nbr[v]) for v in range(G.n) if G.nbr[v]]
    return SimplicialComplex.from_facets(facets, nvertices=G.n, budget=budget)


# -- subdivision and links --------------------------------------------------------------


def count_chains(X):
    """Number of simplices of ``Bd(X)``, without building it."""
    below = [[X.id_of[f] for f in X.lower_faces(eta)] for eta in X.all_cells]
    ending = [0] * len(below)
    for i, lower in enumerate(below):
        ending[i] = 1 + sum(ending[j] for j in lower)
    return sum(ending)


def barycentric(X, budget=DEFAULT_BUDGET):
    """Order complex of the face poset of ``X``.

    Vertex ``i`` is the cell ``X.all_cells[i]``; since ids increase with
    cell dimension, each simplex's sorted vertex tuple lists its chain from
    the smallest cell up.
    """
    if budget < 1:
        raise ParameterError("budget must be >= 1")
    id_of = X.id_of
    below = [sorted(id_of[f] for f in X.lower_faces(eta)) for eta in X.all_cells]
    ending = [0] * len(below)
    for i, lower in enumerate(below):
        ending[i] = 1 + sum(ending[j] for j in lower)
    total = sum(ending)
    if total > budget:
        raise BudgetError(f"subdivision has {total} simplices (budget {budget})", count=total)
    out = []

    def rec(chain):
        out.append(tuple(reversed(chain)))
        for f in below[chain[-1]]:
            chain.append(f)
            rec(chain)
            chain.pop()

    for c in range(len(X.all_cells)):
        rec([c])
    return SimplicialComplex(out, payload=X.all_cells, nvertices=len(X.all_cells), closed=True)


def cells_above(X, v):
    """Cells of ``X`` having the 0-cell ``v`` as a face (``v`` excluded)."""
    return [eta for eta in X.all_cells
            if eta != v and all(a & b == a for a, b in zip(v, eta))]


def link_of_vertex(X, v, subdivided=False):
    """Link of a 0-cell ``v`` in a Hom complex.

    The link of a vertex in a product of simplices is a join of simplices:
    its vertices are the pairs ``(x, w)`` with ``w`` in a list of a cell
    above ``v`` and ``w`` not the value of ``v`` at ``x``.  Each cell
    ``eta > v`` gives one simplex, so the face poset of the result is the
    poset of cells strictly above ``v``.  With ``subdivided=True`` the
    order complex of that poset is returned instead.
    """
    v = tuple(v)
    if v not in X.id_of or X.cell_dim(v) != 0:
        raise LookupError(f"{format_cell(v)} is not a 0-cell of the complex")
    above = cells_above(X, v)
    if subdivided:
        above.sort(key=lambda e: (X.cell_dim(e), e))
        pos = {e: i for i, e in enumerate(above)}
        chains = []
        for e in above:
            lower = [pos[f] for f in X.lower_faces(e) if f in pos]
            chains.append(lower)
        simplices = []

        def rec(chain):
            simplices.append(tuple(reversed(chain)))
            for f in chains[chain[-1]]:
                chain.append(f)
                rec(chain)
                chain.pop()

        for i in range(len(above)):
            rec([i])
        return SimplicialComplex(simplices, payload=above, nvertices=len(above), closed=True)
    labels = sorted({(x, w) for eta in above for x, s in enumerate(eta) for w in bits(s & ~v[x])})
    pos = {p: i for i, p in enumerate(labels)}
    simplices = [tuple(sorted(pos[(x, w)] for x, s in enumerate(eta) for w in bits(s & ~v[x])))
                 for eta in above]
    return SimplicialComplex(simplices, payload=labels, nvertices=len(labels), closed=True)


def skeleton_determination_check(X):
    """True iff every product cell whose 1-skeleton lies in ``X`` is a cell of ``X``.

    Candidates are grown one dimension at a time: for dimension >= 2 a
    product cell has its 1-skeleton in ``X`` exactly when all of its facets
    do, so once a level passes, the next level's candidates are the
    one-element extensions of cells whose facets are all cells.
    """
    if X.is_empty or X.dim < 1:
        return True
    universe = 0
    for eta in X.all_cells:
        for s in eta:
            universe |= s
    level = set(X.cells[1])
    d = 1
    while level:
        nxt = set()
        for eta in level:
            for x, s in enumerate(eta):
                for w in bits(universe & ~s):
                    cand = eta[:x] + (s | (1 << w),) + eta[x + 1:]
                    if cand in nxt:
                        continue
                    if all(f in X.id_of for f in X.faces(cand)):
                        if cand not in X.id_of:
                            return False
                        nxt.add(cand)
        level = nxt
        d += 1
    return True
