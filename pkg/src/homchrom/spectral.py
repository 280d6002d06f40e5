"""First two pages of the support-filtration spectral sequence of Hom₊(T, G).

Filtering Hom₊(T, G) by the size of the support of a cell gives

    E1^{p,q} = ⊕_{|S| = p+1} H^q(Hom(T[S], G); GF(2))

and ``d1`` is the sum, over every one-vertex extension ``S ⊂ S ∪ {x}``, of
the pullback along the restriction ``Hom(T[S ∪ {x}], G) -> Hom(T[S], G)``.
Cohomology is always taken on barycentric subdivisions, where the
restriction is an honest simplicial map.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .complexes import DEFAULT_BUDGET, barycentric, build_hom, build_hom_plus
from .errors import BudgetError, DefectError
from .gf2 import SparseBitMatrix, rank_gf2
from .homology import CohomologyGF2, betti_gf2


@dataclass
class Summand:
    """One subset ``S`` with its complex, subdivision and cohomology."""

    S: tuple[int, ...]
    complex: object
    bd: object
    cohomology: CohomologyGF2

    def rank(self, q):
        reps = self.cohomology.reps
        return len(reps[q]) if q < len(reps) else 0


@dataclass
class Tableau:
    """Ranks ``entries[(p, q)]`` of one page; zero entries are omitted.

    On page 1, ``summands[p]`` lists the subsets of size ``p + 1`` in
    lexicographic order, and the basis of ``E1^{p,q}`` is the concatenation
    of their cocycle bases in that order.
    """

    page: int
    width: int
    entries: dict = field(default_factory=dict)
    summands: list = field(default_factory=list)

    def rank(self, p, q):
        return self.entries.get((p, q), 0)

    @property
    def height(self):
        return max((q for _, q in self.entries), default=-1) + 1

    def euler(self):
        return sum((-1) ** (p + q) * r for (p, q), r in self.entries.items())

    def total_degree_ranks(self):
        """Sum of the ranks along each antidiagonal p + q = n."""
        top = max((p + q for p, q in self.entries), default=-1)
        out = [0] * (top + 1)
        for (p, q), r in self.entries.items():
            out[p + q] += r
        return tuple(out)

    def offsets(self, p, q):
        """Start index of each summand's block inside ``E1^{p,q}``."""
        out, pos = {}, 0
        for s in self.summands[p]:
            out[s.S] = pos
            pos += s.rank(q)
        return out

    def matrix(self):
        """Ranks as a dense list of rows, indexed ``[q][p]``."""
        return [[self.rank(p, q) for p in range(self.width)] for q in range(self.height)]


def e1_tableau(T, G, budget=DEFAULT_BUDGET):
    tab = Tableau(1, T.n)
    for p in range(T.n):
        row = []
        for S in itertools.combinations(range(T.n), p + 1):
            try:
                X = build_hom(T.induced(S), G, budget)
                bd = barycentric(X, budget)
            except BudgetError as exc:
                raise BudgetError(f"subset S={list(S)}: {exc}", count=exc.count, stage=f"S={list(S)}") from exc
            summand = Summand(S, X, bd, CohomologyGF2(bd))
            row.append(summand)
            for q, reps in enumerate(summand.cohomology.reps):
                if reps:
                    tab.entries[(p, q)] = tab.entries.get((p, q), 0) + len(reps)
        tab.summands.append(row)
    return tab


def restriction_vertex_map(big, small):
    """Cell ids of ``small.complex`` hit by restricting each cell of ``big``."""
    pos = [big.S.index(v) for v in small.S]
    id_of = small.complex.id_of
    return [id_of[tuple(eta[i] for i in pos)] for eta in big.complex.all_cells]


def pullback(big, small, f, q, z):
    """Pull the q-cochain ``z`` on ``small.bd`` back along the vertex map ``f``.

    Restriction weakly increases along chains, so the image of a simplex
    is either a simplex with the same number of vertices or degenerate
    (a repeated vertex), and degenerate images contribute nothing.
    """
    if q >= len(small.bd.simplices) or not z:
        return 0
    index = small.bd.index(q)
    out = 0
    for j, s in enumerate(big.bd.simplices[q]):
        image = tuple(f[v] for v in s)
        i = index.get(image)
        if i is not None and (z >> i) & 1:
            out |= 1 << j
    return out


def d1_maps(tab):
    """``d1^{p,q}: E1^{p,q} -> E1^{p+1,q}`` for every p with a target column.

    Returns ``{(p, q): SparseBitMatrix}``.  ``d1 . d1 = 0`` is verified.
    """
    if tab.page != 1:
        raise ValueError("d1 needs a page-1 tableau")
    by_subset = {s.S: s for row in tab.summands for s in row}
    maps = {}
    for p in range(tab.width - 1):
        for q in range(tab.height):
            src, dst = tab.offsets(p, q), tab.offsets(p + 1, q)
            ncols, nrows = tab.rank(p, q), tab.rank(p + 1, q)
            cols = [0] * ncols
            if ncols and nrows:
                for small in tab.summands[p]:
                    if not small.rank(q):
                        continue
                    for x in range(tab.width):
                        if x in small.S:
                            continue
                        big = by_subset[tuple(sorted(small.S + (x,)))]
                        if not big.rank(q):
                            continue
                        f = restriction_vertex_map(big, small)
                        for i, z in enumerate(small.cohomology.reps[q]):
                            pulled = pullback(big, small, f, q, z)
                            coeffs = big.cohomology.express(q, pulled)
                            cols[src[small.S] + i] ^= coeffs << dst[big.S]
            maps[(p, q)] = SparseBitMatrix.from_columns(nrows, ncols, cols)
    check_d1_squared(maps)
    return maps


def check_d1_squared(maps):
    for (p, q), first in maps.items():
        second = maps.get((p + 1, q))
        if second is not None and not second.matmul(first).is_zero():
            raise DefectError(f"d1 . d1 is nonzero starting at ({p},{q})")


def e2_tableau(tab, d1):
    ranks = {key: rank_gf2(M) for key, M in d1.items()}
    out = Tableau(2, tab.width)
    for (p, q), r in tab.entries.items():
        left = ranks.get((p - 1, q), 0)
        value = r - ranks.get((p, q), 0) - left
        if value:
            out.entries[(p, q)] = value
    return out


def collapses_by_sparsity(tab):
    """True when no differential d_r with r >= 2 can be nonzero on this page.

    ``d_r`` goes from ``(p, q)`` to ``(p + r, q - r + 1)``; later pages are
    subquotients, so a zero entry stays zero.
    """
    for (p, q) in tab.entries:
        for r in range(2, tab.width + 1):
            if tab.rank(p + r, q - r + 1):
                return False
    return True


@dataclass
class SpectralReport:
    e1: Tableau
    e2: Tableau
    d1_ranks: dict
    collapsed: bool
    euler_hom_plus: int | None = None
    betti_hom_plus: tuple | None = None

    @property
    def euler_ok(self):
        ok = self.e1.euler() == self.e2.euler()
        if self.euler_hom_plus is not None:
            ok = ok and self.e1.euler() == self.euler_hom_plus
        return ok

    @property
    def agrees_with_betti(self):
        """None when the sequence is not known to collapse at page 2."""
        if not self.collapsed or self.betti_hom_plus is None:
            return None
        return _trim(self.e2.total_degree_ranks()) == _trim(self.betti_hom_plus)

    def to_json(self):
        return {
            "E1": self.e1.matrix(),
            "E2": self.e2.matrix(),
            "d1_ranks": [[p, q, r] for (p, q), r in sorted(self.d1_ranks.items()) if r],
            "d1_squared_zero": True,
            "euler_E1": self.e1.euler(),
            "euler_E2": self.e2.euler(),
            "euler_hom_plus": self.euler_hom_plus,
            "euler_ok": self.euler_ok,
            "collapsed_by_sparsity": self.collapsed,
            "E2_total_degree": list(self.e2.total_degree_ranks()),
            "betti_hom_plus": list(self.betti_hom_plus) if self.betti_hom_plus is not None else None,
            "agrees_with_betti": self.agrees_with_betti,
        }


def _trim(seq):
    seq = list(seq)
    while seq and seq[-1] == 0:
        seq.pop()
    return seq


def spectral_report(T, G, budget=DEFAULT_BUDGET, compare=True):
    """Pages 1 and 2 plus the consistency verdicts.

    With ``compare``, Hom₊(T, G) is also built directly so the Euler sum
    and (after a collapse) the Betti numbers can be checked against it.
    """
    e1 = e1_tableau(T, G, budget)
    d1 = d1_maps(e1)
    e2 = e2_tableau(e1, d1)
    report = SpectralReport(e1, e2, {k: rank_gf2(M) for k, M in d1.items()}, collapses_by_sparsity(e2))
    if compare:
        plus = build_hom_plus(T, G, budget)
        report.euler_hom_plus = plus.euler_characteristic()
        report.betti_hom_plus = betti_gf2(plus)
    return report
