"""Chain complexes, Betti numbers over GF(2) and integer homology.

GF(2) homology runs directly on prodsimplicial cells: mod 2 the boundary
of a product cell is the plain sum of its codimension-one faces, so no
orientation rule is needed.  Integer homology is only computed on
simplicial complexes, with the usual alternating signs in sorted vertex
order.
"""

from __future__ import annotations

from dataclasses import dataclass

from .complexes import ProdComplex, SimplicialComplex
from .errors import DefectError
from .gf2 import SparseBitMatrix, SpanReducer, rank_gf2
from .smith import IntSparseMatrix, smith_normal_form


class ChainComplexGF2:
    """Cells per dimension plus boundary columns.

    ``cols[d][j]`` packs the boundary of the ``j``-th ``d``-cell as a
    bitmask over the ``(d-1)``-cells (``cols[0]`` is all zeros).
    """

    def __init__(self, sizes, cols, check=True):
        self.sizes = list(sizes)
        self.cols = cols
        if check:
            self.check_square_zero()

    @classmethod
    def from_complex(cls, X, check=True):
        if isinstance(X, ProdComplex):
            sizes = X.counts()
            cols = [[0] * sizes[0]] if sizes else []
            for d in range(1, len(sizes)):
                offset = X.offsets[d - 1]
                col = []
                for eta in X.cells[d]:
                    v = 0
                    for f in X.faces(eta):
                        v ^= 1 << (X.id_of[f] - offset)
                    col.append(v)
                cols.append(col)
        elif isinstance(X, SimplicialComplex):
            sizes = X.counts()
            cols = [[0] * sizes[0]] if sizes else []
            for d in range(1, len(sizes)):
                idx = X.index(d - 1)
                col = []
                for s in X.simplices[d]:
                    v = 0
                    for f in X.faces(s):
                        v ^= 1 << idx[f]
                    col.append(v)
                cols.append(col)
        else:
            raise TypeError(f"cannot build a chain complex from {type(X).__name__}")
        return cls(sizes, cols, check)

    @property
    def dim(self):
        return len(self.sizes) - 1

    def boundary(self, d):
        """``∂_d`` as a ``sizes[d-1] x sizes[d]`` matrix."""
        if d <= 0 or d > self.dim:
            rows = self.sizes[d - 1] if 0 < d <= self.dim + 1 else 0
            cols = self.sizes[d] if 0 <= d <= self.dim else 0
            return SparseBitMatrix(rows, cols)
        return SparseBitMatrix.from_columns(self.sizes[d - 1], self.sizes[d], self.cols[d])

    def coboundary(self, d):
        """``δ: C^d -> C^{d+1}`` as a ``sizes[d+1] x sizes[d]`` matrix."""
        if d + 1 > self.dim or d < 0:
            return SparseBitMatrix(0, self.sizes[d] if 0 <= d <= self.dim else 0)
        return SparseBitMatrix(self.sizes[d + 1], self.sizes[d], self.cols[d + 1])

    def check_square_zero(self):
        for d in range(2, self.dim + 1):
            lower = self.cols[d - 1]
            for j, c in enumerate(self.cols[d]):
                acc = 0
                while c:
                    low = c & -c
                    acc ^= lower[low.bit_length() - 1]
                    c ^= low
                if acc:
                    raise DefectError(f"boundary of boundary nonzero at dimension {d}, cell {j}")

    def ranks(self):
        """``rank ∂_d`` for d = 0..dim (``rank ∂_0 = 0``)."""
        out = [0]
        for d in range(1, self.dim + 1):
            out.append(rank_gf2(SparseBitMatrix(self.sizes[d], self.sizes[d - 1], self.cols[d])))
        return out

    def betti(self):
        r = self.ranks() + [0]
        return tuple(self.sizes[d] - r[d] - r[d + 1] for d in range(self.dim + 1))


def chain_complex_gf2(X, check=True):
    return ChainComplexGF2.from_complex(X, check)


def betti_gf2(X):
    """Unreduced Betti numbers over GF(2), one per dimension 0..dim."""
    if isinstance(X, ChainComplexGF2):
        return X.betti()
    return chain_complex_gf2(X).betti()


def euler_characteristic(X):
    return sum((-1) ** d * c for d, c in enumerate(X.counts()))


@dataclass(frozen=True)
class IntegerHomologyGroup:
    rank: int
    torsion: tuple[int, ...] = ()

    def __str__(self):
        parts = []
        if self.rank:
            parts.append("Z" if self.rank == 1 else f"Z^{self.rank}")
        parts += [f"Z{t}" for t in self.torsion]
        return " + ".join(parts) if parts else "0"


def signed_boundary(Y, d):
    """Integer ``∂_d`` of a simplicial complex (drop vertex i with sign (-1)^i)."""
    idx = Y.index(d - 1)
    entries = {}
    for j, s in enumerate(Y.simplices[d]):
        for i in range(len(s)):
            entries[(idx[s[:i] + s[i + 1:]], j)] = -1 if i % 2 else 1
    return IntSparseMatrix(Y.counts()[d - 1], Y.counts()[d], entries)


def integer_homology(Y):
    """Per dimension: free rank and torsion coefficients of H_d(Y; Z)."""
    sizes = Y.counts()
    factors = [[]] + [smith_normal_form(signed_boundary(Y, d)) for d in range(1, len(sizes))] + [[]]
    out = []
    for d, n in enumerate(sizes):
        rank_here = len(factors[d])
        rank_up = len(factors[d + 1])
        torsion = tuple(f for f in factors[d + 1] if f > 1)
        out.append(IntegerHomologyGroup(n - rank_here - rank_up, torsion))
    return out


class CohomologyGF2:
    """GF(2) cohomology of a simplicial complex with explicit cocycles.

    ``reps[q]`` holds one representative cocycle per basis class of
    ``H^q``, packed over ``Y.simplices[q]``.  ``express(q, z)`` writes a
    cocycle in that basis (as a bitmask over ``reps[q]``).

    Representatives are chosen in a normal form: coboundaries are put in
    echelon form, and every class has exactly one cocycle vanishing on
    the coboundary pivot positions.  Those cocycles are the kernel of
    ``δ_q`` restricted to the non-pivot coordinates.
    """

    def __init__(self, Y):
        self.Y = Y
        self.sizes = Y.counts()
        cc = chain_complex_gf2(Y)
        self._cols = cc.cols
        self.reps = []
        self._cobound = []
        self._pivmask = []
        self._reducers = []
        for q in range(len(self.sizes)):
            self._build_degree(q)

    def _cofaces(self, q):
        """``δ e_σ`` for each q-simplex σ, packed over the (q+1)-simplices."""
        out = [0] * self.sizes[q]
        if q + 1 < len(self.sizes):
            for j, col in enumerate(self._cols[q + 1]):
                bit = 1 << j
                while col:
                    low = col & -col
                    out[low.bit_length() - 1] |= bit
                    col ^= low
        return out

    def _build_degree(self, q):
        cob = SpanReducer()
        if q > 0:
            for v in self._cofaces(q - 1):
                cob.add(v)
        pivmask = 0
        for low in cob.pivots:
            pivmask |= 1 << (low - 1)
        keep = ((1 << self.sizes[q]) - 1) & ~pivmask
        rows = self._cols[q + 1] if q + 1 < len(self.sizes) else []
        pivots = {}
        for r in rows:
            v = r & keep
            while v:
                low = (v & -v).bit_length()
                p = pivots.get(low)
                if p is None:
                    pivots[low] = v
                    break
                v ^= p
        order = sorted(pivots, reverse=True)
        free = keep
        for low in pivots:
            free &= ~(1 << (low - 1))
        reps = []
        red = SpanReducer()
        while free:
            bit = free & -free
            free ^= bit
            x = bit
            for low in order:
                if bin(pivots[low] & x).count("1") & 1:
                    x |= 1 << (low - 1)
            red.add(x, 1 << len(reps))
            reps.append(x)
        self.reps.append(reps)
        self._cobound.append(cob)
        self._pivmask.append(pivmask)
        self._reducers.append(red)

    def betti(self):
        return tuple(len(r) for r in self.reps)

    def is_cocycle(self, q, z):
        if q + 1 >= len(self.sizes):
            return True
        return not any(bin(col & z).count("1") & 1 for col in self._cols[q + 1])

    def normal_form(self, q, z):
        """The cochain ``z + b`` (b a coboundary) that vanishes on the pivots."""
        pivots = self._cobound[q].pivots
        m = z & self._pivmask[q]
        while m:
            low = m & -m
            z ^= pivots[low.bit_length()][0]
            m = z & self._pivmask[q] & ~((low << 1) - 1)
        return z

    def express(self, q, z):
        coeffs = self._reducers[q].express(self.normal_form(q, z))
        if coeffs is None:
            raise DefectError(f"cochain in degree {q} is not a cocycle")
        return coeffs
