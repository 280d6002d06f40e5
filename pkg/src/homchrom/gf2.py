"""Linear algebra over GF(2) on packed bit-vectors.

A bit-vector is a Python ``int``: bit ``i`` holds coordinate ``i``.  Row
XOR is then a single word-parallel ``^`` on arbitrary-length integers.
"""

from __future__ import annotations

from .errors import ShapeError


def to_bits(vec, n):
    return [(vec >> i) & 1 for i in range(n)]


def from_bits(seq):
    out = 0
    for i, b in enumerate(seq):
        if b & 1:
            out |= 1 << i
    return out


def _set_bits(v):
    while v:
        low = v & -v
        yield low.bit_length() - 1
        v ^= low


class SparseBitMatrix:
    """``nrows x ncols`` matrix over GF(2); ``rows[i]`` packs row ``i``."""

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows, ncols, rows=None):
        if nrows < 0 or ncols < 0:
            raise ShapeError("matrix dimensions must be nonnegative")
        rows = list(rows) if rows is not None else [0] * nrows
        if len(rows) != nrows:
            raise ShapeError(f"expected {nrows} rows, got {len(rows)}")
        limit = 1 << ncols
        for r in rows:
            if r < 0 or r >= limit:
                raise ShapeError("row has bits outside the column range")
        self.nrows = nrows
        self.ncols = ncols
        self.rows = rows

    @classmethod
    def from_columns(cls, nrows, ncols, cols):
        cols = list(cols)
        if len(cols) != ncols:
            raise ShapeError(f"expected {ncols} columns, got {len(cols)}")
        return cls(ncols, nrows, cols).transpose()

    @classmethod
    def from_dense(cls, array):
        array = [list(r) for r in array]
        ncols = len(array[0]) if array else 0
        return cls(len(array), ncols, [from_bits(r) for r in array])

    @classmethod
    def identity(cls, n):
        return cls(n, n, [1 << i for i in range(n)])

    def transpose(self):
        cols = [0] * self.ncols
        for i, r in enumerate(self.rows):
            bit = 1 << i
            for j in _set_bits(r):
                cols[j] |= bit
        return SparseBitMatrix(self.ncols, self.nrows, cols)

    def to_dense(self):
        return [to_bits(r, self.ncols) for r in self.rows]

    def matvec(self, x):
        """``M @ x`` for a packed column vector ``x``."""
        out = 0
        for i, r in enumerate(self.rows):
            if bin(r & x).count("1") & 1:
                out |= 1 << i
        return out

    def matmul(self, other):
        if self.ncols != other.nrows:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        rows = []
        for r in self.rows:
            acc = 0
            for j in _set_bits(r):
                acc ^= other.rows[j]
            rows.append(acc)
        return SparseBitMatrix(self.nrows, other.ncols, rows)

    def is_zero(self):
        return not any(self.rows)

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def nnz(self):
        return sum(bin(r).count("1") for r in self.rows)

    def __repr__(self):
        return f"<SparseBitMatrix {self.nrows}x{self.ncols} nnz={self.nnz()}>"


def _sparse_column_order(rows, ncols):
    """Permutation sending the sparsest column to bit 0."""
    counts = [0] * ncols
    for r in rows:
        for j in _set_bits(r):
            counts[j] += 1
    order = sorted(range(ncols), key=lambda j: (counts[j], j))
    return {j: k for k, j in enumerate(order)}


def rank_gf2(M):
    """Rank by elimination; pivots are taken in the sparsest available column."""
    rows = M.rows
    if not any(rows):
        return 0
    perm = _sparse_column_order(rows, M.ncols)
    pivots = {}
    for r in sorted(rows, key=lambda r: bin(r).count("1")):
        v = 0
        for j in _set_bits(r):
            v |= 1 << perm[j]
        while v:
            low = (v & -v).bit_length()
            p = pivots.get(low)
            if p is None:
                pivots[low] = v
                break
            v ^= p
    return len(pivots)


class SpanReducer:
    """Incrementally maintained span with a tag per stored vector.

    Stored vectors have pairwise distinct lowest bits.  ``reduce(v)``
    clears pivots from the bottom up and stops at the first unpivoted
    bit, so a nonzero residual certifies ``v`` is outside the span.  Tags
    are XORed along, which recovers the combination expressing ``v``.
    """

    def __init__(self):
        self.pivots = {}

    def __len__(self):
        return len(self.pivots)

    def reduce(self, v, tag=0):
        pivots = self.pivots
        while v:
            p = pivots.get((v & -v).bit_length())
            if p is None:
                break
            v ^= p[0]
            tag ^= p[1]
        return v, tag

    def add(self, v, tag=0):
        """Insert ``v``; returns False if it was already in the span."""
        v, tag = self.reduce(v, tag)
        if not v:
            return False
        self.pivots[(v & -v).bit_length()] = (v, tag)
        return True

    def contains(self, v):
        return self.reduce(v)[0] == 0

    def express(self, v):
        """Tag combination for ``v`` if it lies in the span, else None."""
        res, tag = self.reduce(v)
        return tag if res == 0 else None


def solve_gf2(M, b):
    """Some ``x`` with ``M x = b``, or None when the system is inconsistent.

    Rows of ``[M | b]`` are reduced to echelon form (pivot = lowest column
    bit, the right-hand side sits above all columns), then free variables
    are set to zero and pivots solved from the highest column down.
    """
    if isinstance(b, (list, tuple)):
        if len(b) != M.nrows:
            raise ShapeError(f"right-hand side has length {len(b)}, matrix has {M.nrows} rows")
        b = from_bits(b)
    elif b < 0 or b >> M.nrows:
        raise ShapeError("right-hand side has bits beyond the row count")
    aug = 1 << M.ncols
    mask = aug - 1
    pivots = {}
    for i, r in enumerate(M.rows):
        v = r | aug if (b >> i) & 1 else r
        while v & mask:
            low = (v & -v).bit_length()
            p = pivots.get(low)
            if p is None:
                pivots[low] = v
                break
            v ^= p
        else:
            if v:
                return None
    x = 0
    for low in sorted(pivots, reverse=True):
        v = pivots[low]
        rhs = 1 if v & aug else 0
        if bin(v & x).count("1") & 1:
            rhs ^= 1
        if rhs:
            x |= 1 << (low - 1)
    return x


def kernel_basis(M):
    """Basis of the null space of ``M`` as packed vectors over its columns."""
    cols = M.transpose().rows
    red = SpanReducer()
    out = []
    for j, c in enumerate(cols):
        v, tag = red.reduce(c, 1 << j)
        if v:
            red.pivots[(v & -v).bit_length()] = (v, tag)
        else:
            out.append(tag)
    return out
