"""Smith normal form of sparse integer matrices.

Unit pivots are eliminated sparsely first (boundary matrices of simplicial
complexes are almost entirely unimodular); whatever is left is reduced
densely with the classical gcd algorithm.  Python integers never overflow.
"""

from __future__ import annotations

from .errors import ShapeError


class IntSparseMatrix:
    """``rows x cols`` integer matrix stored as ``{(i, j): value}``, no zeros."""

    def __init__(self, rows, cols, entries=()):
        self.rows = rows
        self.cols = cols
        self.entries = {}
        for key, val in (entries.items() if isinstance(entries, dict) else entries):
            i, j = key if isinstance(key, tuple) and len(key) == 2 else (key, None)
            if j is None:
                raise ShapeError("entries must be ((row, col), value) pairs")
            if not (0 <= i < rows and 0 <= j < cols):
                raise ShapeError(f"entry ({i},{j}) outside {rows}x{cols}")
            if (i, j) in self.entries:
                raise ShapeError(f"duplicate entry ({i},{j})")
            if val:
                self.entries[(i, j)] = int(val)

    @classmethod
    def from_triples(cls, rows, cols, triples):
        return cls(rows, cols, (((i, j), v) for i, j, v in triples))

    @classmethod
    def from_dense(cls, array):
        array = [list(r) for r in array]
        ncols = len(array[0]) if array else 0
        return cls(len(array), ncols, {(i, j): v for i, r in enumerate(array) for j, v in enumerate(r) if v})

    def to_dense(self):
        out = [[0] * self.cols for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def __repr__(self):
        return f"<IntSparseMatrix {self.rows}x{self.cols} nnz={len(self.entries)}>"


def _eliminate_units(M):
    """Strip unit pivots; return (number stripped, residual row dicts)."""
    rows = {}
    cols = {}
    for (i, j), v in M.entries.items():
        rows.setdefault(i, {})[j] = v
        cols.setdefault(j, set()).add(i)
    units = 0
    progress = True
    while progress:
        progress = False
        for c in sorted(cols, key=lambda c: len(cols[c])):
            if c not in cols:
                continue
            best = None
            for r in cols[c]:
                if abs(rows[r][c]) == 1 and (best is None or len(rows[r]) < len(rows[best])):
                    best = r
            if best is None:
                continue
            prow = rows.pop(best)
            pv = prow[c]
            for r in list(cols[c]):
                if r == best:
                    continue
                row = rows[r]
                factor = row[c] * pv  # pv is its own inverse
                for j, v in prow.items():
                    nv = row.get(j, 0) - factor * v
                    if nv:
                        if j not in row:
                            cols[j].add(r)
                        row[j] = nv
                    else:
                        del row[j]
                        cols[j].discard(r)
                if not row:
                    del rows[r]
            for j in prow:
                cols[j].discard(best)
                if not cols[j]:
                    del cols[j]
            cols.pop(c, None)
            units += 1
            progress = True
    return units, rows


def _dense_snf(a):
    """Invariant factors (nonzero, positive) of a dense integer matrix."""
    m = len(a)
    n = len(a[0]) if m else 0
    out = []
    t = 0
    while t < m and t < n:
        piv = None
        for i in range(t, m):
            for j in range(t, n):
                if a[i][j] and (piv is None or abs(a[i][j]) < abs(a[piv[0]][piv[1]])):
                    piv = (i, j)
        if piv is None:
            break
        i, j = piv
        a[t], a[i] = a[i], a[t]
        for r in a:
            r[t], r[j] = r[j], r[t]
        while True:
            changed = False
            for i in range(t + 1, m):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                    if a[i][t]:
                        a[t], a[i] = a[i], a[t]
                        changed = True
            for j in range(t + 1, n):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    for r in a:
                        r[j] -= q * r[t]
                    if a[t][j]:
                        for r in a:
                            r[t], r[j] = r[j], r[t]
                        changed = True
            if changed:
                continue
            d = a[t][t]
            bad = next((i for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] % d), None)
            if bad is None:
                break
            a[t] = [x + y for x, y in zip(a[t], a[bad])]
        out.append(abs(a[t][t]))
        t += 1
    return out


def smith_normal_form(M):
    """Nonzero invariant factors ``d1 | d2 | ...`` of ``M``, increasing."""
    units, rest = _eliminate_units(M)
    factors = [1] * units
    if rest:
        rlist = sorted(rest)
        clist = sorted({j for row in rest.values() for j in row})
        cpos = {j: k for k, j in enumerate(clist)}
        dense = [[0] * len(clist) for _ in rlist]
        for k, r in enumerate(rlist):
            for j, v in rest[r].items():
                dense[k][cpos[j]] = v
        factors += _dense_snf(dense)
    return sorted(factors)
