"""Free Z/2-actions on Hom complexes and powers of the first Stiefel-Whitney class.

The class is evaluated on ``Bd(X)/Z2``.  Vertices of ``Bd(X)`` are cells of
``X``, ordered by dimension, so every simplex (a chain of cells) carries a
canonical vertex order that the involution preserves.  Each vertex orbit
is split into an ``A`` and a ``B`` member; the k-th power of the class is
represented by the sum of the orbits of simplices whose ordered vertices
alternate between ``A`` and ``B``.
"""

from __future__ import annotations

import logging
import warnings
from dataclasses import dataclass, field

from .complexes import DEFAULT_BUDGET, ProdComplex, barycentric
from .errors import DefectError, FreenessError, ParameterError
from .gf2 import SparseBitMatrix, solve_gf2

log = logging.getLogger(__name__)

NONTRIVIAL = "nontrivial"
TRIVIAL = "trivial"


def _is_involutive_automorphism(graph, perm):
    perm = tuple(perm)
    return graph.is_automorphism(perm) and all(perm[perm[i]] == i for i in range(len(perm)))


def flips_an_edge(T, gamma):
    return any(T.has_edge(v, gamma[v]) for v in range(T.n))


@dataclass
class Z2Action:
    """Cell-level involution of ``complex`` induced by ``(gamma_T, gamma_G)``."""

    complex: ProdComplex
    gamma_T: tuple[int, ...]
    gamma_G: tuple[int, ...]
    image: list[int]
    free: bool
    fixed_cell: tuple | None = None

    def apply(self, eta):
        return self.complex.all_cells[self.image[self.complex.id_of[eta]]]

    def require_free(self):
        if not self.free:
            raise FreenessError(f"action fixes the cell {self.fixed_cell}", cell=self.fixed_cell)


def _map_set(mask, perm):
    out = 0
    while mask:
        low = mask & -mask
        out |= 1 << perm[low.bit_length() - 1]
        mask ^= low
    return out


def induced_action(T, G, gamma_T, gamma_G, X):
    """The involution ``eta -> gamma_G . eta . gamma_T^{-1}`` on the cells of ``X``."""
    gamma_T = tuple(gamma_T)
    gamma_G = tuple(gamma_G)
    if not _is_involutive_automorphism(T, gamma_T):
        raise ParameterError(f"{gamma_T} is not an automorphism of T of order <= 2")
    if not _is_involutive_automorphism(G, gamma_G):
        raise ParameterError(f"{gamma_G} is not an automorphism of G of order <= 2")
    if not flips_an_edge(T, gamma_T):
        warnings.warn("gamma_T flips no edge of T; freeness is not guaranteed", stacklevel=2)
    image = []
    fixed = None
    for i, eta in enumerate(X.all_cells):
        new = [0] * len(eta)
        for x, s in enumerate(eta):
            new[gamma_T[x]] = _map_set(s, gamma_G)
        new = tuple(new)
        j = X.id_of.get(new)
        if j is None:
            raise DefectError(f"image of cell {eta} is not a cell; action is not cellular")
        image.append(j)
        if j == i and fixed is None:
            fixed = eta
    return Z2Action(X, gamma_T, gamma_G, image, fixed is None, fixed)


class QuotientComplex:
    """``Bd(X)/Z2`` as a complex whose cells are orbits of chains.

    ``reps[d]`` lists one representative chain (the smaller of the pair)
    per orbit of ``d``-simplices; ``label[v]`` is True for ``A`` vertices.
    ``cols[d][j]`` packs the GF(2) boundary of orbit ``j`` over the
    ``(d-1)``-orbits.
    """

    def __init__(self, bd, image, label):
        self.bd = bd
        self.image = image
        self.label = label
        self.orbit_of_vertex = {}
        reps = []
        for group in bd.simplices:
            reps.append([s for s in group if s <= tuple(image[v] for v in s)])
        self.reps = reps
        self.index = [{s: i for i, s in enumerate(g)} for g in reps]
        for i, (v,) in enumerate(reps[0] if reps else []):
            self.orbit_of_vertex[v] = i
            self.orbit_of_vertex[image[v]] = i
        self.cols = [[0] * len(reps[0])] if reps else []
        for d in range(1, len(reps)):
            idx = self.index[d - 1]
            col = []
            for s in reps[d]:
                v = 0
                for i in range(len(s)):
                    f = s[:i] + s[i + 1:]
                    g = tuple(image[w] for w in f)
                    v ^= 1 << idx[min(f, g)]
                col.append(v)
            self.cols.append(col)

    @property
    def dim(self):
        return len(self.reps) - 1

    def counts(self):
        return [len(g) for g in self.reps]

    def coboundary(self, k):
        """``δ: C^{k-1} -> C^k`` as a matrix with one row per k-orbit."""
        return SparseBitMatrix(len(self.reps[k]), len(self.reps[k - 1]), self.cols[k])

    def is_multicolored(self, s):
        lab = self.label
        return all(lab[s[i]] != lab[s[i + 1]] for i in range(len(s) - 1))


def quotient_complex(X, action, budget=DEFAULT_BUDGET, a_side=None):
    """Quotient of the barycentric subdivision by a free action.

    By default the member of each vertex orbit with the smaller cell id is
    put in ``A``.  ``a_side`` (a callable ``(v, w) -> chosen``) overrides the
    choice, which is only used to test that verdicts do not depend on it.
    """
    action.require_free()
    bd = barycentric(X, budget)
    image = action.image
    label = [False] * len(image)
    for v, w in enumerate(image):
        if v < w:
            chosen = a_side(v, w) if a_side is not None else v
            label[chosen] = True
    return QuotientComplex(bd, image, label)


@dataclass
class SWCertificate:
    k: int
    cocycle: int
    verdict: str | None = None
    witness: int | None = None
    num_simplices: int = 0

    def to_json(self):
        return {"k": self.k, "verdict": self.verdict}


def sw_power_cocycle(Q, k):
    """Indicator cochain of the multicolored k-orbits (closedness asserted)."""
    if k < 1:
        raise ParameterError("power must be >= 1")
    if k > Q.dim:
        return SWCertificate(k, 0, TRIVIAL, 0, 0)
    z = 0
    for j, s in enumerate(Q.reps[k]):
        if Q.is_multicolored(s):
            z |= 1 << j
    if k + 1 <= Q.dim:
        for col in Q.cols[k + 1]:
            if bin(col & z).count("1") & 1:
                raise DefectError(f"power-{k} cochain is not a cocycle")
    return SWCertificate(k, z, num_simplices=len(Q.reps[k]))


def decide(Q, cert):
    """Fill in the verdict: trivial iff the cocycle is a coboundary."""
    if cert.verdict is not None:
        return cert
    if cert.cocycle == 0:
        cert.verdict, cert.witness = TRIVIAL, 0
        return cert
    delta = Q.coboundary(cert.k)
    c = solve_gf2(delta, cert.cocycle)
    if c is None:
        cert.verdict = NONTRIVIAL
    else:
        if delta.matvec(c) != cert.cocycle:
            raise DefectError("coboundary witness does not re-verify")
        cert.verdict, cert.witness = TRIVIAL, c
    return cert


@dataclass
class HeightResult:
    """``h`` is the largest k with a nonzero k-th power (-1 for an empty complex)."""

    h: int
    k_max: int
    certificates: list = field(default_factory=list)
    free: bool = True
    capped: bool = False

    def to_json(self):
        return {"height": self.h, "k_max": self.k_max, "free": self.free,
                "certificates": [c.to_json() for c in self.certificates]}


def height_from_quotient(Q, k_max):
    certs = []
    for k in range(1, k_max + 1):
        cert = decide(Q, sw_power_cocycle(Q, k))
        certs.append(cert)
        log.debug("power %d: %s (%d orbits)", k, cert.verdict, cert.num_simplices)
        if cert.verdict == TRIVIAL:
            return HeightResult(k - 1, k_max, certs)
    return HeightResult(k_max, k_max, certs, capped=True)


def height(X, action, k_max=None, budget=DEFAULT_BUDGET, a_side=None):
    if X.is_empty:
        return HeightResult(-1, k_max or 0)
    action.require_free()
    if k_max is None:
        k_max = X.dim + 1
    if k_max < 1:
        raise ParameterError("k_max must be >= 1")
    Q = quotient_complex(X, action, budget, a_side)
    return height_from_quotient(Q, k_max)
