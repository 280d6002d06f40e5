"""Chromatic lower bounds from Stiefel-Whitney heights of Hom complexes.

If the k-th power of the class is nonzero on ``Hom(T, G)`` but zero on
``Hom(T, K_m)`` for a test graph T with an edge-flipping involution, then
``chi(G) >= m + 1``.  Every reference height ``h(Hom(T, K_m))`` used here
is computed, never assumed, so every reported bound is unconditional.
"""

from __future__ import annotations

import hashlib
import json
import logging
import math
import os
from dataclasses import asdict, dataclass, field

from .complexes import DEFAULT_BUDGET, build_hom
from .errors import BudgetError, ParameterError
from .graphs import Graph, complete, cycle
from .homs import chromatic_number_exact
from .swclasses import flips_an_edge, height, induced_action

log = logging.getLogger(__name__)

DEFAULT_M_CAP = 8


@dataclass(frozen=True)
class TestGraphSpec:
    T: Graph
    involution: tuple[int, ...]
    name: str

    def __post_init__(self):
        if not flips_an_edge(self.T, self.involution):
            raise ParameterError(f"involution {self.involution} flips no edge of {self.name}")


def transposition_spec(n):
    """K_n with vertices 0 and 1 swapped."""
    if n < 2:
        raise ParameterError("complete test graph needs n >= 2")
    perm = list(range(n))
    perm[0], perm[1] = 1, 0
    return TestGraphSpec(complete(n), tuple(perm), f"complete:{n}")


def reflection_spec(m):
    """Odd cycle C_m with the reflection i -> -i (fixes 0, flips the middle edge)."""
    if m < 3 or m % 2 == 0:
        raise ParameterError("reflection test graph needs an odd cycle length >= 3")
    return TestGraphSpec(cycle(m), tuple((-i) % m for i in range(m)), f"cycle:{m}+reflection")


def test_graph_spec(name):
    """Parse ``complete:n`` or ``cycle:m`` (optionally suffixed ``+reflection``)."""
    base, _, suffix = name.partition("+")
    kind, _, param = base.partition(":")
    try:
        value = int(param)
    except ValueError:
        raise ParameterError(f"bad test graph {name!r}") from None
    if kind == "complete" and suffix in ("", "flip", "transposition"):
        return transposition_spec(value)
    if kind == "cycle" and suffix in ("", "reflection"):
        return reflection_spec(value)
    raise ParameterError(f"unknown test graph {name!r}")


# -- clique number -----------------------------------------------------------------


def clique_bound(G):
    """Clique number (loops ignored), by Bron-Kerbosch with pivoting."""
    nbr = [m & ~(1 << u) for u, m in enumerate(G.nbr)]
    best = 0

    def rec(size, cand, excl):
        nonlocal best
        if not cand and not excl:
            best = max(best, size)
            return
        if size + bin(cand).count("1") <= best:
            return
        pivot_src = cand | excl
        u = max(_bits(pivot_src), key=lambda w: bin(nbr[w] & cand).count("1"))
        for v in _bits(cand & ~nbr[u]):
            rec(size + 1, cand & nbr[v], excl & nbr[v])
            cand &= ~(1 << v)
            excl |= 1 << v

    rec(0, G.all_mask, 0)
    return best


def _bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


# -- f(m, n) -----------------------------------------------------------------------------


def f_oracle(m, n):
    """Number of spheres in the wedge Hom(K_m, K_n), by the recurrence."""
    if m < 1 or n < 1:
        raise ParameterError("f(m, n) needs m, n >= 1")
    table = {}
    for nn in range(1, n + 1):
        for mm in range(1, min(m, nn) + 1):
            if mm == 1:
                table[mm, nn] = 0
            elif mm == nn:
                table[mm, nn] = math.factorial(nn) - 1
            else:
                table[mm, nn] = mm * table.get((mm - 1, nn - 1), 0) + (mm - 1) * table.get((mm, nn - 1), 0)
    return table.get((m, n), 0)


def f_closed_form(m, n):
    if m > n:
        return 0
    return sum((-1) ** (m + k + 1) * math.comb(m, k + 1) * k ** n for k in range(1, m))


# -- reference-height cache -------------------------------------------------------------------


class HeightCache:
    """Reference heights keyed by ``(test graph name, m)``.

    With a directory, each entry is one JSON file named by a hash of its
    key.  Unreadable or mismatching files are ignored and overwritten.
    """

    def __init__(self, directory=None):
        self.directory = directory
        self.memory = {}
        if directory:
            os.makedirs(directory, exist_ok=True)

    def _path(self, name, m):
        digest = hashlib.sha256(f"{name}|{m}".encode()).hexdigest()[:32]
        return os.path.join(self.directory, f"{digest}.json")

    def get(self, name, m):
        key = (name, m)
        if key in self.memory:
            return self.memory[key]
        if not self.directory:
            return None
        try:
            with open(self._path(name, m)) as fh:
                entry = json.load(fh)
            if entry["test"] != name or entry["m"] != m or not isinstance(entry["height"], int):
                raise ValueError("mismatched cache entry")
        except (OSError, ValueError, KeyError, TypeError):
            return None
        self.memory[key] = entry["height"]
        return entry["height"]

    def put(self, name, m, h):
        self.memory[(name, m)] = h
        if not self.directory:
            return
        path = self._path(name, m)
        tmp = f"{path}.{os.getpid()}.tmp"
        with open(tmp, "w") as fh:
            json.dump({"test": name, "m": m, "height": h}, fh)
        os.replace(tmp, path)


_default_cache = HeightCache()


# -- reports -------------------------------------------------------------------------------


@dataclass
class BoundReport:
    graph: str
    test: str
    h_G: int | None
    refs: list = field(default_factory=list)
    bound: int = 1
    theorem: str = "Thm 7.9"
    clique: int | None = None
    chi_exact: int | None = None
    partial: bool = False
    stage: str | None = None
    may_understate: bool = False

    def to_json(self):
        out = asdict(self)
        out["refs"] = [list(r) for r in self.refs]
        return out


def hom_height(T, gamma_T, G, k_max=None, budget=DEFAULT_BUDGET):
    X = build_hom(T, G, budget)
    if X.is_empty:
        return -1
    action = induced_action(T, G, gamma_T, range(G.n), X)
    return height(X, action, k_max, budget).h


def reference_height(spec, m, budget=DEFAULT_BUDGET, cache=None):
    cache = cache if cache is not None else _default_cache
    h = cache.get(spec.name, m)
    if h is None:
        h = hom_height(spec.T, spec.involution, complete(m), budget=budget)
        cache.put(spec.name, m, h)
    return h


def _graph_id(G):
    return G.name or f"graph(n={G.n},m={G.num_edges})"


def _finish(report, G, chi_cap):
    report.clique = clique_bound(G)
    if chi_cap:
        chi = chromatic_number_exact(G, chi_cap)
        report.chi_exact = chi if isinstance(chi, int) else None
    return report


def chrom_lower_bound(spec, G, m_cap=DEFAULT_M_CAP, budget=DEFAULT_BUDGET, cache=None, chi_cap=None):
    """Bound chi(G) from the height of Hom(T, G) against reference heights.

    References ``h_m`` are computed for m = 1, 2, ... and stop as soon as
    ``h_m >= h_G`` (they are nondecreasing in m, so no larger m can help).
    """
    if G.has_loops:
        raise ParameterError("lower bounds need a loopfree graph")
    report = BoundReport(_graph_id(G), spec.name, None)
    try:
        report.h_G = hom_height(spec.T, spec.involution, G, budget=budget)
    except BudgetError:
        report.partial, report.stage = True, "h_G"
        return _finish(report, G, chi_cap)
    for m in range(1, m_cap + 1):
        try:
            h_m = reference_height(spec, m, budget, cache)
        except BudgetError:
            report.partial, report.stage = True, f"ref m={m}"
            break
        report.refs.append((m, h_m))
        if h_m < report.h_G:
            report.bound = max(report.bound, m + 1)
        else:
            break
    else:
        report.may_understate = True
    return _finish(report, G, chi_cap)


def complete_graph_bound(n, G, budget=DEFAULT_BUDGET, chi_cap=None):
    """``chi(G) >= n + h`` with ``h`` the height of Hom(K_n, G)."""
    if G.has_loops:
        raise ParameterError("lower bounds need a loopfree graph")
    spec = transposition_spec(n)
    report = BoundReport(_graph_id(G), spec.name, None, theorem="Thm 7.10")
    try:
        h = hom_height(spec.T, spec.involution, G, budget=budget)
    except BudgetError:
        report.partial, report.stage = True, "h_G"
        return _finish(report, G, chi_cap)
    report.h_G = h
    report.bound = n + h if h >= 0 else 1
    return _finish(report, G, chi_cap)

