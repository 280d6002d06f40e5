import pytest
from hypothesis import given, settings

from homchrom.complexes import (HOM, ProdComplex, SimplicialComplex, barycentric, build_hom, build_hom_plus,
                                build_independence, build_neighborhood, count_chains, format_cell,
                                link_of_vertex, skeleton_determination_check, support)
from homchrom.errors import BudgetError
from homchrom.graphs import (apex_plus, complete, cycle, direct_product, disjoint_union, loops, path,
                             star, strong_complement)
from homchrom.homs import enumerate_homs

from helpers import same_cells, betti_convolve, brute_cells, cell_dims, cycle_cell_counts_transfer, random_graph
from test_graphs import graphs


def test_hexagon():
    X = build_hom(complete(2), complete(3))
    assert X.counts() == [6, 6]
    assert same_cells(X, brute_cells(complete(2), complete(3)))


def test_hom_k3_k3_is_six_points():
    assert build_hom(complete(3), complete(3)).counts() == [6]


def test_hom_into_unlooped_point_is_empty():
    X = build_hom(complete(2), complete(1))
    assert X.is_empty and X.counts() == [] and X.dim == -1


def test_hom_plus_octahedron():
    X = build_hom_plus(complete(2), complete(3))
    assert X.counts() == [6, 12, 8]


def test_hom_plus_c5_k3_dimension():
    assert build_hom_plus(cycle(5), complete(3)).dim == 5


def test_hom_plus_single_vertex_is_full_simplex():
    X = build_hom_plus(complete(1), complete(4))
    assert X.counts() == [4, 6, 4, 1]


@pytest.mark.parametrize("T, G", [
    (complete(2), complete(4)), (path(3), complete(3)), (cycle(4), complete(3)),
    (cycle(5), complete(3)), (complete(2), cycle(5)), (star(3), complete(3)),
    (complete(2), apex_plus(complete(2))), (path(2), loops(2)),
])
@pytest.mark.parametrize("plus", [False, True])
def test_cells_match_brute_force(T, G, plus):
    X = (build_hom_plus if plus else build_hom)(T, G)
    cells = brute_cells(T, G, plus)
    assert same_cells(X, cells)
    assert X.counts() == cell_dims(cells, plus)


@settings(max_examples=40, deadline=None)
@given(graphs(max_n=3), graphs(max_n=4))
def test_cells_match_brute_force_random(T, G):
    for plus in (False, True):
        X = (build_hom_plus if plus else build_hom)(T, G)
        assert same_cells(X, brute_cells(T, G, plus))


def test_budget_error_carries_count():
    with pytest.raises(BudgetError) as info:
        build_hom(cycle(5), complete(4), budget=10)
    assert info.value.count == 11


@pytest.mark.parametrize("T, G", [(cycle(5), complete(3)), (cycle(4), complete(4)), (path(4), complete(3))])
def test_zero_cells_are_homomorphisms(T, G):
    X = build_hom(T, G)
    assert X.zero_cells_as_maps() == [h.map for h in enumerate_homs(T, G)]


@pytest.mark.parametrize("T, G", [(cycle(5), complete(4)), (complete(2), complete(5)),
                                  (path(3), complete(4)), (cycle(4), complete(3))])
def test_closure(T, G):
    for X in (build_hom(T, G), build_hom_plus(T, G)):
        assert X.is_closed()
        assert all(f in X for eta in X.all_cells for f in X.lower_faces(eta))


@pytest.mark.parametrize("m, n", [(3, 3), (4, 3), (5, 3), (6, 3), (4, 4), (5, 4)])
def test_cycle_counts_transfer_matrix(m, n):
    assert build_hom(cycle(m), complete(n)).counts() == cycle_cell_counts_transfer(m, n)


@pytest.mark.parametrize("G, H, K", [
    (path(2), path(3), complete(3)),
    (cycle(3), complete(2), complete(4)),
    (path(2), cycle(5), complete(3)),
])
def test_coproduct_cell_counts_convolve(G, H, K):
    lhs = build_hom(disjoint_union(G, H), K).counts()
    assert lhs == betti_convolve(build_hom(G, K).counts(), build_hom(H, K).counts())


@pytest.mark.parametrize("T, G", [(complete(2), complete(3)), (cycle(5), complete(3)),
                                  (path(3), complete(4)), (complete(3), complete(4))])
def test_euler_characteristic_survives_subdivision(T, G):
    X = build_hom(T, G)
    assert X.euler_characteristic() == barycentric(X).euler_characteristic()


def test_independence_and_neighborhood_shapes():
    Y = build_independence(cycle(5))
    assert Y.counts() == [5, 5]
    N = build_neighborhood(complete(4))
    assert N.counts() == [4, 6, 4]
    assert build_independence(loops(2)).is_empty


def test_hom_plus_is_independence_complex_of_product():
    """Hom+(T, G) and Ind(T x complement(G)) have the same simplices."""
    for T, G in [(complete(2), complete(3)), (path(3), complete(2)), (cycle(4), complete(3)),
                 (complete(3), random_graph(4, 0.6, 2))]:
        X = build_hom_plus(T, G)
        Y = build_independence(direct_product(T, strong_complement(G)))
        as_vertex_sets = sorted(tuple(sorted(x * G.n + w for x, s in enumerate(eta)
                                             for w in range(G.n) if (s >> w) & 1))
                                for eta in X.all_cells)
        assert as_vertex_sets == sorted(s for group in Y.simplices for s in group)


def test_barycentric_of_hexagon_is_12_gon():
    Y = barycentric(build_hom(complete(2), complete(3)))
    assert Y.counts() == [12, 12]


def test_barycentric_single_vertex():
    X = ProdComplex([(1,)], HOM)
    assert barycentric(X).counts() == [1]


def test_barycentric_of_square():
    square = ProdComplex(_square_cells(), HOM)
    assert square.counts() == [4, 4, 1] and square.is_closed()
    Y = barycentric(square)
    assert Y.counts() == [9, 16, 8]
    assert count_chains(square) == 33


def _square_cells():
    # the product of two 1-simplices: lists drawn from {0}, {1}, {0,1} in each of two slots
    return {(a, b) for a in (1, 2, 3) for b in (1, 2, 3)}


def test_barycentric_chain_order():
    X = build_hom(complete(2), complete(4))
    Y = barycentric(X)
    for group in Y.simplices[1:]:
        for s in group:
            dims = [X.cell_dim(X.all_cells[v]) for v in s]
            assert dims == sorted(set(dims))


def test_barycentric_budget():
    X = build_hom(cycle(5), complete(4))
    with pytest.raises(BudgetError) as info:
        barycentric(X, budget=1000)
    assert info.value.count == count_chains(X)


def test_link_in_hexagon_is_two_points():
    X = build_hom(complete(2), complete(3))
    for v in X.cells[0]:
        assert link_of_vertex(X, v).counts() == [2]


def test_link_of_apex_is_hom_plus():
    T, G = complete(2), complete(3)
    Gplus = apex_plus(G)
    X = build_hom(T, Gplus)
    alpha = (1 << G.n,) * T.n
    link = link_of_vertex(X, alpha)
    plus = build_hom_plus(T, G)
    assert link.counts() == plus.counts()
    labels = link.payload
    as_cells = sorted(tuple(sum(1 << labels[i][1] for i in s if labels[i][0] == x) for x in range(T.n))
                      for group in link.simplices for s in group)
    assert as_cells == sorted(plus.all_cells)
    sub = link_of_vertex(X, alpha, subdivided=True)
    assert sub.counts() == barycentric(plus).counts()


def test_link_missing_vertex():
    X = build_hom(complete(2), complete(3))
    with pytest.raises(LookupError):
        link_of_vertex(X, (1, 1))


def test_link_counts_in_c6_coloring_complex():
    X = build_hom(cycle(6), complete(3))
    v = (1, 2, 1, 2, 1, 2)
    link = link_of_vertex(X, v)
    above = [eta for eta in X.all_cells if eta != v and all(a & b == a for a, b in zip(v, eta))]
    by_dim = [sum(1 for eta in above if X.cell_dim(eta) == d) for d in range(1, X.dim + 1)]
    assert link.counts() == [c for c in by_dim if c]
    # the three lists of 0-positions can each grow by the third color, as can the three 1-positions
    assert link.counts()[0] == 6


def test_support():
    assert support((1, 2, 4)) == frozenset({0, 1, 2})
    assert support((1, 0)) == frozenset({0})
    T, G = cycle(4), complete(3)
    plus = build_hom_plus(T, G)
    full = {eta for eta in plus.all_cells if support(eta) == frozenset(range(T.n))}
    assert full == set(build_hom(T, G).all_cells)
    for eta in plus.all_cells:
        assert all(support(f) <= support(eta) for f in plus.faces(eta))


@pytest.mark.parametrize("T, G", [(cycle(5), complete(3)), (complete(2), complete(4)), (path(3), complete(3)),
                                  (cycle(4), complete(4)), (complete(3), complete(4))])
def test_skeleton_determination_on_hom(T, G):
    assert skeleton_determination_check(build_hom(T, G))
    assert skeleton_determination_check(build_hom_plus(T, G))


def test_skeleton_determination_vacuous():
    X = build_hom(complete(2), complete(3))
    assert skeleton_determination_check(ProdComplex(X.all_cells[1:6], HOM))


def test_skeleton_determination_counterexample():
    square = ProdComplex([c for c in _square_cells() if c != (3, 3)], HOM)
    assert not skeleton_determination_check(square)


def test_format_cell():
    assert format_cell((0b101, 0)) == "0,2;-"


def test_simplicial_closure():
    Y = SimplicialComplex([(0, 1, 2)])
    assert Y.counts() == [3, 3, 1]
