import itertools

import pytest
from hypothesis import given, settings, strategies as st

from homchrom.errors import BudgetError, GraphFormatError, ParameterError
from homchrom.graphs import (Graph, apex_plus, compose_graphs, direct_product, disjoint_union,
                             format_graph_text, make_named_graph, parse_graph_text, power,
                             strong_complement)

from helpers import brute_homs


@st.composite
def graphs(draw, max_n=5, loops=True):
    n = draw(st.integers(0, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u if loops else u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
    return Graph.from_edges(n, chosen)


def is_symmetric(G):
    return all(G.has_edge(v, u) for u in range(G.n) for v in range(G.n) if G.has_edge(u, v))


def test_complete_4():
    G = make_named_graph("complete:4")
    assert G.n == 4 and G.num_edges == 6 and not G.has_loops


def test_petersen():
    G = make_named_graph("kneser:5,2")
    assert G.n == 10 and G.num_edges == 15
    assert all(G.degree(v) == 3 for v in range(10))
    assert G.label(0) == "{0,1}"


def test_kneser_vertices_lexicographic():
    G = make_named_graph("kneser:5,2")
    labels = [G.label(v) for v in range(G.n)]
    subsets = ["{" + ",".join(map(str, c)) + "}" for c in itertools.combinations(range(5), 2)]
    assert labels == subsets


def test_circular_7_3_is_a_7_cycle():
    G = make_named_graph("circular:7,3")
    assert G.n == 7 and G.num_edges == 7
    assert all(G.degree(v) == 2 for v in range(7))
    # a single cycle: walking neighbours visits all vertices
    seen, prev, cur = {0}, None, 0
    for _ in range(6):
        nxt = next(w for w in G.neighbors(cur) if w != prev and w not in seen)
        seen.add(nxt)
        prev, cur = cur, nxt
    assert len(seen) == 7


def test_stable_kneser():
    G = make_named_graph("stable-kneser:5,2")
    # stable 2-subsets of the 5-cycle: 5 of them, forming a 5-cycle
    assert G.n == 5 and G.num_edges == 5


@pytest.mark.parametrize("spec, needle", [
    ("kneser:3,2", "n >= 2k"),
    ("cycle:2", "m >= 3"),
    ("complete:x", "non-integer"),
    ("nosuch:3", "unknown"),
    ("kneser:5", "parameter"),
])
def test_bad_parameters_name_the_constraint(spec, needle):
    with pytest.raises(ParameterError, match=needle):
        make_named_graph(spec)


def test_strong_complement_of_k3_is_three_loops():
    H = strong_complement(make_named_graph("complete:3"))
    assert H.n == 3
    assert sorted(H.edges()) == [(0, 0), (1, 1), (2, 2)]


def test_k2_times_k2_is_two_edges():
    K2 = make_named_graph("complete:2")
    P = direct_product(K2, K2)
    assert P.n == 4 and P.num_edges == 2
    assert all(P.degree(v) == 1 for v in range(4))


def test_power_k2_k2():
    K2 = make_named_graph("complete:2")
    P = power(K2, K2)
    assert P.n == 4
    looped = [v for v in range(4) if P.has_loop(v)]
    funcs = list(itertools.product(range(2), repeat=2))
    assert sorted(funcs[v] for v in looped) == sorted(brute_homs(K2, K2))


def test_power_cap():
    K3 = make_named_graph("complete:3")
    with pytest.raises(BudgetError) as info:
        power(K3, make_named_graph("path:5"), cap=100)
    assert info.value.count == 243


def test_apex_plus_indexing():
    G = apex_plus(make_named_graph("path:2"))
    assert G.n == 3 and G.has_loop(2)
    assert all(G.has_edge(2, v) for v in range(3))
    assert not G.has_loop(0)


def test_compose_requires_second_graph():
    with pytest.raises(ParameterError):
        compose_graphs("direct_product", make_named_graph("complete:2"))


@settings(max_examples=60, deadline=None)
@given(graphs(), graphs())
def test_constructions_stay_symmetric(G, H):
    for op in ("disjoint_union", "direct_product"):
        assert is_symmetric(compose_graphs(op, G, H))
    assert is_symmetric(strong_complement(G))
    assert is_symmetric(apex_plus(G))


@settings(max_examples=40, deadline=None)
@given(graphs(max_n=3), graphs(max_n=2))
def test_power_definition(K, H):
    if K.n ** H.n == 0:
        return
    P = power(K, H)
    funcs = list(itertools.product(range(K.n), repeat=H.n))
    assert is_symmetric(P)
    for i, f in enumerate(funcs):
        for j, g in enumerate(funcs):
            want = all(K.has_edge(f[v], g[w]) and K.has_edge(f[w], g[v]) for v, w in H.edges())
            assert P.has_edge(i, j) == want


@settings(max_examples=50, deadline=None)
@given(graphs())
def test_text_round_trip(G):
    assert parse_graph_text(format_graph_text(G)) == G


def test_parse_errors_carry_line_numbers():
    with pytest.raises(GraphFormatError, match="line 3"):
        parse_graph_text("# comment\nn 3\ne 0 7\n")
    with pytest.raises(GraphFormatError, match="line 2"):
        parse_graph_text("n 2\nx 1 2\n")
    with pytest.raises(GraphFormatError):
        parse_graph_text("e 0 1\n")


def test_asymmetric_adjacency_rejected():
    with pytest.raises(ValueError):
        Graph(2, (0b10, 0b00))


def test_disjoint_union_shifts_second_graph():
    G = disjoint_union(make_named_graph("path:2"), make_named_graph("complete:3"))
    assert G.n == 5 and G.has_edge(0, 1) and G.has_edge(2, 4) and not G.has_edge(1, 2)
