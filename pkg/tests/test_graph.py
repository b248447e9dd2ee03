import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from tdhom.exceptions import InputError
from tdhom.graph import (
    Graph,
    complete_graph,
    connected_components,
    cycle_graph,
    disjoint_union,
    empty_graph,
    is_color_subgraph,
    is_local_isomorphism,
    path_graph,
    quotient_delete,
    radius,
)

WB = ("white", "black")


def test_rejects_loops_duplicates_and_unknown_colours():
    with pytest.raises(InputError):
        Graph.from_edges(2, [(0, 0)])
    with pytest.raises(InputError):
        Graph.from_edges(2, [(0, 1), (1, 0)])
    with pytest.raises(InputError):
        Graph.from_edges(1, [], ["red"], ("white",))
    with pytest.raises(InputError):
        Graph.from_edges(2, [(0, 2)])
    with pytest.raises(InputError):
        Graph(("white", "white"), ("white",), frozenset())


def test_color_subgraph_examples():
    f = Graph.from_edges(2, [(0, 1)], ["white", "black"], WB)
    assert is_color_subgraph(empty_graph(0, WB), f, [])
    assert is_color_subgraph(Graph.from_edges(1, [], ["white"], WB), f, [0])
    assert not is_color_subgraph(Graph.from_edges(1, [], ["black"], WB), f, [0])
    with pytest.raises(InputError):
        is_color_subgraph(Graph.from_edges(1, [], ["white"], WB), f, [5])


def test_quotient_delete_examples():
    k2 = complete_graph(2)
    q = quotient_delete(k2, 0)
    assert q.n == 1 and q.colors == ("white|1",)
    q = quotient_delete(empty_graph(2), 1)
    assert q.colors == ("white|0",)
    q = quotient_delete(path_graph(3), 1)
    assert q.colors == ("white|1", "white|1") and not q.edges
    assert q.palette == ("white|0", "white|1")
    with pytest.raises(InputError):
        quotient_delete(k2, 2)


@given(oracles.graphs(min_n=1, max_n=6, palette=WB), st.data())
def test_quotient_delete_structure(g, data):
    v = data.draw(st.integers(0, g.n - 1))
    q = quotient_delete(g, v)
    rest = [w for w in range(g.n) if w != v]
    assert q.n == g.n - 1
    kept = {(rest.index(a), rest.index(b)) for a, b in g.edges if v not in (a, b)}
    assert set(q.edges) == kept
    for i, w in enumerate(rest):
        assert q.colors[i] == f"{g.colors[w]}|{int(w in g.adj[v])}"


def test_local_isomorphism_examples():
    g = path_graph(3)
    assert is_local_isomorphism(g, g, (0, 1), (0, 1))
    assert not is_local_isomorphism(g, g, (0, 0), (0, 1))
    assert not is_local_isomorphism(g, g, (0, 1), (0, 2))
    with pytest.raises(InputError):
        is_local_isomorphism(g, g, (0,), (0, 1))


@given(oracles.graphs(min_n=1, max_n=4), oracles.graphs(min_n=1, max_n=4), st.data())
def test_local_isomorphism_symmetric_and_permutation_invariant(g, g2, data):
    ell = data.draw(st.integers(0, 3))
    a = tuple(data.draw(st.integers(0, g.n - 1)) for _ in range(ell))
    b = tuple(data.draw(st.integers(0, g2.n - 1)) for _ in range(ell))
    verdict = is_local_isomorphism(g, g2, a, b)
    assert verdict == oracles.local_iso(g, g2, a, b)
    assert verdict == is_local_isomorphism(g2, g, b, a)
    perm = data.draw(st.permutations(range(ell)))
    assert verdict == is_local_isomorphism(g, g2, tuple(a[i] for i in perm), tuple(b[i] for i in perm))


def test_radius_examples():
    assert radius(empty_graph(1)) == 0
    assert radius(path_graph(3)) == 1
    assert radius(cycle_graph(6)) == 3
    assert radius(empty_graph(2)) == math.inf
    assert radius(empty_graph(0)) == math.inf


@given(oracles.graphs(max_n=7))
def test_radius_matches_networkx(g):
    assert radius(g) == oracles.radius(g)


def test_union_and_components():
    assert disjoint_union([]).n == 0
    two = disjoint_union([complete_graph(3), complete_graph(3)])
    comps = connected_components(two)
    assert [c.n for c, _ in comps] == [3, 3]
    assert all(len(c.edges) == 3 for c, _ in comps)
    assert [ids for _, ids in comps] == [(0, 1, 2), (3, 4, 5)]
    back = connected_components(disjoint_union([empty_graph(1), empty_graph(1)]))
    assert [(c.n, ids) for c, ids in back] == [(1, (0,)), (1, (1,))]


@settings(max_examples=50)
@given(oracles.graphs(max_n=6, palette=WB))
def test_components_partition_the_graph(g):
    comps = connected_components(g)
    ids = sorted(v for _, vs in comps for v in vs)
    assert ids == list(range(g.n))
    edges = set()
    for c, vs in comps:
        assert all(c.colors[i] == g.colors[v] for i, v in enumerate(vs))
        edges |= {(min(vs[a], vs[b]), max(vs[a], vs[b])) for a, b in c.edges}
    assert edges == set(g.edges)


def test_relabel_and_induced():
    g = path_graph(3)
    r = g.relabel([1, 0, 2])
    assert set(r.edges) == {(0, 1), (0, 2)}
    with pytest.raises(InputError):
        g.relabel([0, 0, 1])
    sub = g.induced([0, 2])
    assert sub.n == 2 and not sub.edges
