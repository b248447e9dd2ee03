import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from tdhom.decomposition import Decomposed, RootedForest, height, is_elimination_tree, tree_depth
from tdhom.enumeration import (
    canonical_form,
    canonical_key,
    enum_conn_tdk,
    enum_conn_tdk_keyed,
    enum_decomposed,
    enum_elim_forests,
    enum_elim_trees,
    enum_graphs,
    enum_supergraphs_respecting,
)
from tdhom.exceptions import CapacityError
from tdhom.graph import Graph, complete_graph, empty_graph, is_connected, path_graph

WB = ("white", "black")


def _relabel(g: Graph, rng: random.Random) -> Graph:
    order = list(range(g.n))
    rng.shuffle(order)
    return g.relabel(order)


@settings(max_examples=60)
@given(oracles.graphs(max_n=7, palette=WB), st.randoms(use_true_random=False))
def test_key_invariant_under_relabelling(g, rng):
    assert canonical_key(g) == canonical_key(_relabel(g, rng))


def test_key_examples():
    assert canonical_key(complete_graph(3)) != canonical_key(path_graph(3))
    a = Graph.from_edges(2, [(0, 1)], ["white", "white"], WB)
    b = Graph.from_edges(2, [(0, 1)], ["white", "black"], WB)
    assert canonical_key(a) != canonical_key(b)
    with pytest.raises(CapacityError):
        canonical_key(empty_graph(9))


def test_key_separates_exactly_the_isomorphism_classes():
    graphs = [g for g in oracles_graphs(4, WB)]
    for g, h in combinations(graphs, 2):
        assert (canonical_key(g) == canonical_key(h)) == oracles.isomorphic(g, h)


def oracles_graphs(n, palette):
    """All labelled graphs of order n (small n), sampled deterministically."""
    rng = random.Random(n)
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    out = []
    for _ in range(60):
        colors = [rng.choice(palette) for _ in range(n)]
        edges = [e for e in pairs if rng.random() < 0.5]
        out.append(Graph.from_edges(n, edges, colors, palette))
    return out


def test_canonical_representative_has_same_key():
    g = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)], ["white", "black", "white", "white"], WB)
    key, rep = canonical_form(g)
    assert canonical_key(rep) == key and oracles.isomorphic(g, rep)


def test_decomposed_keys_respect_tree_order():
    g = complete_graph(2)
    a = Decomposed.from_parents(g, (None, 0))
    b = Decomposed.from_parents(g, (1, None))
    assert canonical_key(a) == canonical_key(b)
    p3 = path_graph(3)
    mid = Decomposed.from_parents(p3, (1, None, 1))
    chain = Decomposed.from_parents(p3, (None, 0, 1))
    assert canonical_key(mid) != canonical_key(chain)


@pytest.mark.parametrize("n,count", [(0, 1), (1, 2), (2, 4), (3, 8), (4, 19), (5, 53)])
def test_enum_graphs_counts(n, count):
    assert len(list(enum_graphs(n))) == count


def test_enum_graphs_two_colours():
    # 1 + 2 + 6 + 20 graphs with at most 3 vertices in two colours
    assert len(list(enum_graphs(3, WB))) == 29


def test_enum_graphs_is_complete_and_duplicate_free():
    listed = [g for g in enum_graphs(4, WB) if g.n == 4]
    keys = [canonical_key(g) for g in listed]
    assert len(set(keys)) == len(keys)
    for g in oracles_graphs(4, WB):
        assert canonical_key(g) in set(keys)


def test_enum_conn_tdk_examples():
    assert [g.n for g in enum_conn_tdk(1, 5)] == [1]
    got = {canonical_key(g) for g in enum_conn_tdk(2, 3)}
    assert got == {canonical_key(empty_graph(1)), canonical_key(complete_graph(2)), canonical_key(path_graph(3))}
    star3 = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])
    got4 = {canonical_key(g) for g in enum_conn_tdk(2, 4)}
    assert got4 == got | {canonical_key(star3)}


def test_enum_conn_tdk_matches_filter_and_nests():
    for k in (1, 2, 3):
        expected = {canonical_key(g) for g in enum_graphs(6) if g.n and is_connected(g) and tree_depth(g)[0] <= k}
        got = [key for key, _ in enum_conn_tdk_keyed(k, 6)]
        assert len(got) == len(set(got)) and set(got) == expected
    assert {k for k, _ in enum_conn_tdk_keyed(2, 6)} <= {k for k, _ in enum_conn_tdk_keyed(3, 6)}


def test_enum_conn_tdk_order_seven_counts():
    assert [len(list(enum_conn_tdk(k, 7))) for k in (1, 2, 3)] == [1, 7, 109]


def test_enum_decomposed_examples():
    assert len(list(enum_decomposed(1, 1))) == 1
    assert len(list(enum_decomposed(1, 2))) == 1
    assert len(list(enum_decomposed(1, 2, WB))) == 2
    # the single vertex plus the two-vertex chain with and without its edge
    two = list(enum_decomposed(2, 2))
    assert sorted((d.n, len(d.graph.edges)) for d in two) == [(1, 0), (2, 0), (2, 1)]


def _brute_decomposed_keys(k, n, palette):
    keys = set()
    for m in range(1, n + 1):
        for parent in oracles.parent_arrays(m):
            if sum(p is None for p in parent) != 1 or oracles.forest_height(parent) > k:
                continue
            pairs = oracles.comparable_pairs(parent)
            for bits in range(1 << len(pairs)):
                edges = [e for i, e in enumerate(pairs) if bits >> i & 1]
                for colors in _colourings(m, palette):
                    g = Graph.from_edges(m, edges, colors, palette)
                    keys.add(canonical_key(Decomposed.from_parents(g, parent)))
    return keys


def _colourings(m, palette):
    if m == 0:
        yield []
        return
    for rest in _colourings(m - 1, palette):
        for c in palette:
            yield rest + [c]


@pytest.mark.parametrize("k,n,palette", [(2, 4, ("white",)), (3, 4, ("white",)), (2, 3, WB)])
def test_enum_decomposed_matches_brute_force(k, n, palette):
    listed = list(enum_decomposed(k, n, palette))
    keys = [canonical_key(d) for d in listed]
    assert len(keys) == len(set(keys))
    assert set(keys) == _brute_decomposed_keys(k, n, palette)
    for d in listed:
        assert is_elimination_tree(d.graph, d.tree) and d.height <= k


def test_supergraphs_examples():
    no_edge = Decomposed.from_parents(empty_graph(2), (None, 0))
    sups = list(enum_supergraphs_respecting(no_edge))
    assert [len(g.edges) for g in sups] == [0, 1]
    full = Decomposed.from_parents(complete_graph(2), (None, 0))
    assert len(list(enum_supergraphs_respecting(full))) == 1
    chain3 = Decomposed.from_parents(empty_graph(3), (None, 0, 1))
    assert len(list(enum_supergraphs_respecting(chain3))) == 8


@settings(max_examples=40)
@given(oracles.decomposed_parts(max_n=5))
def test_supergraph_count_and_validity(parts):
    d = Decomposed.from_parents(*parts)
    missing = sum(1 for a, v in d.tree.comparable_pairs() if not d.graph.has_edge(a, v))
    sups = list(enum_supergraphs_respecting(d))
    assert len(sups) == 2 ** missing
    assert len({g.edges for g in sups}) == len(sups)
    for g in sups:
        assert d.graph.edges <= g.edges and is_elimination_tree(g, d.tree)


def test_elim_trees_examples():
    assert len(list(enum_elim_trees(empty_graph(1), 1))) == 1
    assert len(list(enum_elim_trees(complete_graph(2), 2))) == 2
    trees = list(enum_elim_trees(path_graph(3), 2))
    assert len(trees) == 1 and trees[0].roots == [1]


@settings(max_examples=30, deadline=None)
@given(oracles.graphs(min_n=1, max_n=4))
def test_elim_forests_match_brute_force(g):
    got = {t.parent for t in enum_elim_forests(g)}
    expected = {p for p in oracles.parent_arrays(g.n) if oracles.is_elim(g, p)}
    assert got == expected
    for k in range(1, g.n + 1):
        trees = {t.parent for t in enum_elim_trees(g, k)}
        assert trees == {p for p in expected if sum(x is None for x in p) == 1 and oracles.forest_height(p) <= k}
