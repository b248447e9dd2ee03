import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from tdhom.decomposition import Decomposed, induced_subtree
from tdhom.enumeration import enum_decomposed, enum_graphs
from tdhom.exceptions import ConstructionError, InputError
from tdhom.graph import Graph, complete_graph, cycle_graph, disjoint_union, empty_graph, path_graph
from tdhom.homcount import hom_count
from tdhom.restricted import (
    Factorization,
    back_substitute,
    cor1_identity_check,
    corpp1_identity_check,
    factorize_hom,
    forward_substitute,
    is_valid_factorization,
    iter_factorizations,
    iter_shrinking_maps,
    pi_hom_count,
    pihom_from_hom,
    pp_hom_count,
    pphom_from_pihom,
    s_epi_count,
    shrink_images,
    theorem_pp_check,
)

WB = ("white", "black")
K3 = complete_graph(3)
NO_EDGE = Decomposed.from_parents(empty_graph(2), (None, 0))
EDGE = Decomposed.from_parents(complete_graph(2), (None, 0))
SINGLE = Decomposed.from_parents(empty_graph(1), (None,))
CHAIN3 = Decomposed.from_parents(empty_graph(3), (None, 0, 1))


def test_pi_and_pp_examples():
    assert pi_hom_count(SINGLE, path_graph(4)) == hom_count(SINGLE.graph, path_graph(4)) == 4
    assert pi_hom_count(NO_EDGE, K3) == 6
    assert pi_hom_count(EDGE, K3) == 6
    assert pp_hom_count(NO_EDGE, K3) == 0
    assert pp_hom_count(EDGE, K3) == 6
    assert pp_hom_count(SINGLE, path_graph(4)) == 4


@settings(max_examples=60, deadline=None)
@given(oracles.decomposed_parts(max_n=4, palette=WB), oracles.graphs(min_n=1, max_n=4, palette=WB), st.data())
def test_restricted_counts_match_brute_force(parts, g, data):
    f, parent = parts
    d = Decomposed.from_parents(f, parent)
    pins = {}
    if data.draw(st.booleans()):
        pins = {data.draw(st.integers(0, d.n - 1)): data.draw(st.integers(0, g.n - 1))}
    pi, pp = pi_hom_count(d, g, pins), pp_hom_count(d, g, pins)
    assert pi == oracles.pi_hom(f, parent, g, pins)
    assert pp == oracles.pp_hom(f, parent, g, pins)
    assert pp <= pi <= hom_count(f, g, pins)


def test_s_epi_examples():
    assert s_epi_count(NO_EDGE, NO_EDGE.graph) == 1
    assert s_epi_count(NO_EDGE, empty_graph(1), [0]) == 1
    # an image without the root is impossible
    assert s_epi_count(NO_EDGE, empty_graph(1), [1]) == 0
    # colour mismatch under the embedding
    d = Decomposed.from_parents(Graph.from_edges(2, [], ["white", "black"], WB), (None, 0))
    assert s_epi_count(d, Graph.from_edges(1, [], ["black"], WB), [0]) == 0


@settings(max_examples=60, deadline=None)
@given(oracles.decomposed_parts(max_n=5, palette=WB))
def test_shrink_images_match_brute_force(parts):
    f, parent = parts
    d = Decomposed.from_parents(f, parent)
    assert shrink_images(d) == oracles.shrink_image_counts(f, parent)
    for h in iter_shrinking_maps(d):
        # images are subtrees whose restricted order is an elimination tree
        tree, order = induced_subtree(d.tree, set(h))
        assert d.root in set(h)
        sub_edges = {(order.index(min(h[a], h[b])), order.index(max(h[a], h[b]))) for a, b in f.edges}
        sub = Graph.from_edges(len(order), sorted(sub_edges), [f.colors[v] for v in order], WB)
        assert Decomposed(sub, tree).height <= d.height


def test_factorization_examples():
    ident = factorize_hom(EDGE, (0, 1), complete_graph(2))
    assert ident.shrink == (0, 1) and ident.tail_map == {0: 0, 1: 1}
    collapse = factorize_hom(NO_EDGE, (2, 2), K3)
    assert collapse.shrink == (0, 0) and collapse.vertices == {0} and collapse.tail_map == {0: 2}
    bij = factorize_hom(EDGE, (1, 0), complete_graph(2))
    assert bij.shrink == (0, 1) and bij.compose() == (1, 0)
    with pytest.raises(InputError):
        factorize_hom(EDGE, (0, 0), complete_graph(2))


def test_invalid_factorization_rejected():
    bad = Factorization(frozenset({0, 1}), frozenset(), (1, 1), ((1, 0),))
    assert not is_valid_factorization(NO_EDGE, bad, K3)


@settings(max_examples=40, deadline=None)
@given(oracles.decomposed_parts(max_n=4, palette=WB), oracles.graphs(min_n=1, max_n=3, palette=WB))
def test_factorization_is_a_bijection(parts, target):
    d = Decomposed.from_parents(*parts)
    homs = set(oracles.all_maps(d.graph, target))
    facs = list(iter_factorizations(d, target))
    assert all(is_valid_factorization(d, fac, target) for fac in facs)
    composed = [fac.compose() for fac in facs]
    assert len(composed) == len(set(composed)) == len(homs)
    assert set(composed) == homs
    for h in homs:
        assert factorize_hom(d, h, target) in facs


def test_cor1_examples():
    rep = cor1_identity_check(NO_EDGE, K3)
    assert (rep.lhs, rep.rhs) == (9, 9)
    assert sorted((int(t["s_epi"]), int(t["pi_hom"])) for t in rep.terms) == [(1, 3), (1, 6)]
    rep = cor1_identity_check(SINGLE, path_graph(5))
    assert rep.ok and rep.lhs == 5
    rep = cor1_identity_check(EDGE, K3)
    assert rep.ok and rep.lhs == 6 and len(rep.terms) == 1


def test_corpp1_examples():
    rep = corpp1_identity_check(NO_EDGE, K3)
    assert rep.lhs == 6 and [int(t["pp_hom"]) for t in rep.terms] == [0, 6]
    rep = corpp1_identity_check(EDGE, K3)
    assert rep.ok and len(rep.terms) == 1
    rep = corpp1_identity_check(CHAIN3, complete_graph(2))
    assert rep.ok and len(rep.terms) == 8


@settings(max_examples=40, deadline=None)
@given(oracles.decomposed_parts(max_n=4, palette=WB), oracles.graphs(min_n=1, max_n=4, palette=WB))
def test_identities_hold(parts, h):
    d = Decomposed.from_parents(*parts)
    assert cor1_identity_check(d, h).ok
    assert corpp1_identity_check(d, h).ok


def test_substitution_helpers():
    assert forward_substitute([[1, 0], [2, 1]], [3, 10]) == [3, 4]
    assert back_substitute([[1, 1], [0, 1]], [6, 6]) == [0, 6]
    with pytest.raises(ConstructionError):
        forward_substitute([[1, 1], [0, 1]], [1, 1])
    with pytest.raises(ConstructionError):
        back_substitute([[2, 0], [0, 1]], [1, 1])


def test_lemma3_example():
    sys_ = pihom_from_hom(NO_EDGE, K3)
    assert sys_.matrix == [[1, 0], [1, 1]] and sys_.rhs == [3, 9] and sys_.solved == [3, 6]
    assert sys_.ok and sys_.unit_triangular
    one = pihom_from_hom(SINGLE, K3)
    assert one.matrix == [[1]] and one.solved == one.rhs == [3]


def test_pp4_examples():
    sys_ = pphom_from_pihom(NO_EDGE, K3)
    assert sys_.matrix == [[1, 1], [0, 1]] and sys_.rhs == [6, 6] and sys_.solved == [0, 6]
    assert sys_.ok and sys_.unit_triangular
    full = pphom_from_pihom(EDGE, K3)
    assert full.matrix == [[1]] and full.solved == full.rhs
    eight = pphom_from_pihom(CHAIN3, complete_graph(2))
    assert len(eight.matrix) == 8 and eight.ok and eight.unit_triangular


def test_triangular_transforms_on_all_small_bases():
    targets = [h for h in enum_graphs(3) if h.n]
    for d in enum_decomposed(4, 4):
        for h in targets:
            a, b = pihom_from_hom(d, h), pphom_from_pihom(d, h)
            assert a.unit_triangular and a.ok and all(x >= 0 for x in a.solved)
            assert b.unit_triangular and b.ok
            assert b.solved[0] == pp_hom_count(d, h)


def test_theorem_pp_examples():
    c6, two = cycle_graph(6), disjoint_union([K3, K3])
    same = theorem_pp_check(c6, c6, 2, 4)
    assert same.hom_equal and same.pi_equal and same.pp_equal
    rep = theorem_pp_check(c6, two, 2, 6)
    assert rep.agree and rep.hom_equal
    rep = theorem_pp_check(c6, two, 3, 3)
    assert rep.agree and not rep.hom_equal
    assert rep.witnesses["hom"]["counts"] == ["0", "12"]
