from itertools import combinations, product
from math import prod

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from tdhom.enumeration import enum_decomposed, enum_graphs
from tdhom.exceptions import InputError
from tdhom.games import ck_equivalent
from tdhom.graph import complete_graph, cycle_graph, disjoint_union, empty_graph
from tdhom.restricted import pp_hom_count
from tdhom.witness import (
    MismatchReport,
    distinguishing_pattern,
    exponent_vector,
    matching_bijection,
    profiles,
    smallest_separating_sum,
    verify_equivalence_theorem,
)

C6 = cycle_graph(6)
TWO_K3 = disjoint_union([complete_graph(3)] * 2)


def _distinct(rows, d):
    vals = [prod(a ** e for a, e in zip(r, d)) for r in rows]
    return len(set(vals)) == len(vals)


def test_exponent_vector_examples():
    assert exponent_vector([(3, 5, 7)]).d == (1, 1, 1)
    ev = exponent_vector([(2, 3), (3, 2)])
    assert max(ev.d) <= 4 and _distinct(ev.rows, ev.d)
    ev = exponent_vector([(1, 2), (2, 1), (2, 2)])
    assert max(ev.d) <= 9 and _distinct(ev.rows, ev.d)
    assert ev.support == frozenset({0, 1})


def test_exponent_vector_errors():
    with pytest.raises(InputError):
        exponent_vector([(1, 2), (1, 2)])
    with pytest.raises(InputError):
        exponent_vector([(0, 2)])
    with pytest.raises(InputError):
        exponent_vector([])
    with pytest.raises(InputError):
        exponent_vector([(1,), (1, 2)])


@settings(max_examples=200)
@given(st.integers(1, 4).flatmap(
    lambda m: st.lists(st.tuples(*[st.integers(1, 5)] * m), min_size=1, max_size=5, unique=True)))
def test_exponent_vector_property(rows):
    ev = exponent_vector(rows)
    ell = len(rows)
    assert all(1 <= x <= ell * ell for x in ev.d)
    assert _distinct(rows, ev.d)


def test_exponent_bound_is_tight_enough_exhaustively():
    # all families of 3 distinct rows over {1,2}^2
    rows_all = list(product((1, 2), repeat=2))
    for rows in combinations(rows_all, 3):
        ev = exponent_vector(rows)
        assert _distinct(rows, ev.d) and max(ev.d) <= 9


def test_matching_bijection_examples():
    fam = list(enum_decomposed(2, 3))
    ident = matching_bijection(C6, C6, fam)
    assert isinstance(ident, dict) and sorted(ident.values()) == list(range(6))
    bij = matching_bijection(C6, TWO_K3, fam)
    assert isinstance(bij, dict)
    p, p2 = profiles(C6, fam), profiles(TWO_K3, fam)
    assert all(p[x] == p2[y] for x, y in bij.items())
    report = matching_bijection(complete_graph(2), empty_graph(2), fam)
    assert isinstance(report, MismatchReport)
    a, b = report.counts
    assert a != b
    assert (pp_hom_count(report.separator, complete_graph(2)), pp_hom_count(report.separator, empty_graph(2))) == (a, b)
    with pytest.raises(InputError):
        matching_bijection(C6, complete_graph(2), fam)


def test_matching_bijection_on_all_small_pairs():
    for k in (1, 2, 3):
        fam = list(enum_decomposed(k, 3))
        graphs = [g for g in enum_graphs(4) if g.n]
        for g, g2 in combinations(graphs, 2):
            if g.n != g2.n:
                continue
            res = matching_bijection(g, g2, fam)
            if ck_equivalent(g, g2, k):
                assert isinstance(res, dict)
            if isinstance(res, MismatchReport):
                assert res.separator is not None
                assert pp_hom_count(res.separator, g) != pp_hom_count(res.separator, g2)
                ell = len(set(profiles(g, fam)) | set(profiles(g2, fam)))
                assert smallest_separating_sum(g, g2, fam, len(fam) * ell * ell) is not None


def test_smallest_separating_sum_none_when_matched():
    fam = list(enum_decomposed(2, 3))
    assert smallest_separating_sum(C6, TWO_K3, fam, 3) is None


def test_distinguishing_pattern_examples():
    assert distinguishing_pattern(C6, C6, 3, 6) is None
    dist = distinguishing_pattern(C6, TWO_K3, 3, 6)
    assert dist.pattern.n == 3 and len(dist.pattern.edges) == 3 and dist.counts == (0, 12)
    dist = distinguishing_pattern(complete_graph(2), empty_graph(2), 2, 2)
    assert dist.pattern.n == 2 and dist.counts == (2, 0)
    assert distinguishing_pattern(complete_graph(2), empty_graph(2), 1, 2) is None
    dist = distinguishing_pattern(empty_graph(1), empty_graph(3), 1, 3)
    assert dist.pattern.n == 1 and dist.counts == (1, 3)


@settings(max_examples=30, deadline=None)
@given(oracles.graphs(min_n=1, max_n=4), oracles.graphs(min_n=1, max_n=4), st.integers(1, 3))
def test_distinguishing_pattern_reproduces(g, g2, k):
    dist = distinguishing_pattern(g, g2, k, 5)
    if dist is not None:
        assert dist.counts == (oracles.hom(dist.pattern, g), oracles.hom(dist.pattern, g2))
        assert dist.counts[0] != dist.counts[1]


def test_verify_small():
    rep = verify_equivalence_theorem(4, 2)
    assert rep["violations"] == [] and rep["exhaustions"] == 0
    assert rep["pairs"] == 18 * 17 // 2
    for k in (1, 2, 3):
        rep = verify_equivalence_theorem(5, k)
        assert rep["violations"] == []


def test_verify_with_jobs_matches_serial():
    a = verify_equivalence_theorem(3, 2, jobs=1)
    b = verify_equivalence_theorem(3, 2, jobs=2)
    for key in ("pairs", "equivalent", "witnesses_found", "exhaustions", "violations"):
        assert a[key] == b[key]
