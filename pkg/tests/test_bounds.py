from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hamsquare.bounds import (
    GENERAL,
    NEAR_THRESHOLD,
    cross_edges,
    f_bound,
    g_bound,
    n_min_as_printed,
    n_min_check,
    tiling_profile,
    verify_extremal_witness,
)
from hamsquare.constants import NTable
from hamsquare.errors import BoundError
from hamsquare.graph import OrientedGraph, VertexSetPair, min_total_degree
from hamsquare.search.generate import random_min_degree_graph


def test_tiling_profile_examples():
    p = tiling_profile(9, 6)
    assert (p.r, p.a_r, p.a_bar_r) == (3, 3, 0)
    p = tiling_profile(12, 9)
    assert (p.r, p.a_r, p.a_bar_r) == (4, 3, 0)
    q = tiling_profile(12, 9, r=5)
    assert (q.a_r, q.a_bar_r) == (0, 3)
    assert 4 * 3 == 5 * 0 + 4 * 3 == 12
    p = tiling_profile(10, 7)
    assert (p.r, p.a_r, p.a_bar_r) == (4, 1, 2)


def test_tiling_profile_errors():
    with pytest.raises(BoundError):
        tiling_profile(5, -1)
    with pytest.raises(BoundError):
        tiling_profile(5, 5)
    with pytest.raises(BoundError) as exc:
        tiling_profile(12, 9, r=3)
    assert exc.value.code == "OUTSIDE_WINDOW"


@given(st.integers(1, 300).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, n - 1))))
def test_tiling_identities(case):
    n, delta = case
    p = tiling_profile(n, delta)
    assert 2 <= p.r <= max(n, 2)
    assert p.r * p.a_r + (p.r - 1) * p.a_bar_r == n
    assert p.a_r + p.a_bar_r == n - delta
    if p.r > 2:
        # smallest: the previous window does not fit
        with pytest.raises(BoundError):
            tiling_profile(n, delta, r=p.r - 1)


def test_g_bound_examples():
    assert g_bound(12, 9) == 15
    assert g_bound(12, 9, r=5) == 15
    assert g_bound(9, 6) == 9


def test_g_bound_missing_entry():
    with pytest.raises(BoundError) as exc:
        g_bound(14, 12, NTable.proved())  # r = 7
    assert exc.value.code == "MISSING_TABLE_ENTRY"
    with pytest.raises(BoundError):
        g_bound(10, 6)  # r = 3 with Abar > 0 needs N_2


def test_f_bound_examples():
    b = f_bound(900, 600, Fraction(1, 100))
    assert b.regime == NEAR_THRESHOLD and b.f_value == 900
    b = f_bound(900, 720, Fraction(1, 100))
    assert (b.regime, b.r, b.a_r, b.a_bar_r, b.f_value) == (GENERAL, 5, 180, 0, 1260)
    assert b.f_value == b.g_value
    with pytest.raises(BoundError) as exc:
        f_bound(900, 599, Fraction(1, 100))
    assert exc.value.code == "BELOW_THRESHOLD"
    with pytest.raises(BoundError):
        f_bound(900, 700, 0)


def test_f_bound_slack_terms():
    b = f_bound(900, 720, "1/100", xi="1/10", d_slack="1/20")
    assert b.adjusted == 1260 - 135
    assert b.guaranteed == 1125
    b = f_bound(90, 60, "1/100", xi="1/2")
    assert b.guaranteed == 90


def test_n_min():
    assert n_min_check(4) == 0
    assert n_min_check(5) == 1
    assert n_min_check(6) == NTable.default().N(6) - 6
    assert n_min_as_printed(4) == 1
    with pytest.raises(BoundError):
        n_min_check(9)


def test_extremal_witness_examples():
    k9 = OrientedGraph.transitive(9)
    assert not verify_extremal_witness(k9, VertexSetPair(frozenset({0, 1, 2}), frozenset({3, 4, 5})), "1/10")
    empty = OrientedGraph.empty(9)
    assert verify_extremal_witness(empty, VertexSetPair(frozenset({0, 1, 2}), frozenset({3, 4, 5})), "1/10")
    big = VertexSetPair(frozenset(range(5)), frozenset({5, 6, 7}))
    assert not verify_extremal_witness(OrientedGraph.empty(10), big, "1/10")
    with pytest.raises(BoundError):
        verify_extremal_witness(empty, VertexSetPair(frozenset(), frozenset({1})), "1/10")


def test_cross_edges_overlap_counts_ordered_pairs():
    k4 = OrientedGraph.transitive(4)
    assert cross_edges(k4, {0, 1}, {1, 2}) == 3  # (0,1), (0,2), (1,2)
    assert cross_edges(k4, {0, 1}, {0, 1}) == 2


def test_extremal_implies_degree_cap():
    # any graph with an accepted witness has min degree at most (2/3 + 4 alpha/3) n;
    # thin out the A-B edges of dense random graphs so witnesses actually occur
    alpha = Fraction(1, 5)
    accepted = 0
    for seed in range(60):
        n = 9 + seed % 7
        g = random_min_degree_graph(n, (2 * n) // 3, seed)
        third = n // 3
        a, b = frozenset(range(third)), frozenset(range(third, 2 * third))
        keep = [(x, y) for x, y in g.arcs
                if not ({x, y} & a and {x, y} & b) or (x + y + seed) % 6 == 0]
        h = OrientedGraph.from_arcs(n, keep)
        if verify_extremal_witness(h, VertexSetPair(a, b), alpha):
            accepted += 1
            assert min_total_degree(h) <= (Fraction(2, 3) + 4 * alpha / 3) * n
    assert accepted >= 30
