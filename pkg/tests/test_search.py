import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from hamsquare.constants import best_coupling_value
from hamsquare.discrepancy import verify_square_hamilton
from hamsquare.errors import LayoutError, SearchError
from hamsquare.graph import OrientedGraph, blow_up, min_total_degree
from hamsquare.search.connect import connect_edges, is_connecting_path
from hamsquare.search.generate import random_min_degree_graph, random_tournament
from hamsquare.search.hamilton import max_discrepancy_square_hamilton, square_hamilton_orderings
from hamsquare.search.tiling import TilingCertificate, cliques, find_mixed_tiling, verify_tiling
from hamsquare.tournaments import enumerate_tournaments
from oracles import connect_exhaustive, square_hamilton_brute

C5 = OrientedGraph.from_arcs(5, [(i, (i + 1) % 5) for i in range(5)])
C6 = OrientedGraph.from_arcs(6, [(i, (i + 1) % 6) for i in range(6)])


# -- tiling ------------------------------------------------------------------

def test_tiling_tournament():
    g = random_tournament(9, 1)
    cert = find_mixed_tiling(g, 3, 3, 0)
    assert len(cert.tiles) == 3 and verify_tiling(g, cert, 3, 3, 0)


def test_tiling_blow_up_is_transversal():
    g = blow_up(OrientedGraph.transitive(3), 3)
    cert = find_mixed_tiling(g, 3, 3, 0)
    assert verify_tiling(g, cert, 3, 3, 0)
    for tile in cert.tiles:
        assert sorted(v % 3 for v in tile) == [0, 1, 2]


def test_tiling_infeasible_counts():
    with pytest.raises(SearchError) as exc:
        find_mixed_tiling(random_tournament(9, 0), 3, 4, 0)
    assert exc.value.code == "INFEASIBLE_COUNTS"


def test_tiling_absent_when_impossible():
    assert find_mixed_tiling(C6, 3, 1, 0) is None
    assert find_mixed_tiling(OrientedGraph.empty(4), 2, 1, 0) is None


def test_tiling_mixed_sizes():
    g = random_tournament(10, 3)
    cert = find_mixed_tiling(g, 4, 1, 2)
    assert verify_tiling(g, cert, 4, 1, 2)
    assert TilingCertificate.from_json(cert.to_json()) == cert


def test_verify_tiling_rejections():
    g = random_tournament(6, 2)
    assert verify_tiling(g, TilingCertificate(((0, 1, 2), (2, 3, 4))), 3, 2, 0).reason == "OVERLAP"
    assert verify_tiling(C6, TilingCertificate(((0, 1, 3),)), 3, 1, 0).reason == "NOT_COMPLETE"
    assert verify_tiling(g, TilingCertificate(((0, 1, 2, 3),)), 3, 1, 0).reason == "WRONG_SIZE"
    assert verify_tiling(g, TilingCertificate(((0, 1, 2),)), 3, 2, 0).reason == "COUNT_MISMATCH"
    assert verify_tiling(g, TilingCertificate(((0, 1, 9),)), 3, 1, 0).reason == "VERTEX_RANGE"


def test_verify_tiling_fuzzed_certificates():
    rnd = random.Random(5)
    for seed in range(20):
        g = random_min_degree_graph(12, 8, seed)
        cert = find_mixed_tiling(g, 4, 0, 4) or find_mixed_tiling(g, 3, 4, 0)
        if cert is None:
            continue
        tiles = [list(t) for t in cert.tiles]
        i, j = rnd.sample(range(len(tiles)), 2)
        tiles[i][0] = tiles[j][0]
        assert not verify_tiling(g, TilingCertificate(tuple(map(tuple, tiles))), len(cert.tiles[0]),
                                 len(cert.tiles), 0)


def test_cliques_match_combinations():
    g = random_min_degree_graph(10, 6, 4)
    for k in (2, 3, 4):
        expected = {sum(1 << v for v in c) for c in itertools.combinations(range(10), k)
                    if all(g.adjacent(x, y) for x, y in itertools.combinations(c, 2))}
        assert set(cliques(g, k)) == expected


# -- square Hamilton search ---------------------------------------------------

def test_hamilton_examples():
    res = max_discrepancy_square_hamilton(OrientedGraph.rotational(5, (1, 2)))
    assert (res.value, res.certified_optimal) == (10, True)
    res = max_discrepancy_square_hamilton(C5)
    assert res.ordering is None and res.certified_optimal
    with pytest.raises(SearchError):
        max_discrepancy_square_hamilton(OrientedGraph.transitive(4))


def test_hamilton_minimum_over_five_vertex_classes():
    assert min(max_discrepancy_square_hamilton(t.graph).value for t in enumerate_tournaments(5)) == 7


@pytest.mark.parametrize("seed", range(12))
def test_hamilton_matches_brute_force_on_tournaments(seed):
    g = random_tournament(5 + seed % 3, seed)
    res = max_discrepancy_square_hamilton(g)
    assert res.certified_optimal
    assert res.value == square_hamilton_brute(g) == best_coupling_value(g)
    c = verify_square_hamilton(g, res.ordering)
    assert (c.sigma_plus, c.sigma_minus) == (res.sigma_plus, res.sigma_minus)


@pytest.mark.parametrize("seed", range(8))
def test_hamilton_matches_brute_force_on_sparse_graphs(seed):
    g = random_min_degree_graph(8, 5, seed)
    assert max_discrepancy_square_hamilton(g).value == square_hamilton_brute(g)


def test_hamilton_budget_and_parallel():
    g = random_min_degree_graph(11, 8, 3)
    cut = max_discrepancy_square_hamilton(g, max_nodes=5)
    assert not cut.certified_optimal
    full = max_discrepancy_square_hamilton(g)
    assert max_discrepancy_square_hamilton(g, jobs=2) == full


def test_square_hamilton_orderings_are_valid_and_complete():
    g = random_min_degree_graph(7, 5, 11)
    found = set(square_hamilton_orderings(g))
    expected = set()
    for p in itertools.permutations(range(1, 7)):
        try:
            verify_square_hamilton(g, (0,) + p)
        except LayoutError:
            continue
        expected.add((0,) + p)
    assert found == expected


# -- connecting paths -------------------------------------------------------

def test_connect_examples():
    assert connect_edges(random_tournament(6, 0), (0, 1), (3, 4)) == (0, 1, 3, 4)
    assert connect_edges(C6, (0, 1), (3, 4)) is None
    g = random_min_degree_graph(12, 9, 1)
    a, b = next((x, y) for x, y in g.arcs if x != 2 and y != 2)
    c, d = next((x, y) for x, y in g.arcs if not {x, y} & {a, b})
    rest = set(range(12)) - {a, b, c, d}
    assert connect_edges(g, (a, b), (c, d), forbidden=rest) in (None, (a, b, c, d))


def test_connect_errors():
    g = random_tournament(6, 0)
    for first, last, forb, code in [((0, 1), (1, 2), (), "ENDPOINTS_COINCIDE"),
                                     ((0, 1), (2, 3), (2,), "ENDPOINT_FORBIDDEN"),
                                     ((0, 9), (2, 3), (), "VERTEX_RANGE")]:
        with pytest.raises(SearchError) as exc:
            connect_edges(g, first, last, forb)
        assert exc.value.code == code
    with pytest.raises(SearchError) as exc:
        connect_edges(C6, (0, 2), (3, 4))
    assert exc.value.code == "MISSING_EDGE"


@given(st.integers(0, 10_000))
@settings(max_examples=40, deadline=None)
def test_connect_is_shortest(seed):
    rnd = random.Random(seed)
    n = rnd.randint(7, 10)
    g = random_min_degree_graph(n, rnd.randint(n // 2, n - 2), seed)
    edges = [e for e in g.arcs]
    (a, b) = rnd.choice(edges)
    rest = [e for e in edges if not set(e) & {a, b}]
    if not rest:
        return
    (c, d) = rnd.choice(rest)
    forbidden = rnd.sample([v for v in range(n) if v not in (a, b, c, d)], rnd.randint(0, 2))
    path = connect_edges(g, (a, b), (c, d), forbidden)
    oracle = connect_exhaustive(g, (a, b), (c, d), forbidden, max_internal=n)
    if oracle is None:
        assert path is None
    else:
        assert len(path) == len(oracle)
        assert is_connecting_path(g, path, (a, b), (c, d), forbidden)


def test_connect_both_orders():
    g = random_min_degree_graph(10, 6, 2)
    a, b = g.arcs[0]
    c, d = next((x, y) for x, y in g.arcs if not {x, y} & {a, b})
    one = connect_edges(g, (a, b), (c, d))
    both = connect_edges(g, (a, b), (c, d), both_orders=True)
    if one is not None:
        assert both is not None and len(both) <= len(one)


# -- generator ----------------------------------------------------------------

def test_generator():
    t = random_min_degree_graph(8, 7, 1)
    assert t.is_tournament()
    assert random_min_degree_graph(30, 20, 7) == random_min_degree_graph(30, 20, 7)
    assert min_total_degree(random_min_degree_graph(30, 20, 7)) >= 20
    assert random_tournament(9, 4) != random_tournament(9, 5)
    with pytest.raises(SearchError):
        random_min_degree_graph(5, 5, 0)
    with pytest.raises(SearchError) as exc:
        random_min_degree_graph(40, 38, 0, max_attempts=1)
    assert exc.value.code == "ATTEMPTS_EXHAUSTED"
