import json

import pytest
from hypothesis import given, strategies as st

from hamsquare.errors import GraphError, GraphFormatError
from hamsquare.graph import (
    OrientedGraph,
    blow_up,
    copy_classes,
    degrees,
    min_total_degree,
    parse_json_line,
    parse_matrix_line,
    read_graphs,
    serialize_json_line,
    serialize_matrix_line,
    underlying,
)

TRIANGLE = OrientedGraph.from_arcs(3, [(0, 1), (1, 2), (2, 0)])


@st.composite
def oriented_graphs(draw, min_n=1, max_n=9):
    n = draw(st.integers(min_n, max_n))
    arcs = []
    for i in range(n):
        for j in range(i + 1, n):
            c = draw(st.integers(0, 2))
            if c == 1:
                arcs.append((i, j))
            elif c == 2:
                arcs.append((j, i))
    return OrientedGraph.from_arcs(n, arcs)


def test_parse_single_arc():
    g = parse_matrix_line("0,1;0,0")
    assert g.n == 2 and g.arcs == [(0, 1)]


def test_parse_directed_triangle():
    assert parse_matrix_line("0,1,0;0,0,1;1,0,0") == TRIANGLE


@pytest.mark.parametrize("text,code", [
    ("0,1;1,0", "DIGON"),
    ("1,0;0,0", "LOOP"),
    ("0,1;0", "RAGGED"),
    ("0,2;0,0", "NON_BINARY"),
    ("0,x;0,0", "NON_BINARY"),
])
def test_parse_errors(text, code):
    with pytest.raises(GraphFormatError) as exc:
        parse_matrix_line(text)
    assert exc.value.code == code


def test_serialize_examples():
    assert serialize_matrix_line(OrientedGraph.from_arcs(2, [(0, 1)])) == "0,1;0,0"
    assert serialize_matrix_line(OrientedGraph.empty(1)) == "0"
    assert serialize_matrix_line(TRIANGLE) == "0,1,0;0,0,1;1,0,0"


@given(oriented_graphs())
def test_round_trips(g):
    assert parse_matrix_line(serialize_matrix_line(g)) == g
    assert parse_json_line(serialize_json_line(g)) == g


def test_json_schema():
    obj = json.loads(serialize_json_line(TRIANGLE))
    assert obj == {"n": 3, "arcs": [[0, 1], [1, 2], [2, 0]]}


def test_read_graphs_mixed_and_comments():
    text = "# header\n0,1;0,0\n\n" + serialize_json_line(TRIANGLE) + "\n"
    assert read_graphs(text) == [OrientedGraph.from_arcs(2, [(0, 1)]), TRIANGLE]


def test_constructor_rejects_digon_and_loop():
    with pytest.raises(GraphError):
        OrientedGraph.from_arcs(2, [(0, 1), (1, 0)])
    with pytest.raises(GraphError):
        OrientedGraph.from_arcs(2, [(1, 1)])


def test_degrees():
    assert degrees(TRIANGLE, 0) == (1, 1, 2)
    assert degrees(OrientedGraph.transitive(5), 0) == (4, 0, 4)
    assert degrees(OrientedGraph.empty(3), 2) == (0, 0, 0)
    with pytest.raises(GraphError):
        degrees(TRIANGLE, 3)


def test_min_total_degree():
    assert min_total_degree(OrientedGraph.transitive(6)) == 5
    assert min_total_degree(blow_up(TRIANGLE, 3)) == 6
    assert min_total_degree(OrientedGraph.from_arcs(3, [(0, 1)])) == 0
    with pytest.raises(GraphError):
        min_total_degree(OrientedGraph.empty(0))


def test_underlying():
    assert len(underlying(OrientedGraph.transitive(5)).edges) == 10
    assert underlying(OrientedGraph.empty(4)).edges == set()
    assert underlying(TRIANGLE).edges == {frozenset(p) for p in [(0, 1), (1, 2), (0, 2)]}


def test_blow_up_examples():
    assert blow_up(TRIANGLE, 1) == TRIANGLE
    assert blow_up(OrientedGraph.empty(1), 2) == OrientedGraph.empty(2)
    big = blow_up(TRIANGLE, 3)
    assert big.n == 9 and big.arc_count == 27
    # brute-force degree scan
    for v in range(9):
        assert sum(big.has_arc(v, u) or big.has_arc(u, v) for u in range(9)) == 6
    with pytest.raises(GraphError):
        blow_up(TRIANGLE, 0)


@given(oriented_graphs(max_n=6), st.integers(1, 3))
def test_blow_up_properties(g, t):
    big = blow_up(g, t)
    assert big.arc_count == t * t * g.arc_count
    assert min_total_degree(big) == t * min_total_degree(g)
    classes = copy_classes(g.n, t)
    for v, cls in enumerate(classes):
        for x in cls:
            assert not big.nbrs(x) & sum(1 << y for y in cls)
            for w, other in enumerate(classes):
                for y in other:
                    assert big.has_arc(x, y) == g.has_arc(v, w)
    # underlying of the blow-up is the blow-up of the underlying graph
    ug = underlying(g)
    ub = underlying(big)
    assert all(ub.has_edge(x, y) == ug.has_edge(x % g.n, y % g.n) for x in range(big.n) for y in range(big.n))


@given(oriented_graphs())
def test_degree_sums(g):
    outs = sum(degrees(g, v)[0] for v in range(g.n))
    ins = sum(degrees(g, v)[1] for v in range(g.n))
    assert outs == ins == len(g.arcs)
