"""Oriented graphs stored as bit-packed adjacency rows.

Vertices are the integers ``0..n-1``.  Row ``out[v]`` is an int whose bit
``u`` is set when the arc ``v -> u`` is present.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .errors import GraphError, GraphFormatError


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class OrientedGraph:
    """Loopless digraph with at most one arc per vertex pair."""

    n: int
    out: tuple[int, ...]
    inn: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.n < 0 or len(self.out) != self.n:
            raise GraphError("BAD_ORDER", f"expected {self.n} rows, got {len(self.out)}")
        full = (1 << self.n) - 1
        inn = [0] * self.n
        for v, row in enumerate(self.out):
            if row & ~full:
                raise GraphError("VERTEX_RANGE", f"row {v} references a vertex >= {self.n}")
            if row >> v & 1:
                raise GraphError("LOOP", f"loop at vertex {v}")
            for u in _bits(row):
                inn[u] |= 1 << v
        for v in range(self.n):
            both = self.out[v] & inn[v]
            if both:
                u = next(_bits(both))
                raise GraphError("DIGON", f"digon between {v} and {u}")
        object.__setattr__(self, "inn", tuple(inn))

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable[Sequence[int]]) -> OrientedGraph:
        rows = [0] * n
        for u, v in arcs:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError("VERTEX_RANGE", f"arc ({u}, {v}) outside 0..{n - 1}")
            rows[u] |= 1 << v
        return cls(n, tuple(rows))

    @classmethod
    def from_matrix(cls, matrix: Sequence[Sequence[int]]) -> OrientedGraph:
        n = len(matrix)
        rows = []
        for i, row in enumerate(matrix):
            if len(row) != n:
                raise GraphFormatError("RAGGED", f"row {i} has {len(row)} entries, expected {n}")
            mask = 0
            for j, x in enumerate(row):
                if x not in (0, 1):
                    raise GraphFormatError("NON_BINARY", f"entry ({i}, {j}) is {x!r}")
                if x:
                    mask |= 1 << j
            rows.append(mask)
        return cls(n, tuple(rows))

    @classmethod
    def empty(cls, n: int) -> OrientedGraph:
        return cls(n, (0,) * n)

    @classmethod
    def transitive(cls, n: int) -> OrientedGraph:
        """Tournament with arcs from every lower label to every higher one."""
        full = (1 << n) - 1
        return cls(n, tuple(full & ~((1 << (v + 1)) - 1) for v in range(n)))

    @classmethod
    def rotational(cls, n: int, steps: Iterable[int]) -> OrientedGraph:
        """Circulant graph with arcs ``i -> i + s (mod n)`` for each step ``s``."""
        return cls.from_arcs(n, [(i, (i + s) % n) for i in range(n) for s in steps])

    def has_arc(self, u: int, v: int) -> bool:
        return bool(self.out[u] >> v & 1)

    def adjacent(self, u: int, v: int) -> bool:
        return bool((self.out[u] | self.inn[u]) >> v & 1)

    def nbrs(self, v: int) -> int:
        """Bitmask of neighbours of ``v`` in the underlying graph."""
        return self.out[v] | self.inn[v]

    @property
    def arcs(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in _bits(self.out[u])]

    @property
    def arc_count(self) -> int:
        return sum(row.bit_count() for row in self.out)

    def matrix(self) -> list[list[int]]:
        return [[row >> j & 1 for j in range(self.n)] for row in self.out]

    def is_tournament(self) -> bool:
        full = (1 << self.n) - 1
        return all((self.nbrs(v) | 1 << v) == full for v in range(self.n))

    def reverse(self) -> OrientedGraph:
        return OrientedGraph(self.n, self.inn)

    def relabel(self, perm: Sequence[int]) -> OrientedGraph:
        """Image under the vertex map ``v -> perm[v]``."""
        if sorted(perm) != list(range(self.n)):
            raise GraphError("NOT_PERMUTATION", f"{perm!r} is not a permutation of 0..{self.n - 1}")
        return OrientedGraph.from_arcs(self.n, [(perm[u], perm[v]) for u, v in self.arcs])

    def induced(self, vertices: Sequence[int]) -> OrientedGraph:
        """Subgraph induced on ``vertices``, relabelled by position."""
        index = {v: i for i, v in enumerate(vertices)}
        return OrientedGraph.from_arcs(
            len(vertices),
            [(index[u], index[v]) for u in vertices for v in _bits(self.out[u]) if v in index],
        )


@dataclass(frozen=True)
class UnderlyingGraph:
    n: int
    adj: tuple[int, ...]

    @property
    def edges(self) -> set[frozenset[int]]:
        return {frozenset((u, v)) for u in range(self.n) for v in _bits(self.adj[u]) if u < v}

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)


@dataclass(frozen=True)
class VertexSetPair:
    """Two (possibly overlapping) vertex sets of one graph."""

    a: frozenset[int]
    b: frozenset[int]


def degrees(g: OrientedGraph, v: int) -> tuple[int, int, int]:
    """Return ``(out-degree, in-degree, total degree)`` of ``v``."""
    if not 0 <= v < g.n:
        raise GraphError("VERTEX_RANGE", f"vertex {v} outside 0..{g.n - 1}")
    d_out = g.out[v].bit_count()
    d_in = g.inn[v].bit_count()
    return d_out, d_in, d_out + d_in


def min_total_degree(g: OrientedGraph) -> int:
    if g.n == 0:
        raise GraphError("EMPTY_GRAPH", "minimum degree of the empty graph is undefined")
    return min(g.nbrs(v).bit_count() for v in range(g.n))


def underlying(g: OrientedGraph) -> UnderlyingGraph:
    return UnderlyingGraph(g.n, tuple(g.nbrs(v) for v in range(g.n)))


def blow_up(g: OrientedGraph, t: int) -> OrientedGraph:
    """t-blow-up: copy ``m`` of vertex ``v`` gets label ``m * n + v``.

    With this labelling ``blow_up(g, 1)`` is ``g`` itself and the copy
    classes are ``{v, v + n, v + 2n, ...}``.
    """
    if t < 1:
        raise GraphError("BAD_BLOWUP", f"blow-up factor must be >= 1, got {t}")
    n = g.n
    rows = []
    for _m in range(t):
        for v in range(n):
            mask = 0
            for k in range(t):
                mask |= g.out[v] << (k * n)
            rows.append(mask)
    return OrientedGraph(n * t, tuple(rows))


def copy_classes(n: int, t: int) -> list[list[int]]:
    return [[m * n + v for m in range(t)] for v in range(n)]


# -- file formats -----------------------------------------------------------

def parse_matrix_line(text: str) -> OrientedGraph:
    """Parse ``"0,1;0,0"``-style rows (comma-separated entries, ``;`` between rows)."""
    text = text.strip()
    if not text:
        raise GraphFormatError("EMPTY_LINE", "no matrix rows")
    matrix = []
    for i, row in enumerate(text.split(";")):
        try:
            matrix.append([int(x) for x in row.split(",")])
        except ValueError:
            raise GraphFormatError("NON_BINARY", f"row {i} has a non-integer entry: {row!r}") from None
    for i, row in enumerate(matrix):
        if len(row) != len(matrix):
            raise GraphFormatError("RAGGED", f"row {i} has {len(row)} entries, expected {len(matrix)}")
        if row[i]:
            raise GraphFormatError("LOOP", f"diagonal entry ({i}, {i}) is set")
    try:
        return OrientedGraph.from_matrix(matrix)
    except GraphFormatError:
        raise
    except GraphError as exc:
        raise GraphFormatError(exc.code, str(exc.detail)) from None


def serialize_matrix_line(g: OrientedGraph) -> str:
    return ";".join(",".join(map(str, row)) for row in g.matrix())


def parse_json_line(text: str) -> OrientedGraph:
    try:
        obj = json.loads(text)
        n, arcs = obj["n"], obj["arcs"]
    except (ValueError, KeyError, TypeError) as exc:
        raise GraphFormatError("BAD_JSON", f"not a {{'n', 'arcs'}} record: {exc}") from None
    try:
        return OrientedGraph.from_arcs(n, arcs)
    except (GraphError, ValueError, TypeError) as exc:
        raise GraphFormatError(getattr(exc, "code", "BAD_JSON"), str(exc)) from None


def serialize_json_line(g: OrientedGraph) -> str:
    return json.dumps({"n": g.n, "arcs": [list(a) for a in g.arcs]}, separators=(",", ":"))


def read_graphs(text: str) -> list[OrientedGraph]:
    """Read one graph per line; JSON records and matrix lines may be mixed.

    Blank lines and lines starting with ``#`` are skipped.
    """
    graphs = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        graphs.append(parse_json_line(line) if line.startswith("{") else parse_matrix_line(line))
    return graphs


def write_matrix_lines(graphs: Iterable[OrientedGraph]) -> str:
    return "".join(serialize_matrix_line(g) + "\n" for g in graphs)
