"""Shortest connecting 2-paths between two prescribed edges (orientation ignored)."""

from __future__ import annotations

from collections import deque
from typing import Iterable, Sequence

from ..errors import SearchError
from ..graph import OrientedGraph


def _validate(g: OrientedGraph, first: Sequence[int], last: Sequence[int], forbidden: set[int]) -> None:
    a, b = first
    c, d = last
    ends = (a, b, c, d)
    if any(not 0 <= v < g.n for v in ends):
        raise SearchError("VERTEX_RANGE", f"end vertices {ends} outside 0..{g.n - 1}")
    if len(set(ends)) != 4:
        raise SearchError("ENDPOINTS_COINCIDE", f"end edges {tuple(first)} and {tuple(last)} share a vertex")
    if forbidden & set(ends):
        raise SearchError("ENDPOINT_FORBIDDEN", f"an end vertex of {ends} is forbidden")
    for x, y in (first, last):
        if not g.adjacent(x, y):
            raise SearchError("MISSING_EDGE", f"({x}, {y}) is not an edge of the underlying graph")


def _simple_search(g: OrientedGraph, a: int, b: int, c: int, d: int, allowed: int,
                   depth_from: int, depth_to: int) -> tuple[int, ...] | None:
    # iterative deepening over sequences without repeated vertices
    nb = [g.nbrs(v) for v in range(g.n)]
    path = [a, b]

    def go(used: int, left: int) -> bool:
        u, v = path[-2], path[-1]
        if left == 0:
            return bool(nb[c] >> u & 1 and nb[c] >> v & 1 and nb[d] >> v & 1)
        cand = allowed & nb[u] & nb[v] & ~used
        while cand:
            w = (cand & -cand).bit_length() - 1
            cand &= cand - 1
            path.append(w)
            if go(used | 1 << w, left - 1):
                return True
            path.pop()
        return False

    for m in range(depth_from, depth_to + 1):
        path[:] = [a, b]
        if go(0, m):
            return tuple(path) + (c, d)
    return None


def _connect_ordered(g: OrientedGraph, a: int, b: int, c: int, d: int, allowed: int) -> tuple[int, ...] | None:
    nb = [g.nbrs(v) for v in range(g.n)]
    if not nb[d] >> c & 1:
        return None
    start = (a, b)
    parent: dict[tuple[int, int], tuple[int, int] | None] = {start: None}
    queue = deque([start])
    hit = None
    while queue:
        state = queue.popleft()
        u, v = state
        if nb[c] >> u & 1 and nb[c] >> v & 1 and nb[d] >> v & 1:
            hit = state
            break
        cand = allowed & nb[u] & nb[v]
        while cand:
            w = (cand & -cand).bit_length() - 1
            cand &= cand - 1
            nxt = (v, w)
            if nxt not in parent:
                parent[nxt] = state
                queue.append(nxt)
    if hit is None:
        return None
    tail = []
    s: tuple[int, int] | None = hit
    while s is not None and s != start:
        tail.append(s[1])
        s = parent[s]
    internal = tail[::-1]
    if len(set(internal)) == len(internal):
        return (a, b, *internal, c, d)
    # the shortest state walk revisits a vertex; fall back to simple sequences
    return _simple_search(g, a, b, c, d, allowed, len(internal), bin(allowed).count("1"))


def connect_edges(
    g: OrientedGraph,
    first: Sequence[int],
    last: Sequence[int],
    forbidden: Iterable[int] = (),
    *,
    both_orders: bool = False,
) -> tuple[int, ...] | None:
    """Shortest ``a, b, x1..xm, c, d`` whose distance-1 and distance-2 pairs are all edges.

    Internal vertices avoid ``forbidden`` and the four end vertices.  The end
    pairs are ordered; ``both_orders=True`` also tries ``(b, a)`` and
    ``(d, c)`` and returns the shortest overall.
    """
    forbidden = set(forbidden)
    _validate(g, first, last, forbidden)
    a, b = first
    c, d = last
    allowed = (1 << g.n) - 1
    for v in forbidden | {a, b, c, d}:
        if 0 <= v < g.n:
            allowed &= ~(1 << v)
    variants = [(a, b, c, d)]
    if both_orders:
        variants = [(a, b, c, d), (a, b, d, c), (b, a, c, d), (b, a, d, c)]
    best = None
    for x, y, z, w in variants:
        path = _connect_ordered(g, x, y, z, w, allowed)
        if path is not None and (best is None or len(path) < len(best)):
            best = path
    return best


def is_connecting_path(g: OrientedGraph, path: Sequence[int], first: Sequence[int], last: Sequence[int],
                       forbidden: Iterable[int] = ()) -> bool:
    """Checker: correct ends, distinct vertices, allowed internals, all 2-path pairs adjacent."""
    if len(path) < 4 or tuple(path[:2]) != tuple(first) or tuple(path[-2:]) != tuple(last):
        return False
    if len(set(path)) != len(path) or set(path[2:-2]) & set(forbidden):
        return False
    return all(g.adjacent(path[i], path[i + j]) for j in (1, 2) for i in range(len(path) - j))
