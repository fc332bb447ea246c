"""Branch-and-bound for squares of Hamilton cycles with maximum sigma_max."""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Iterator

from ..errors import SearchError
from ..graph import OrientedGraph
from ..parallel import parallel_map


@dataclass(frozen=True)
class SearchResult:
    ordering: tuple[int, ...] | None
    sigma_plus: int | None
    sigma_minus: int | None
    certified_optimal: bool
    nodes: int = 0

    @property
    def value(self) -> int | None:
        if self.ordering is None:
            return None
        return max(self.sigma_plus, self.sigma_minus)

    def to_json(self) -> dict:
        return {"ordering": list(self.ordering) if self.ordering else None,
                "sigma_plus": self.sigma_plus, "sigma_minus": self.sigma_minus,
                "value": self.value, "certified_optimal": self.certified_optimal, "nodes": self.nodes}


class _OutOfBudget(Exception):
    pass


def _branch(args: tuple[OrientedGraph, int, int | None, float | None]) -> SearchResult:
    """Exhaust all orderings starting ``0, first``; keeps the lexicographically
    smallest ordering among those of maximum value."""
    g, first, max_nodes, deadline = args
    n = g.n
    nb = [g.nbrs(v) for v in range(n)]
    out = g.out
    total = 2 * n
    order = [0, first]
    best_val = -1
    best: tuple[tuple[int, ...], int, int] | None = None
    nodes = 0

    def place(used: int, plus: int, minus: int) -> None:
        nonlocal best_val, best, nodes
        nodes += 1
        if max_nodes is not None and nodes > max_nodes:
            raise _OutOfBudget
        if deadline is not None and not nodes & 0xFFF and time.monotonic() > deadline:
            raise _OutOfBudget
        k = len(order)
        p2, p1 = order[k - 2], order[k - 1]
        cand = nb[p1] & nb[p2] & ~used
        if k == n - 1:
            # closing vertex; reflection symmetry: require order[1] < last
            if not nb[p1] & 1:
                return
            cand &= nb[0] & nb[first] & ~((1 << (first + 1)) - 1)
        elif (~used & ((1 << n) - 1)) >> (first + 1) == 0:
            return
        while cand:
            w = (cand & -cand).bit_length() - 1
            cand &= cand - 1
            dp = (out[p1] >> w & 1) + (out[p2] >> w & 1)
            dm = 2 - dp
            np_, nm = plus + dp, minus + dm
            if k == n - 1:
                # wrap slots: (order[n-2], 0), (w, 0), (w, order[1])
                wp = (out[p1] & 1) + (out[w] & 1) + (out[w] >> first & 1)
                np_, nm = np_ + wp, nm + 3 - wp
                val = max(np_, nm)
                if val > best_val:
                    best_val = val
                    best = (tuple(order) + (w,), np_, nm)
                continue
            remaining = total - (np_ + nm)
            if max(np_, nm) + remaining < best_val:
                continue
            order.append(w)
            place(used | 1 << w, np_, nm)
            order.pop()

    p0 = 1 if out[0] >> first & 1 else 0
    complete = True
    try:
        place(1 | 1 << first, p0, 1 - p0)
    except _OutOfBudget:
        complete = False
    if best is None:
        return SearchResult(None, None, None, complete, nodes)
    return SearchResult(best[0], best[1], best[2], complete, nodes)


def max_discrepancy_square_hamilton(
    g: OrientedGraph,
    *,
    max_nodes: int | None = None,
    max_seconds: float | None = None,
    jobs: int = 1,
) -> SearchResult:
    """Square of a Hamilton cycle maximising sigma_max, by branch and bound.

    Vertex 0 is fixed first and reflections are quotiented out.  A branch is
    cut when its current larger direction plus every unplaced slot cannot
    reach the incumbent.  ``certified_optimal`` is False when a budget ran out;
    an absent ordering with ``certified_optimal`` True means no square
    Hamilton cycle exists.
    """
    n = g.n
    if n < 5:
        raise SearchError("N_TOO_SMALL", f"square Hamilton search needs n >= 5, got {n}")
    deadline = time.monotonic() + max_seconds if max_seconds is not None else None
    firsts = [v for v in range(1, n) if g.nbrs(0) >> v & 1]
    per_branch = max_nodes
    if max_nodes is not None and jobs > 1:
        per_branch = max(1, max_nodes // max(1, len(firsts)))
    if jobs > 1:
        parts = parallel_map(_branch, [(g, v, per_branch, deadline) for v in firsts], jobs)
    else:
        parts = []
        spent = 0
        for v in firsts:
            left = None if max_nodes is None else max_nodes - spent
            if left is not None and left <= 0:
                parts.append(SearchResult(None, None, None, False, 0))
                continue
            part = _branch((g, v, left, deadline))
            spent += part.nodes
            parts.append(part)
    complete = all(p.certified_optimal for p in parts)
    nodes = sum(p.nodes for p in parts)
    found = [p for p in parts if p.ordering is not None]
    if not found:
        return SearchResult(None, None, None, complete, nodes)
    top = max(p.value for p in found)
    winner = min((p for p in found if p.value == top), key=lambda p: p.ordering)
    return SearchResult(winner.ordering, winner.sigma_plus, winner.sigma_minus, complete, nodes)


def square_hamilton_orderings(g: OrientedGraph) -> Iterator[tuple[int, ...]]:
    """Every square Hamilton cycle ordering starting at vertex 0, both directions.

    Only adjacency is used to extend partial orderings; no bounds, no
    symmetry reduction.
    """
    n = g.n
    nb = [g.nbrs(v) for v in range(n)]
    order = [0]

    def grow(used: int) -> Iterator[tuple[int, ...]]:
        k = len(order)
        if k == n:
            last, prev = order[-1], order[-2]
            if nb[last] & 1 and nb[prev] & 1 and nb[last] >> order[1] & 1:
                yield tuple(order)
            return
        cand = nb[order[-1]] & ~used
        if k >= 2:
            cand &= nb[order[-2]]
        while cand:
            w = (cand & -cand).bit_length() - 1
            cand &= cand - 1
            order.append(w)
            yield from grow(used | 1 << w)
            order.pop()

    if n >= 3:
        yield from grow(1)
