"""Isomorph-free enumeration of tournaments.

Canonical keys follow the degree-grouped maximisation: vertices are sorted by
out-degree, and the key is the lexicographically greatest row-major
adjacency flattening over all relabellings that only permute vertices
within an out-degree class.  Keys are returned as ints (first matrix entry
is the most significant bit), so integer order is lexicographic order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

import numpy as np

from .errors import GraphError, UnsupportedSizeError
from .graph import OrientedGraph
from .parallel import parallel_map

MAX_ENUM_N = 8
# n at or above this needs allow_large=True
LARGE_N = 8


@dataclass(frozen=True)
class Tournament:
    graph: OrientedGraph
    canonical_key: int

    @classmethod
    def from_graph(cls, g: OrientedGraph) -> Tournament:
        return cls(g, canonical_form(g))

    @property
    def n(self) -> int:
        return self.graph.n

    def key_bits(self) -> str:
        return format(self.canonical_key, f"0{self.n * self.n}b")


@lru_cache(maxsize=None)
def _within_group_perms(sizes: tuple[int, ...]) -> np.ndarray:
    """All positional permutations that only shuffle inside consecutive blocks."""
    blocks = []
    start = 0
    for s in sizes:
        blocks.append(list(itertools.permutations(range(start, start + s))))
        start += s
    rows = [sum(choice, ()) for choice in itertools.product(*blocks)]
    return np.array(rows, dtype=np.intp).reshape(len(rows), start)


@lru_cache(maxsize=None)
def _weights(n: int) -> np.ndarray:
    return np.array([1 << (n * n - 1 - i) for i in range(n * n)], dtype=np.uint64)


def _as_matrix(g: OrientedGraph | Tournament) -> np.ndarray:
    if isinstance(g, Tournament):
        g = g.graph
    return np.array(g.matrix(), dtype=np.uint8).reshape(g.n, g.n)


def _best_relabelling(adj: np.ndarray) -> tuple[int, np.ndarray]:
    n = adj.shape[0]
    outdeg = adj.sum(axis=1)
    order = np.array(sorted(range(n), key=lambda v: outdeg[v]), dtype=np.intp)
    sizes = tuple(len(list(grp)) for _, grp in itertools.groupby(outdeg[order]))
    perms = order[_within_group_perms(sizes)]
    flat = adj[perms[:, :, None], perms[:, None, :]].reshape(len(perms), n * n)
    if n * n <= 64:
        keys = flat.astype(np.uint64) @ _weights(n)
        i = int(np.argmax(keys))
        return int(keys[i]), perms[i]
    # lexsort treats the last key as primary
    i = int(np.lexsort(flat.T[::-1])[-1])
    return int("".join(map(str, flat[i])), 2), perms[i]


def canonical_form(t: OrientedGraph | Tournament) -> int:
    g = t.graph if isinstance(t, Tournament) else t
    if not g.is_tournament():
        raise GraphError("NOT_TOURNAMENT", "canonical_form needs a complete oriented graph")
    if g.n == 0:
        return 0
    return _best_relabelling(_as_matrix(g))[0]


def canonical_graph(g: OrientedGraph) -> Tournament:
    """The relabelled copy of ``g`` whose flattening is its canonical key."""
    if not g.is_tournament():
        raise GraphError("NOT_TOURNAMENT", "canonical_graph needs a complete oriented graph")
    if g.n == 0:
        return Tournament(g, 0)
    key, perm = _best_relabelling(_as_matrix(g))
    # position i of the canonical matrix holds original vertex perm[i]
    inverse = [0] * g.n
    for i, v in enumerate(perm):
        inverse[int(v)] = i
    return Tournament(g.relabel(inverse), key)


def _check_n(n: int, allow_large: bool) -> None:
    if n < 1 or n > MAX_ENUM_N:
        raise UnsupportedSizeError("UNSUPPORTED_N", f"enumeration supports 1 <= n <= {MAX_ENUM_N}, got {n}")
    if n >= LARGE_N and not allow_large:
        raise UnsupportedSizeError("LARGE_N_GATED", f"n={n} is opt-in; pass allow_large=True (--allow-large)")


def orientation(n: int, bits: int) -> OrientedGraph:
    """Tournament from an upper-triangle bit pattern.

    Pair ``(i, j)``, ``i < j``, in row-major order has index ``idx``; bit
    ``idx`` set means ``i -> j``, clear means ``j -> i``.
    """
    rows = [0] * n
    idx = 0
    for i in range(n):
        for j in range(i + 1, n):
            if bits >> idx & 1:
                rows[i] |= 1 << j
            else:
                rows[j] |= 1 << i
            idx += 1
    return OrientedGraph(n, tuple(rows))


def _scan_chunk(args: tuple[int, int, int]) -> dict[int, int]:
    n, lo, hi = args
    first: dict[int, int] = {}
    for bits in range(lo, hi):
        key = _best_relabelling(_as_matrix(orientation(n, bits)))[0]
        if key not in first:
            first[key] = bits
    return first


def _scan(n: int, jobs: int) -> list[tuple[int, int]]:
    """(key, first bit pattern) per class, in discovery order."""
    total = 1 << (n * (n - 1) // 2)
    chunk = max(1, min(total, 1 << 12))
    tasks = [(n, lo, min(lo + chunk, total)) for lo in range(0, total, chunk)]
    first: dict[int, int] = {}
    for part in parallel_map(_scan_chunk, tasks, jobs):
        for key, bits in part.items():
            if key not in first or bits < first[key]:
                first[key] = bits
    return sorted(first.items(), key=lambda kv: kv[1])


def _extend_chunk(args: tuple[tuple[int, ...], int]) -> dict[int, Tournament]:
    rows, n = args
    found: dict[int, Tournament] = {}
    for mask in range(1 << (n - 1)):
        new = [r | (0 if mask >> u & 1 else 1 << (n - 1)) for u, r in enumerate(rows)]
        new.append(mask)
        t = canonical_graph(OrientedGraph(n, tuple(new)))
        found.setdefault(t.canonical_key, t)
    return found


def _extend(n: int, jobs: int) -> list[Tournament]:
    classes = [canonical_graph(OrientedGraph.empty(1))]
    for m in range(2, n + 1):
        found: dict[int, Tournament] = {}
        for part in parallel_map(_extend_chunk, [(t.graph.out, m) for t in classes], jobs):
            for key, t in part.items():
                found.setdefault(key, t)
        classes = [found[k] for k in sorted(found)]
    return classes


def enumerate_tournaments(
    n: int,
    *,
    compat: bool = False,
    method: str = "extend",
    jobs: int = 1,
    allow_large: bool = False,
) -> list[Tournament]:
    """One tournament per isomorphism class, sorted by canonical key.

    ``compat=True`` scans all ``2**(n(n-1)/2)`` orientations and returns the
    first labelled matrix seen for each class, in discovery order.
    Otherwise each representative is the canonical relabelling itself, so
    the output does not depend on ``method``: ``"extend"`` grows classes one
    vertex at a time (every tournament minus its last vertex is a
    tournament), ``"scan"`` canonicalises every orientation.
    """
    _check_n(n, allow_large)
    if compat:
        return [Tournament(orientation(n, bits), key) for key, bits in _scan(n, jobs)]
    if method == "scan":
        return [canonical_graph(orientation(n, bits)) for _, bits in sorted(_scan(n, jobs))]
    if method != "extend":
        raise ValueError(f"unknown method {method!r}")
    return _extend(n, jobs)


# -- brute-force isomorphism (independent of canonical_form) ---------------

def _isomorphisms(a: OrientedGraph, b: OrientedGraph) -> Iterator[tuple[int, ...]]:
    n = a.n
    deg_a = [a.out[v].bit_count() for v in range(n)]
    deg_b = [b.out[v].bit_count() for v in range(n)]
    image = [-1] * n
    used = 0

    def extend(i: int) -> Iterator[tuple[int, ...]]:
        nonlocal used
        if i == n:
            yield tuple(image)
            return
        for w in range(n):
            if used >> w & 1 or deg_b[w] != deg_a[i]:
                continue
            if all(a.has_arc(i, j) == b.has_arc(w, image[j]) and a.has_arc(j, i) == b.has_arc(image[j], w)
                   for j in range(i)):
                image[i] = w
                used |= 1 << w
                yield from extend(i + 1)
                used &= ~(1 << w)
        image[i] = -1

    yield from extend(0)


def _graph(t: OrientedGraph | Tournament) -> OrientedGraph:
    return t.graph if isinstance(t, Tournament) else t


def are_isomorphic(a: OrientedGraph | Tournament, b: OrientedGraph | Tournament) -> bool:
    """Backtracking search for a vertex bijection carrying a's arcs onto b's."""
    a, b = _graph(a), _graph(b)
    if a.n != b.n:
        raise GraphError("ORDER_MISMATCH", f"orders differ: {a.n} vs {b.n}")
    if a.arc_count != b.arc_count:
        return False
    return next(_isomorphisms(a, b), None) is not None


def automorphism_count(t: OrientedGraph | Tournament) -> int:
    g = _graph(t)
    return sum(1 for _ in _isomorphisms(g, g))
