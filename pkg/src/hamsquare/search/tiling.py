"""Exact mixed clique tilings and an independent certificate checker."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from ..errors import SearchError
from ..graph import OrientedGraph


@dataclass(frozen=True)
class TilingCertificate:
    tiles: tuple[tuple[int, ...], ...]

    def to_json(self) -> dict:
        return {"tiles": [list(t) for t in self.tiles]}

    @classmethod
    def from_json(cls, obj: dict) -> TilingCertificate:
        return cls(tuple(tuple(t) for t in obj["tiles"]))


@dataclass(frozen=True)
class Verdict:
    ok: bool
    reason: str = "OK"

    def __bool__(self) -> bool:
        return self.ok


def cliques(g: OrientedGraph, k: int) -> list[int]:
    """Bitmasks of all k-cliques of the underlying graph."""
    if k <= 0:
        return [0]
    found = []

    def grow(mask: int, cand: int, size: int) -> None:
        if size == k:
            found.append(mask)
            return
        while cand:
            v = (cand & -cand).bit_length() - 1
            cand &= cand - 1
            # only higher-labelled neighbours, so each clique is built once
            grow(mask | 1 << v, cand & g.nbrs(v), size + 1)

    grow(0, (1 << g.n) - 1, 0)
    return found


def _members(mask: int) -> tuple[int, ...]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


def find_mixed_tiling(g: OrientedGraph, r: int, a: int, a_bar: int) -> TilingCertificate | None:
    """``a`` disjoint r-cliques and ``a_bar`` (r-1)-cliques of the underlying graph.

    Complete search: returns ``None`` only when no such tiling exists.
    """
    if r < 2 or a < 0 or a_bar < 0:
        raise SearchError("BAD_PARAMS", f"need r >= 2 and non-negative counts, got r={r}, a={a}, a_bar={a_bar}")
    need = r * a + (r - 1) * a_bar
    if need > g.n:
        raise SearchError("INFEASIBLE_COUNTS", f"{r}*{a} + {r - 1}*{a_bar} = {need} > n = {g.n}")
    big = cliques(g, r) if a else []
    small = cliques(g, r - 1) if a_bar else []
    by_vertex_big = [[c for c in big if c >> v & 1] for v in range(g.n)]
    by_vertex_small = [[c for c in small if c >> v & 1] for v in range(g.n)]
    full = (1 << g.n) - 1
    dead: set[tuple[int, int, int]] = set()
    chosen: list[int] = []

    def options(v: int, used: int, a_left: int, b_left: int) -> list[int]:
        opts = [c for c in by_vertex_big[v] if not c & used] if a_left else []
        if b_left:
            opts += [c for c in by_vertex_small[v] if not c & used]
        return opts

    def solve(used: int, a_left: int, b_left: int) -> bool:
        if not a_left and not b_left:
            return True
        state = (used, a_left, b_left)
        if state in dead:
            return False
        covered = used.bit_count()
        slack = g.n - covered - r * a_left - (r - 1) * b_left
        best_v, best_opts = -1, None
        rest = full & ~used
        while rest:
            v = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            opts = options(v, used, a_left, b_left)
            if best_opts is None or len(opts) < len(best_opts):
                best_v, best_opts = v, opts
                if len(opts) <= (0 if slack else 1):
                    break
        assert best_opts is not None
        for c in best_opts:
            size = c.bit_count()
            chosen.append(c)
            if solve(used | c, a_left - (size == r), b_left - (size == r - 1)):
                return True
            chosen.pop()
        # leave best_v uncovered
        if slack and solve(used | 1 << best_v, a_left, b_left):
            return True
        dead.add(state)
        return False

    if not solve(0, a, a_bar):
        return None
    tiles = sorted((_members(c) for c in chosen), key=lambda t: (-len(t), t))
    return TilingCertificate(tuple(tiles))


def verify_tiling(g: OrientedGraph, cert: TilingCertificate, r: int, a: int, a_bar: int) -> Verdict:
    """Check disjointness, tile sizes and counts, and that every tile is a clique."""
    seen: set[int] = set()
    sizes = {r: 0, r - 1: 0}
    for tile in cert.tiles:
        if len(tile) not in sizes:
            return Verdict(False, "WRONG_SIZE")
        sizes[len(tile)] += 1
        for v in tile:
            if not 0 <= v < g.n:
                return Verdict(False, "VERTEX_RANGE")
            if v in seen:
                return Verdict(False, "OVERLAP")
            seen.add(v)
        for u, v in combinations(tile, 2):
            if not (g.has_arc(u, v) or g.has_arc(v, u)):
                return Verdict(False, "NOT_COMPLETE")
    if (sizes[r], sizes[r - 1]) != (a, a_bar):
        return Verdict(False, "COUNT_MISMATCH")
    return Verdict(True)
