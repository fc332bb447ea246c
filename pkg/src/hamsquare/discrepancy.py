"""Forward/backward slot accounting for 2-paths and Hamilton square couplings."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import LayoutError
from .graph import OrientedGraph

SQUARE_CYCLE = "square-cycle"
CLIPPED_PATH = "clipped-path"


@dataclass(frozen=True)
class SlotCount:
    sigma_plus: int
    sigma_minus: int

    @property
    def total(self) -> int:
        return self.sigma_plus + self.sigma_minus

    @property
    def sigma_max(self) -> int:
        return max(self.sigma_plus, self.sigma_minus)

    @property
    def sigma_min(self) -> int:
        return min(self.sigma_plus, self.sigma_minus)

    def swapped(self) -> SlotCount:
        return SlotCount(self.sigma_minus, self.sigma_plus)


def sigma_max(c: SlotCount) -> int:
    return c.sigma_max


def sigma_min(c: SlotCount) -> int:
    return c.sigma_min


def family_sigma_max(counts: Iterable[SlotCount]) -> int:
    return sum(c.sigma_max for c in counts)


def _check_ordering(ordering: Sequence[int], n: int | None = None) -> None:
    if len(set(ordering)) != len(ordering):
        raise LayoutError("REPEATED_VERTEX", f"ordering {tuple(ordering)} repeats a vertex")
    if n is not None and sorted(ordering) != list(range(n)):
        raise LayoutError("NOT_PERMUTATION", f"ordering {tuple(ordering)} is not a permutation of 0..{n - 1}")


def square_cycle_slots(ordering: Sequence[int]) -> list[tuple[int, int]]:
    n = len(ordering)
    return [(ordering[i], ordering[(i + j) % n]) for j in (1, 2) for i in range(n)]


def path_slots(path: Sequence[int]) -> list[tuple[int, int]]:
    ell = len(path)
    return [(path[i], path[i + j]) for j in (1, 2) for i in range(ell - j)]


def clipped_path_slots(ordering: Sequence[int]) -> list[tuple[int, int]]:
    """Slots of the 2-path ``v1..vn v1' v2'`` in the 2-blow-up minus ``v1'v2'``.

    Copies are resolved to their originals, so pairs may repeat with either
    orientation (for n = 3 every pair appears both ways).
    """
    seq = list(ordering) + [ordering[0], ordering[1]]
    slots = path_slots(seq)
    # distance-1 slots come first, so the final one is the copy edge v1'v2'
    del slots[len(seq) - 2]
    return slots


@dataclass(frozen=True)
class CouplingLayout:
    ordering: tuple[int, ...]
    kind: str

    def __post_init__(self) -> None:
        _check_ordering(self.ordering)
        n = len(self.ordering)
        if self.kind == SQUARE_CYCLE and n < 5:
            raise LayoutError("LAYOUT_TOO_SMALL", f"square-cycle layouts need n >= 5, got {n}")
        if self.kind == CLIPPED_PATH and n not in (3, 4):
            raise LayoutError("BAD_LAYOUT_KIND", f"clipped-path layouts are for n in {{3, 4}}, got {n}")
        if self.kind not in (SQUARE_CYCLE, CLIPPED_PATH):
            raise LayoutError("BAD_LAYOUT_KIND", f"unknown layout kind {self.kind!r}")

    @classmethod
    def for_ordering(cls, ordering: Sequence[int]) -> CouplingLayout:
        """The coupling layout appropriate for ``len(ordering)``."""
        n = len(ordering)
        if n < 3:
            raise LayoutError("LAYOUT_TOO_SMALL", f"couplings start at n = 3, got {n}")
        return cls(tuple(ordering), CLIPPED_PATH if n < 5 else SQUARE_CYCLE)

    @property
    def n(self) -> int:
        return len(self.ordering)

    def slots(self) -> list[tuple[int, int]]:
        if self.kind == SQUARE_CYCLE:
            return square_cycle_slots(self.ordering)
        return clipped_path_slots(self.ordering)


def count_slots(g: OrientedGraph, slots: Iterable[tuple[int, int]]) -> SlotCount:
    plus = minus = 0
    for x, y in slots:
        if g.has_arc(x, y):
            plus += 1
        elif g.has_arc(y, x):
            minus += 1
        else:
            raise LayoutError("MISSING_EDGE", f"slot ({x}, {y}) is not an edge of the underlying graph", (x, y))
    return SlotCount(plus, minus)


def slot_counts(g: OrientedGraph, layout: CouplingLayout) -> SlotCount:
    if max(layout.ordering) >= g.n:
        raise LayoutError("VERTEX_RANGE", f"layout references a vertex outside 0..{g.n - 1}")
    return count_slots(g, layout.slots())


def path_slot_counts(g: OrientedGraph, path: Sequence[int]) -> SlotCount:
    _check_ordering(path)
    return count_slots(g, path_slots(path))


def verify_square_hamilton(g: OrientedGraph, ordering: Sequence[int]) -> SlotCount:
    """Check that ``ordering`` spans a square of a Hamilton cycle in ``g``.

    Raises :class:`LayoutError` naming the first missing slot.
    """
    _check_ordering(ordering, g.n)
    if g.n < 5:
        raise LayoutError("LAYOUT_TOO_SMALL", f"square cycles need n >= 5, got {g.n}")
    return count_slots(g, square_cycle_slots(ordering))
