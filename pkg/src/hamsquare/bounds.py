"""Closed-form tiling and discrepancy bounds, evaluated in exact arithmetic.

The clique size ``r`` is read straight off ``delta / n``: ``r`` is valid when
``(1 - 1/(r-1)) n <= delta <= (1 - 1/r) n``, which in integers is
``A_r >= 0`` and ``Abar_r >= 0``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .constants import NTable
from .errors import BoundError
from .graph import OrientedGraph, VertexSetPair

NEAR_THRESHOLD = "near-threshold"
GENERAL = "general"


@dataclass(frozen=True)
class TilingProfile:
    n: int
    delta: int
    r: int
    a_r: int
    a_bar_r: int

    @property
    def tiles(self) -> int:
        return self.a_r + self.a_bar_r


def _a(n: int, delta: int, r: int) -> tuple[int, int]:
    return (r - 1) * delta - (r - 2) * n, (r - 1) * n - r * delta


def tiling_profile(n: int, delta: int, r: int | None = None) -> TilingProfile:
    """Smallest ``r >= 2`` whose window holds ``delta``, with its tile counts.

    Passing ``r`` checks that window instead of searching.
    """
    if n < 1 or delta < 0:
        raise BoundError("NEGATIVE_INPUT", f"need n >= 1 and delta >= 0, got n={n}, delta={delta}")
    if delta > n - 1:
        raise BoundError("DELTA_TOO_LARGE", f"delta={delta} exceeds n-1={n - 1}")
    if r is not None:
        if r < 2:
            raise BoundError("BAD_R", f"r must be >= 2, got {r}")
        a, a_bar = _a(n, delta, r)
        if a < 0 or a_bar < 0:
            raise BoundError("OUTSIDE_WINDOW", f"delta={delta} is outside the r={r} window for n={n}")
        return TilingProfile(n, delta, r, a, a_bar)
    for r in range(2, n + 2):
        a, a_bar = _a(n, delta, r)
        if a >= 0 and a_bar >= 0:
            return TilingProfile(n, delta, r, a, a_bar)
    # r = n always fits 0 <= delta <= n-1
    raise AssertionError(f"no window for n={n}, delta={delta}")


def _n_or_zero(table: NTable, k: int, coeff: int) -> int:
    # an entry multiplied by zero may be absent (e.g. N_2 at delta = 2n/3)
    if coeff == 0 and k not in table:
        return 0
    return table.N(k)


def g_bound(n: int, delta: int, table: NTable | None = None, r: int | None = None) -> int:
    """``A_r N_r + Abar_r N_{r-1}``, cross-checked against its expanded form."""
    table = table or NTable.default()
    p = tiling_profile(n, delta, r)
    n_r = _n_or_zero(table, p.r, p.a_r)
    n_r1 = _n_or_zero(table, p.r - 1, p.a_bar_r)
    main = p.a_r * n_r + p.a_bar_r * n_r1
    r_ = p.r
    expanded = ((r_ - 1) * n_r - r_ * n_r1) * delta - ((r_ - 2) * n_r - (r_ - 1) * n_r1) * n
    if main != expanded:
        raise BoundError("FORM_MISMATCH", f"tile form {main} != expanded form {expanded}")
    return main


def n_min_check(r: int, table: NTable | None = None) -> int:
    """``min(N_r - r, N_{r-1} - (r-1))``, the per-tile excess over one slot per vertex."""
    table = table or NTable.default()
    return min(table.N(r) - r, table.N(r - 1) - (r - 1))


def n_min_as_printed(r: int, table: NTable | None = None) -> int:
    """``min(N_r - r, N_r - (r-1))``: the other reading, which reduces to ``N_r - r``."""
    table = table or NTable.default()
    return min(table.N(r) - r, table.N(r) - (r - 1))


@dataclass(frozen=True)
class BoundProfile:
    n: int
    delta: int
    regime: str
    r: int
    a_r: int
    a_bar_r: int
    f_value: int
    g_value: int | None
    n_min: int | None
    alpha: Fraction
    xi: Fraction
    d_slack: Fraction

    @property
    def adjusted(self) -> Fraction:
        """``f - xi*n - d_slack*n``."""
        return self.f_value - (self.xi + self.d_slack) * self.n

    @property
    def guaranteed(self) -> Fraction:
        """``max(n, f - xi*n - d_slack*n)``."""
        return max(Fraction(self.n), self.adjusted)


def f_bound(
    n: int,
    delta: int,
    alpha: Fraction | int | str,
    table: NTable | None = None,
    xi: Fraction | int | str = 0,
    d_slack: Fraction | int | str = 0,
) -> BoundProfile:
    """Piecewise lower-bound function: ``3 delta - n`` near ``2n/3``, else ``g``."""
    table = table or NTable.default()
    alpha, xi, d_slack = Fraction(alpha), Fraction(xi), Fraction(d_slack)
    if alpha <= 0:
        raise BoundError("BAD_ALPHA", f"alpha must be positive, got {alpha}")
    if 3 * delta < 2 * n:
        raise BoundError("BELOW_THRESHOLD", f"delta={delta} is below 2n/3 for n={n}")
    p = tiling_profile(n, delta)
    near = 3 * delta <= (2 + 4 * alpha) * n
    try:
        g = g_bound(n, delta, table)
    except BoundError:
        if not near:
            raise
        g = None
    try:
        n_min = n_min_check(p.r, table)
    except BoundError:
        n_min = None
    f = 3 * delta - n if near else g
    return BoundProfile(n, delta, NEAR_THRESHOLD if near else GENERAL, p.r, p.a_r, p.a_bar_r,
                        f, g, n_min, alpha, xi, d_slack)


def cross_edges(g: OrientedGraph, a: frozenset[int] | set[int], b: frozenset[int] | set[int]) -> int:
    """Ordered pairs ``(x, y)`` in ``a x b``, ``x != y``, joined in the underlying graph."""
    bmask = sum(1 << v for v in b)
    return sum((g.nbrs(x) & bmask).bit_count() for x in a)


def verify_extremal_witness(g: OrientedGraph, pair: VertexSetPair, alpha: Fraction | int | str) -> bool:
    """Both sets sized in ``[(1/3 - alpha) n, n/3]`` with cross density below ``alpha``."""
    alpha = Fraction(alpha)
    a, b = pair.a, pair.b
    if not a or not b:
        raise BoundError("EMPTY_SET", "witness sets must be non-empty")
    if any(not 0 <= v < g.n for v in a | b):
        raise BoundError("VERTEX_RANGE", f"witness sets must lie in 0..{g.n - 1}")
    n = g.n
    lo = (Fraction(1, 3) - alpha) * n
    for s in (a, b):
        if not (lo <= len(s) and 3 * len(s) <= n):
            return False
    return cross_edges(g, a, b) < alpha * len(a) * len(b)


def bounds_rows(
    n: int,
    deltas: list[int],
    alpha: Fraction,
    xi: Fraction = Fraction(0),
    table: NTable | None = None,
    d_slack: Fraction = Fraction(0),
) -> list[dict]:
    table = table or NTable.default()
    rows = []
    for delta in deltas:
        p = tiling_profile(n, delta)
        try:
            g = g_bound(n, delta, table)
        except BoundError:
            g = None
        try:
            n_min = n_min_check(p.r, table)
        except BoundError:
            n_min = None
        f = regime = adjusted = None
        if 3 * delta >= 2 * n:
            try:
                b = f_bound(n, delta, alpha, table, xi, d_slack)
                f, regime, adjusted = b.f_value, b.regime, b.adjusted
            except BoundError:
                pass
        rows.append({"n": n, "delta": delta, "r": p.r, "A_r": p.a_r, "Abar_r": p.a_bar_r,
                     "g": g, "f": f, "regime": regime, "N_min": n_min, "f_adjusted": adjusted})
    return rows
