"""Seeded random oriented graphs for test corpora."""

from __future__ import annotations

import numpy as np

from ..errors import SearchError
from ..graph import OrientedGraph, min_total_degree

# Recorded in every report that uses generated graphs.
PRNG = "numpy.random.PCG64"
GENERATOR_VERSION = 1


def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def _orient(n: int, keep: np.ndarray, coins: np.ndarray) -> OrientedGraph:
    rows = [0] * n
    iu, ju = np.triu_indices(n, 1)
    for i, j, k, c in zip(iu.tolist(), ju.tolist(), keep.tolist(), coins.tolist()):
        if not k:
            continue
        if c:
            rows[i] |= 1 << j
        else:
            rows[j] |= 1 << i
    return OrientedGraph(n, tuple(rows))


def random_tournament(n: int, seed: int) -> OrientedGraph:
    rng = _rng(seed)
    m = n * (n - 1) // 2
    return _orient(n, np.ones(m, dtype=bool), rng.random(m) < 0.5)


def random_min_degree_graph(n: int, delta_target: int, seed: int, max_attempts: int = 2000) -> OrientedGraph:
    """Random orientation of a random graph with minimum total degree >= delta_target.

    Edge probability starts at ``delta_target / (n-1)`` and creeps upward
    every few rejected samples, so every seed terminates quickly unless the
    target is unreachable.
    """
    if n < 1 or not 0 <= delta_target <= n - 1:
        raise SearchError("BAD_PARAMS", f"need 0 <= delta_target <= n-1, got n={n}, delta_target={delta_target}")
    if delta_target == n - 1:
        return random_tournament(n, seed)
    rng = _rng(seed)
    m = n * (n - 1) // 2
    p0 = delta_target / (n - 1)
    for attempt in range(max_attempts):
        p = min(1.0, p0 + 0.01 * (attempt // 4))
        keep = rng.random(m) < p
        coins = rng.random(m) < 0.5
        g = _orient(n, keep, coins)
        if n == 1 or min_total_degree(g) >= delta_target:
            return g
    raise SearchError("ATTEMPTS_EXHAUSTED", f"no graph with n={n}, min degree >= {delta_target} "
                                            f"after {max_attempts} attempts (seed {seed})")
