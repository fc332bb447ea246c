"""Exact search and verification for oriented discrepancy of squared Hamilton cycles."""

__version__ = "0.1.0"

from .graph import (  # noqa: E402
    OrientedGraph,
    UnderlyingGraph,
    VertexSetPair,
    blow_up,
    degrees,
    min_total_degree,
    parse_matrix_line,
    serialize_matrix_line,
    underlying,
)
from .tournaments import Tournament, are_isomorphic, canonical_form, enumerate_tournaments  # noqa: E402
from .discrepancy import (  # noqa: E402
    CouplingLayout,
    SlotCount,
    family_sigma_max,
    path_slot_counts,
    sigma_max,
    sigma_min,
    slot_counts,
    verify_square_hamilton,
)
from .constants import (  # noqa: E402
    NTable,
    best_coupling_value,
    compute_constants,
    longest_square_directed_path,
    worst_coupling_deficit,
)
from .bounds import f_bound, g_bound, n_min_check, tiling_profile, verify_extremal_witness  # noqa: E402
