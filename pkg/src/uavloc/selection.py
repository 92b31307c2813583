"""Anchor-set formation strategies over a growing waypoint prefix.

Each function maps the trajectory cursor (the index of the newest visited
waypoint) to the ordered tuple of waypoint indices fed to the LLS solver:

    con / con_i / con_ii  three recent points with gap 1/2/3, falling back
                          one step when the relative residual worsens
    cum                   every visited waypoint
    fml                   first, middle and newest waypoint
    fmlm                  first and newest plus the waypoint maximizing the
                          summed distance to both
    chlm                  corners of the convex hull of the visited prefix
                          (3..5 points; fml when the prefix is collinear)
    cls                   the three smallest measured ranges

The con family is stateful: SelectionState remembers the residual of the
set accepted at the previous cursor.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .geometry import are_collinear, convex_hull
from .lls import localize

ALGORITHMS = ("con", "con_i", "con_ii", "cum", "fml", "fmlm", "chlm", "cls")

CON_GAPS = {"con": 1, "con_i": 2, "con_ii": 3}

CHLM_MAX_POINTS = 5


def canonical_algorithm(name):
    token = str(name).strip().lower().replace("-", "_")
    if token not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {name!r}; expected one of {ALGORITHMS}")
    return token


def warmup_index(algorithm):
    """Smallest cursor at which the algorithm can form an anchor set."""
    algorithm = canonical_algorithm(algorithm)
    if algorithm in CON_GAPS:
        return 1 + 2 * CON_GAPS[algorithm]
    return 3


@dataclass
class SelectionState:
    """Per-run memory for the con family's residual hill-descent."""

    algorithm: str
    last_residual: float = math.inf  # residual of the previously accepted set
    last_upsilon: tuple = field(default=())

    def __post_init__(self):
        self.algorithm = canonical_algorithm(self.algorithm)


def select_con(state, n_tilde, positions, est_ranges, gap, mode="drl"):
    """Three points spaced `gap` apart, shifted back one step on residual rise.

    Returns None below the warm-up cursor.  The candidate set
    {n, n-gap, n-2*gap} is kept if its relative residual does not exceed the
    residual remembered from the previous cursor, otherwise the selection
    shifts to {n-1, n-1-gap, n-1-2*gap} (when feasible).  The accepted set's
    residual replaces the remembered one.
    """
    if gap not in (1, 2, 3):
        raise ValueError("gap must be 1, 2 or 3")
    if n_tilde < 1 + 2 * gap:
        return None
    primary = (n_tilde, n_tilde - gap, n_tilde - 2 * gap)
    est_primary = localize(primary, positions, est_ranges, mode=mode, at_index=n_tilde)
    if est_primary.residual <= state.last_residual or n_tilde < 2 + 2 * gap:
        chosen, chosen_residual = primary, est_primary.residual
    else:
        shifted = (n_tilde - 1, n_tilde - 1 - gap, n_tilde - 1 - 2 * gap)
        est_shifted = localize(shifted, positions, est_ranges, mode=mode, at_index=n_tilde)
        chosen, chosen_residual = shifted, est_shifted.residual
    state.last_residual = chosen_residual
    state.last_upsilon = chosen
    return chosen


def select_cum(n_tilde):
    """All visited waypoints 1..n_tilde."""
    _check_cursor(n_tilde)
    return tuple(range(1, n_tilde + 1))


def select_fml(n_tilde):
    """First, middle (round-half-up) and newest waypoint."""
    _check_cursor(n_tilde)
    return (1, (n_tilde + 2) // 2, n_tilde)


def select_fmlm(n_tilde, positions):
    """First and newest waypoint plus the interior point m maximizing
    dist(1, m) + dist(m, n_tilde); ties go to the smallest m."""
    _check_cursor(n_tilde)
    positions = np.asarray(positions, dtype=float)
    first = positions[0]
    last = positions[n_tilde - 1]
    candidates = positions[1 : n_tilde - 1]
    total = np.linalg.norm(candidates - first, axis=1) + np.linalg.norm(
        candidates - last, axis=1
    )
    m = int(np.argmax(total)) + 2  # argmax takes the first maximum -> smallest m
    return (1, m, n_tilde)


def select_chlm(n_tilde, positions):
    """Convex-hull corners of the visited prefix projected to the ground.

    Collinear prefixes fall back to fml.  Hulls with more than five corners
    are reduced to five by greedy farthest-point selection seeded with the
    smallest-index corner.  The result is in ascending index order.
    """
    _check_cursor(n_tilde)
    ground = np.asarray(positions, dtype=float)[:n_tilde, :2]
    if are_collinear(ground):
        return select_fml(n_tilde)
    hull = sorted(h + 1 for h in convex_hull(ground))  # to 1-based waypoint indices
    if len(hull) > CHLM_MAX_POINTS:
        hull = _farthest_point_subset(hull, ground, CHLM_MAX_POINTS)
    return tuple(hull)


def _farthest_point_subset(indices, ground, k):
    chosen = [indices[0]]  # indices are ascending, so this is the smallest
    remaining = list(indices[1:])
    while len(chosen) < k:
        best = None
        best_gap = -1.0
        for idx in remaining:  # ascending order makes ties pick the smaller index
            gap = min(
                float(np.linalg.norm(ground[idx - 1] - ground[c - 1])) for c in chosen
            )
            if gap > best_gap:
                best, best_gap = idx, gap
        chosen.append(best)
        remaining.remove(best)
    return sorted(chosen)


def select_cls(n_tilde, est_ranges):
    """The three smallest measured ranges, ordered by (range, index)."""
    _check_cursor(n_tilde)
    est_ranges = np.asarray(est_ranges, dtype=float)
    order = sorted(range(1, n_tilde + 1), key=lambda i: (est_ranges[i - 1], i))
    return tuple(order[:3])


def select(state, n_tilde, positions, est_ranges, mode="drl"):
    """Dispatch on state.algorithm; None when the cursor is below warm-up."""
    algorithm = state.algorithm
    if n_tilde < warmup_index(algorithm):
        return None
    if algorithm in CON_GAPS:
        return select_con(
            state, n_tilde, positions, est_ranges, CON_GAPS[algorithm], mode=mode
        )
    if algorithm == "cum":
        return select_cum(n_tilde)
    if algorithm == "fml":
        return select_fml(n_tilde)
    if algorithm == "fmlm":
        return select_fmlm(n_tilde, positions)
    if algorithm == "chlm":
        return select_chlm(n_tilde, positions)
    return select_cls(n_tilde, est_ranges)


def _check_cursor(n_tilde):
    if n_tilde < 3:
        raise ValueError("at least 3 visited waypoints are required")
