"""Linearized least-squares multilateration.

Squared-range equations are linearized by subtracting a reference anchor's
equation, giving A l = b with one row per non-reference anchor:

    row k:  2 * (p_k - p_r)          (matrix A)
            d_r^2 - d_k^2 + |p_k|^2 - |p_r|^2   (vector b)

The system is solved in the minimum-norm least-squares sense.  For a
constant-altitude track the z column of A is identically zero, so the
altitude coordinate of the estimate is pinned to 0, which matches a
ground-level source.  Systems whose row space has rank < 2 (collinear
anchors) are flagged invalid rather than solved.
"""

from dataclasses import dataclass, field

import numpy as np

# singular values below RCOND * s_max are treated as zero (condition cutoff 1e10)
RCOND = 1e-10

REFERENCE_MODES = ("srl", "drl")


@dataclass(frozen=True)
class AnchorSet:
    indices: tuple  # waypoint indices (1-based), order is meaningful
    reference: int

    def __post_init__(self):
        idx = tuple(int(i) for i in self.indices)
        object.__setattr__(self, "indices", idx)
        if len(idx) < 3:
            raise ValueError("anchor set needs at least 3 indices")
        if len(set(idx)) != len(idx):
            raise ValueError("anchor indices must be unique")
        if self.reference not in idx:
            raise ValueError("reference must be a member of the anchor set")


@dataclass(frozen=True)
class Estimate:
    location: np.ndarray  # (3,)
    residual: float  # L1 relative residual; +inf when invalid/undefined
    at_index: int  # trajectory cursor the estimate was formed at
    valid: bool
    reason: str = field(default="")


def _validate_upsilon(upsilon, n_available):
    idx = [int(i) for i in upsilon]
    if len(idx) < 3:
        raise ValueError("anchor set needs at least 3 indices")
    if len(set(idx)) != len(idx):
        raise ValueError("anchor indices must be unique")
    for i in idx:
        if not 1 <= i <= n_available:
            raise ValueError(f"anchor index {i} out of range 1..{n_available}")
    return idx


def select_reference(upsilon, est_ranges, mode):
    """Reference anchor index for linearization.

    srl: first element of upsilon.  drl: element with the smallest measured
    range, ties going to the smaller waypoint index.
    """
    est_ranges = np.asarray(est_ranges, dtype=float)
    idx = _validate_upsilon(upsilon, len(est_ranges))
    if mode not in REFERENCE_MODES:
        raise ValueError(f"unknown reference mode {mode!r}")
    if mode == "srl":
        return idx[0]
    return min(idx, key=lambda i: (est_ranges[i - 1], i))


def build_system(upsilon, reference, positions, est_ranges):
    """Assemble (A, b) for the anchor set, rows in upsilon order, reference skipped."""
    positions = np.asarray(positions, dtype=float)
    est_ranges = np.asarray(est_ranges, dtype=float)
    idx = _validate_upsilon(upsilon, len(positions))
    if reference not in idx:
        raise ValueError("reference must be a member of the anchor set")
    p_r = positions[reference - 1]
    d2_r = est_ranges[reference - 1] ** 2
    lam = float(p_r @ p_r)
    rows_a = []
    rows_b = []
    for i in idx:
        if i == reference:
            continue
        p = positions[i - 1]
        rows_a.append(2.0 * (p - p_r))
        rows_b.append(d2_r - est_ranges[i - 1] ** 2 + float(p @ p) - lam)
    return np.array(rows_a), np.array(rows_b)


def solve_system(a, b):
    """Minimum-norm least-squares solution of A l = b.

    Returns (location, rank) with rank the number of singular values above
    the condition cutoff; rank < 2 means the anchor geometry is degenerate.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.ndim != 2 or a.shape[1] != 3 or a.shape[0] < 2:
        raise ValueError("A must be (m, 3) with m >= 2")
    location, _, rank, _ = np.linalg.lstsq(a, b, rcond=RCOND)
    return location, int(rank)


def relative_residual(a, b, location):
    """L1 misfit |b - A l|_1 / |b|_1; 0/0 is 0, otherwise a zero |b|_1 gives +inf."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    num = float(np.abs(b - a @ np.asarray(location, dtype=float)).sum())
    den = float(np.abs(b).sum())
    if den == 0.0:
        return 0.0 if num == 0.0 else float("inf")
    return num / den


def localize(upsilon, positions, est_ranges, mode="drl", at_index=None):
    """Reference selection, linearization and solve for one anchor set."""
    upsilon = tuple(int(i) for i in upsilon)
    if at_index is None:
        at_index = max(upsilon)
    try:
        reference = select_reference(upsilon, est_ranges, mode)
        a, b = build_system(upsilon, reference, positions, est_ranges)
        location, rank = solve_system(a, b)
    except ValueError as exc:
        return Estimate(
            location=np.full(3, np.nan),
            residual=float("inf"),
            at_index=at_index,
            valid=False,
            reason=str(exc),
        )
    if rank < 2:
        return Estimate(
            location=location,
            residual=float("inf"),
            at_index=at_index,
            valid=False,
            reason="rank-deficient anchor geometry",
        )
    return Estimate(
        location=location,
        residual=relative_residual(a, b, location),
        at_index=at_index,
        valid=True,
    )


def debug_dump(upsilon, positions, est_ranges, mode="drl", at_index=None):
    """JSON-friendly record of one solve: anchor set, reference, A, b, l, R."""
    estimate = localize(upsilon, positions, est_ranges, mode=mode, at_index=at_index)
    reference = select_reference(upsilon, est_ranges, mode)
    a, b = build_system(upsilon, reference, positions, est_ranges)
    return {
        "upsilon": [int(i) for i in upsilon],
        "reference": int(reference),
        "A": a.tolist(),
        "b": b.tolist(),
        "location": [None if not np.isfinite(v) else float(v) for v in estimate.location],
        "residual": None if not np.isfinite(estimate.residual) else float(estimate.residual),
        "valid": bool(estimate.valid),
    }
