"""Evaluation criteria: RMSE tracks, flight distance to threshold, reliability.

All aggregation works on a per-trial, per-waypoint error matrix with NaN
marking steps that produced no usable estimate.  Invalid estimates are
excluded from the mean at their index and counted separately; they never
silently contribute to an RMSE value.
"""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class MetricParams:
    theta: float = 20.0  # acceptable-RMSE threshold, m
    beta: float = 1.0  # tolerated step-to-step RMSE rise, m

    def __post_init__(self):
        if self.theta <= 0:
            raise ValueError("theta must be positive")
        if self.beta < 0:
            raise ValueError("beta must be non-negative")


@dataclass(frozen=True)
class RunMetrics:
    indices: np.ndarray  # (k,) waypoint indices with at least one valid trial
    rmse: np.ndarray  # (k,)
    flight_distances: np.ndarray  # (k,)
    n_valid: np.ndarray  # (k,) valid trials per index
    n_excluded: np.ndarray  # (k,) attempted-but-invalid trials per index
    long_term_rmse: float | None  # RMSE at the final waypoint; None if undefined
    min_flight_distance: float | None  # None = threshold never durably reached
    reliability: float
    violation_count: int


def rmse_series(errors, attempted=None):
    """Per-index RMSE over trials.

    errors: (n_trials, N) with NaN where a trial has no valid estimate.
    attempted: optional (N,) bool marking indices where estimation was
    attempted at all (for exclusion counting).  Returns (indices, rmse,
    n_valid, n_excluded) with 1-based indices, restricted to indices with
    at least one valid trial.
    """
    errors = np.atleast_2d(np.asarray(errors, dtype=float))
    if errors.size == 0:
        raise ValueError("empty error matrix")
    n_trials, n_steps = errors.shape
    valid = np.isfinite(errors)
    n_valid = valid.sum(axis=0)
    if attempted is None:
        attempted = n_valid > 0
    attempted = np.asarray(attempted, dtype=bool)
    with np.errstate(invalid="ignore"):
        mean_sq = np.nansum(np.square(errors), axis=0) / np.maximum(n_valid, 1)
    keep = n_valid > 0
    indices = np.flatnonzero(keep) + 1
    n_excluded = np.where(attempted, n_trials - n_valid, 0)
    return indices, np.sqrt(mean_sq[keep]), n_valid[keep], n_excluded[keep]


def min_flight_distance(indices, rmse, trajectory, theta):
    """Flight distance at the earliest index from which RMSE stays below theta.

    The series must be below theta from that index through its end; a later
    re-crossing disqualifies earlier dips.  Returns None when no such index
    exists.
    """
    indices = np.asarray(indices, dtype=int)
    rmse = np.asarray(rmse, dtype=float)
    if len(rmse) == 0:
        return None
    below = rmse < theta
    if not below[-1]:
        return None
    # walk back over the trailing run of below-threshold values
    start = len(rmse)
    while start > 0 and below[start - 1]:
        start -= 1
    return trajectory.flight_distance(int(indices[start]))


def reliability(rmse_values, beta):
    """(gamma, violation_count): rises of at least beta between consecutive
    series entries count as violations; gamma = 1 / max(1, count)."""
    rmse_values = np.asarray(rmse_values, dtype=float)
    if len(rmse_values) < 2:
        raise ValueError("reliability needs a series of at least 2 entries")
    count = int(np.count_nonzero(rmse_values[1:] >= rmse_values[:-1] + beta))
    return 1.0 / max(1, count), count


def long_term_cdf(values):
    """Empirical CDF of long-term errors: (sorted values, step probabilities k/n)."""
    values = np.sort(np.asarray(values, dtype=float))
    if len(values) == 0:
        raise ValueError("empty sample")
    probs = np.arange(1, len(values) + 1, dtype=float) / len(values)
    return values, probs


def run_metrics(errors, attempted, trajectory, params):
    """Assemble the full metric bundle for one algorithm run."""
    indices, rmse, n_valid, n_excluded = rmse_series(errors, attempted)
    flight = np.array([trajectory.flight_distance(int(i)) for i in indices])
    long_term = float(rmse[-1]) if len(indices) and indices[-1] == trajectory.n else None
    reached = min_flight_distance(indices, rmse, trajectory, params.theta)
    if len(rmse) >= 2:
        gamma, count = reliability(rmse, params.beta)
    else:
        gamma, count = 1.0, 0
    return RunMetrics(
        indices=indices,
        rmse=rmse,
        flight_distances=flight,
        n_valid=n_valid,
        n_excluded=n_excluded,
        long_term_rmse=long_term,
        min_flight_distance=reached,
        reliability=gamma,
        violation_count=count,
    )
