"""Predefined UAV coverage track and flight-distance bookkeeping.

Waypoints are indexed 1..N in visit order.  The generator produces a
boustrophedon (parallel-track / lawnmower) sweep of a square area at a
constant altitude, which is the flight pattern every other module assumes.
"""

import csv
from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class Waypoint:
    index: int  # 1-based visit index
    position: np.ndarray  # (x, y, z) in meters


@dataclass(frozen=True)
class Trajectory:
    positions: np.ndarray  # (N, 3); row i-1 is waypoint i
    leg_length: float = field(default=0.0)

    def __post_init__(self):
        pos = np.ascontiguousarray(np.asarray(self.positions, dtype=float))
        if pos.ndim != 2 or pos.shape[1] != 3 or len(pos) == 0:
            raise ValueError("positions must be a non-empty (N, 3) array")
        if not np.isfinite(pos).all():
            raise ValueError("waypoint coordinates must be finite")
        pos.flags.writeable = False
        object.__setattr__(self, "positions", pos)

    @property
    def n(self):
        """Index of the last waypoint."""
        return len(self.positions)

    def waypoint(self, i):
        self._check_index(i)
        return Waypoint(i, self.positions[i - 1])

    @property
    def waypoints(self):
        return [Waypoint(i, self.positions[i - 1]) for i in range(1, self.n + 1)]

    def flight_distance(self, i):
        """Cumulative path length from waypoint 1 to waypoint i."""
        self._check_index(i)
        return self.leg_length * (i - 1)

    def cumulative_distances(self):
        return self.leg_length * np.arange(self.n, dtype=float)

    def _check_index(self, i):
        if not 1 <= i <= self.n:
            raise IndexError(f"waypoint index {i} out of range 1..{self.n}")

    def write_csv(self, stream):
        """Dump waypoints as `index,x_m,y_m,z_m,cum_dist_m` rows."""
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(["index", "x_m", "y_m", "z_m", "cum_dist_m"])
        for i, p in enumerate(self.positions, start=1):
            writer.writerow(
                [i, repr(p[0]), repr(p[1]), repr(p[2]), repr(self.leg_length * (i - 1))]
            )


def parallel_track(area_side, spacing, altitude=50.0):
    """Serpentine sweep of the square [0, area_side]^2 at fixed altitude.

    Rows are `spacing` apart and waypoints are `spacing` apart along each
    row, with direction alternating per row; the first waypoint is
    (0, 0, altitude).  area_side must be an integer multiple of spacing,
    giving (area_side/spacing + 1)^2 waypoints.
    """
    if area_side <= 0 or spacing <= 0:
        raise ValueError("area_side and spacing must be positive")
    if altitude <= 0:
        raise ValueError("altitude must be positive")
    steps = area_side / spacing
    if abs(steps - round(steps)) > 1e-9:
        raise ValueError(
            f"area_side {area_side} is not an integer multiple of spacing {spacing}"
        )
    per_row = int(round(steps)) + 1
    rows = []
    for r in range(per_row):
        xs = np.arange(per_row, dtype=float) * spacing
        if r % 2 == 1:
            xs = xs[::-1]
        row = np.column_stack(
            [xs, np.full(per_row, r * spacing, dtype=float), np.full(per_row, float(altitude))]
        )
        rows.append(row)
    return Trajectory(np.vstack(rows), leg_length=float(spacing))
