"""2D computational-geometry helpers for anchor selection."""

import numpy as np


def cross2(o, a, b):
    """Z component of (a - o) x (b - o)."""
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def are_collinear(points, rel_tol=1e-9):
    """True if all 2D points lie on one line (within rel_tol of the extent)."""
    pts = np.asarray(points, dtype=float)
    if len(pts) < 3:
        return True
    p0 = pts[0]
    span = np.abs(pts - p0).max()
    if span == 0.0:
        return True
    d = pts - p0
    # pick the farthest point from p0 to define the direction robustly
    far = d[np.argmax((d ** 2).sum(axis=1))]
    crosses = d[:, 0] * far[1] - d[:, 1] * far[0]
    return bool(np.abs(crosses).max() <= rel_tol * span * span)


def convex_hull(points):
    """Indices of the convex-hull corners of 2D points, CCW order.

    Andrew's monotone chain with strict turns: points interior to a hull
    edge are not reported as corners.  Input points must be distinct; a
    fully collinear input yields the two extreme points.
    """
    pts = [(float(p[0]), float(p[1]), i) for i, p in enumerate(points)]
    if len(pts) < 3:
        return [p[2] for p in sorted(pts)]
    pts.sort()

    def build(seq):
        chain = []
        for p in seq:
            while len(chain) > 1 and cross2(chain[-2], chain[-1], p) <= 0.0:
                chain.pop()
            chain.append(p)
        return chain

    lower = build(pts)
    upper = build(reversed(pts))
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 2:  # all points identical
        hull = pts[:1]
    return [p[2] for p in hull]
