"""Sequential source localizer with a scikit-learn estimator surface."""

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.exceptions import NotFittedError
from sklearn.utils.validation import check_array

from .lls import REFERENCE_MODES, localize, select_reference
from .selection import SelectionState, canonical_algorithm, select


class SourceLocalizer(BaseEstimator):
    """Estimates an RF source position from ranges along an anchor walk.

    The estimator consumes anchor positions and measured ranges in visit
    order (one row per waypoint) and re-localizes after every new waypoint
    using the configured anchor-selection algorithm, so it doubles as a
    real-time tracker: the full per-step history is kept on the fitted
    instance.

    Parameters
    ----------
    algorithm : str, one of con, con_i, con_ii, cum, fml, fmlm, chlm, cls
        Anchor-set formation strategy.
    reference : str, "srl" or "drl"
        Linearization reference: first element of the anchor set (srl) or
        the anchor with the smallest measured range (drl).

    Attributes
    ----------
    anchors_ : (n, 3) visited anchor positions
    ranges_ : (n,) measured ranges
    estimates_ : (n, 3) per-step source estimates, NaN rows where no valid
        estimate was produced (warm-up or degenerate anchor geometry)
    valid_ : (n,) bool, True where estimates_ holds a usable row
    residuals_ : (n,) relative residuals (+inf where undefined)
    anchor_sets_ : list of index tuples (1-based) or None per step
    references_ : (n,) chosen reference index per step (0 = none)
    location_ : (3,) most recent valid estimate
    """

    def __init__(self, algorithm="cum", reference="drl"):
        self.algorithm = algorithm
        self.reference = reference

    def fit(self, X, y):
        """Process a complete walk of anchor positions X and ranges y."""
        self._reset()
        return self.partial_fit(X, y)

    def partial_fit(self, X, y):
        """Append waypoints to the walk and update the estimate track."""
        X = check_array(X, dtype=float, ensure_min_samples=1)
        if X.shape[1] != 3:
            raise ValueError(f"anchor positions must have 3 columns, got {X.shape[1]}")
        y = check_array(y, dtype=float, ensure_2d=False)
        if y.ndim != 1 or len(y) != len(X):
            raise ValueError("y must be a 1-d range per anchor row")
        if (y <= 0).any():
            raise ValueError("measured ranges must be positive")
        if not hasattr(self, "_state"):
            self._reset()
        self.n_features_in_ = 3
        for row, rng in zip(X, y):
            self._step(row, float(rng))
        self._publish()
        return self

    def predict(self, X):
        """Ranges from the current source estimate to the given positions."""
        self._check_fitted()
        if not np.isfinite(self.location_).all():
            raise NotFittedError("no valid source estimate has been produced yet")
        X = check_array(X, dtype=float)
        if X.shape[1] != 3:
            raise ValueError(f"positions must have 3 columns, got {X.shape[1]}")
        return np.linalg.norm(X - self.location_, axis=1)

    # internal walk machinery

    def _reset(self):
        algorithm = canonical_algorithm(self.algorithm)
        if self.reference not in REFERENCE_MODES:
            raise ValueError(
                f"unknown reference mode {self.reference!r}; expected one of {REFERENCE_MODES}"
            )
        self._state = SelectionState(algorithm)
        self._anchors = []
        self._ranges = []
        self._estimates = []
        self._valid = []
        self._residuals = []
        self._references = []
        self.anchor_sets_ = []

    def _step(self, position, rng):
        self._anchors.append(np.asarray(position, dtype=float))
        self._ranges.append(rng)
        n_tilde = len(self._anchors)
        positions = np.vstack(self._anchors)
        ranges = np.asarray(self._ranges)
        upsilon = select(self._state, n_tilde, positions, ranges, mode=self.reference)
        if upsilon is None:
            self.anchor_sets_.append(None)
            self._estimates.append(np.full(3, np.nan))
            self._valid.append(False)
            self._residuals.append(np.inf)
            self._references.append(0)
            return
        est = localize(upsilon, positions, ranges, mode=self.reference, at_index=n_tilde)
        self.anchor_sets_.append(tuple(upsilon))
        self._estimates.append(est.location if est.valid else np.full(3, np.nan))
        self._valid.append(est.valid)
        self._residuals.append(est.residual)
        self._references.append(select_reference(upsilon, ranges, self.reference))

    def _publish(self):
        self.anchors_ = np.vstack(self._anchors)
        self.ranges_ = np.asarray(self._ranges)
        self.estimates_ = np.vstack(self._estimates)
        self.valid_ = np.asarray(self._valid, dtype=bool)
        self.residuals_ = np.asarray(self._residuals)
        self.references_ = np.asarray(self._references, dtype=int)
        self.n_steps_ = len(self._anchors)
        if self.valid_.any():
            self.location_ = self.estimates_[np.flatnonzero(self.valid_)[-1]].copy()
        else:
            self.location_ = np.full(3, np.nan)

    def _check_fitted(self):
        if not hasattr(self, "estimates_"):
            raise NotFittedError("this SourceLocalizer instance is not fitted yet")
