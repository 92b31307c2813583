"""Log-distance path-loss channel and RSSI-derived range measurements.

The link is modeled as free-space path loss plus log-normal shadowing:

    PL(d) = PL0 + 10 * alpha * log10(d / d0) + X,   X ~ Normal(0, sigma^2)

Inverting the shadowed path loss back to a distance gives the estimated
range d_hat = d * 10^(X / (10 * alpha)), i.e. a multiplicative log-normal
range error with median 1.  Shadowing is the single noise source; no
separate additive range noise is drawn.
"""

from dataclasses import dataclass

import numpy as np

SPEED_OF_LIGHT = 299792458.0  # m/s


def friis_path_loss_db(d, frequency_hz):
    """Free-space path loss 20*log10(4*pi*d*f/c) in dB."""
    return 20.0 * np.log10(4.0 * np.pi * d * frequency_hz / SPEED_OF_LIGHT)


@dataclass(frozen=True)
class ChannelParams:
    pl0_db: float  # path loss at the reference distance
    d0: float = 1.0  # reference distance, m
    alpha: float = 2.0  # path-loss exponent
    sigma_db: float = 3.0  # shadowing std-dev, dB
    frequency_hz: float = 2.4e9
    bandwidth_hz: float = 20e6  # carried for config fidelity; unused in the math

    def __post_init__(self):
        if self.d0 <= 0 or self.alpha <= 0 or self.frequency_hz <= 0:
            raise ValueError("d0, alpha and frequency_hz must be positive")
        if self.sigma_db < 0:
            raise ValueError("sigma_db must be non-negative")

    @classmethod
    def default(cls, frequency_hz=2.4e9, bandwidth_hz=20e6, sigma_db=3.0,
                alpha=2.0, d0=1.0):
        """Friis reference loss at d0 for the given carrier frequency."""
        return cls(
            pl0_db=float(friis_path_loss_db(d0, frequency_hz)),
            d0=d0,
            alpha=alpha,
            sigma_db=sigma_db,
            frequency_hz=frequency_hz,
            bandwidth_hz=bandwidth_hz,
        )


@dataclass(frozen=True)
class Measurement:
    index: int  # waypoint index the range was taken at
    est_distance: float
    true_distance: float
    anchor: np.ndarray  # waypoint position, (3,)


def true_distance(target, anchor):
    """Euclidean distance between target and anchor positions."""
    t = np.asarray(target, dtype=float)
    a = np.asarray(anchor, dtype=float)
    if not (np.isfinite(t).all() and np.isfinite(a).all()):
        raise ValueError("positions must be finite")
    return float(np.linalg.norm(t - a))


def path_loss_db(d, params, shadowing_db=0.0):
    """Shadowed log-distance path loss at range d."""
    if d <= 0:
        raise ValueError("distance must be positive")
    return params.pl0_db + 10.0 * params.alpha * np.log10(d / params.d0) + shadowing_db


def invert_range(measured_pl_db, params):
    """Range whose noiseless path loss equals measured_pl_db; always > 0."""
    return params.d0 * 10.0 ** ((measured_pl_db - params.pl0_db) / (10.0 * params.alpha))


def measure(target, waypoint, params, rng):
    """One range measurement at a waypoint; consumes one shadowing draw."""
    d = true_distance(target, waypoint.position)
    if d <= 0:
        raise ValueError("target and anchor positions coincide")
    shadowing = rng.normal(0.0, params.sigma_db)
    est = invert_range(path_loss_db(d, params, shadowing), params)
    return Measurement(
        index=waypoint.index,
        est_distance=float(est),
        true_distance=d,
        anchor=waypoint.position,
    )


def measure_track(target, trajectory, params, rng):
    """Measured and true ranges over a whole track, one draw per waypoint.

    Returns (est, true) arrays of shape (N,), entry i-1 for waypoint i.
    Matches calling measure() at each waypoint in visit order against the
    same stream, up to floating-point roundoff (closed form vs dB round
    trip).
    """
    t = np.asarray(target, dtype=float)
    diff = trajectory.positions - t
    true = np.sqrt((diff ** 2).sum(axis=1))
    if (true <= 0).any():
        raise ValueError("target coincides with a waypoint")
    shadowing = rng.normal(0.0, params.sigma_db, size=trajectory.n)
    est = true * 10.0 ** (shadowing / (10.0 * params.alpha))
    return est, true
