"""Optimal bursty signaling for one transmitter with a processing cost.

A transmitter that is on for a fraction theta of the channel uses at
signal power nu spends theta * (nu + eps) on average, and achieves
theta * C(nu).  The rate-optimal burst fraction has a closed form in the
principal Lambert W branch; glue pouring extends it to a pair of parallel
channels with different noise levels.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass, field
from typing import Sequence, Tuple

import numpy as np

from zicburst.core_math import DEFAULT_TOL, ToleranceConfig, capacity, lambert_w0, maximize_1d
from zicburst.errors import DomainError

__all__ = [
    "UserProfile",
    "SingleUserOptimum",
    "ParallelChannel",
    "GluePourAllocation",
    "burst_slope",
    "single_user_optimum",
    "single_user_rate",
    "glue_pour",
]

GLUE_GRID = 101
# channels with a smaller share of the block carry no power (avoids p/f overflow)
MIN_FRACTION = 1e-12


@dataclass(frozen=True)
class UserProfile:
    """Noise-normalized average power budget and per-use processing cost."""

    power: float
    processing_cost: float

    def __post_init__(self):
        if not self.power >= 0:
            raise DomainError(f"power budget must be non-negative, got {self.power!r}")
        if not self.processing_cost >= 0:
            raise DomainError(
                f"processing cost must be non-negative, got {self.processing_cost!r}")


@dataclass(frozen=True)
class SingleUserOptimum:
    theta_star: float
    nu_star: float
    rate: float


@dataclass(frozen=True)
class ParallelChannel:
    noise_variance: float
    time_fraction: float


@dataclass(frozen=True)
class GluePourAllocation:
    """Per-channel burst fractions and on-powers for one user.

    thetas[k] is the active share of channel k's own uses, nus[k] the
    radiated on-power there and powers[k] the block-average power (signal
    plus processing) spent on channel k.
    """

    thetas: Tuple[float, ...]
    nus: Tuple[float, ...]
    powers: Tuple[float, ...]
    total_rate: float
    channels: Tuple[ParallelChannel, ...] = field(default=(), repr=False)


def burst_slope(eps: float) -> float:
    """Unclamped optimal burst fraction per unit of power budget.

    For cost eps the optimal fraction is min(1, P * burst_slope(eps)).
    Writing W = W0((eps - 1)/e) and using W/x = exp(-W), the closed form
    P W / ((eps - 1)(W + 1)) becomes P exp(-W) / (e (W + 1)), which has no
    0/0 at eps = 1 (value 1/e) and diverges at eps = 0.
    """
    if eps < 0:
        raise DomainError(f"processing cost must be non-negative, got {eps!r}")
    if eps == 0:
        return math.inf
    w = lambert_w0((eps - 1.0) / math.e)
    if w <= -1.0:
        return math.inf
    return math.exp(-w) / (math.e * (w + 1.0))


def single_user_optimum(u: UserProfile) -> SingleUserOptimum:
    """Closed-form rate-optimal burst fraction, on-power and rate."""
    P, eps = u.power, u.processing_cost
    if not P > 0:
        raise DomainError("power budget must be positive")
    slope = burst_slope(eps)
    theta = 1.0 if math.isinf(slope) else min(1.0, P * slope)
    nu = max(P / theta - eps, 0.0)
    return SingleUserOptimum(theta, nu, theta * capacity(nu))


def single_user_rate(u: UserProfile) -> float:
    """Interference-free rate of a user transmitting alone."""
    return single_user_optimum(u).rate


def _subchannel(p, fraction, noise, eps, slope):
    """Best (theta, nu, rate) on one channel given its power share.

    Normalizing by the noise level turns the channel into a single-user
    problem with budget p/(fraction*noise) and cost eps/noise; nu is
    returned in un-normalized power units and rate per block channel use.
    Works elementwise on arrays of p.
    """
    if isinstance(p, float) or np.ndim(p) == 0:
        return _subchannel_scalar(float(p), fraction, noise, eps, slope)
    p = np.asarray(p, dtype=float)
    if fraction < MIN_FRACTION:
        z = np.zeros_like(p)
        return z, z, z
    budget = np.where(p > 0, p / (fraction * noise), 0.0)
    if math.isinf(slope):
        theta = np.where(budget > 0, 1.0, 0.0)
    else:
        theta = np.minimum(1.0, budget * slope)
    with np.errstate(divide="ignore", invalid="ignore"):
        nu_norm = np.where(theta > 0, budget / theta - eps / noise, 0.0)
    nu_norm = np.maximum(nu_norm, 0.0)
    rate = fraction * theta * 0.5 * np.log2(1.0 + nu_norm)
    return theta, nu_norm * noise, rate


def _subchannel_scalar(p, fraction, noise, eps, slope):
    if fraction < MIN_FRACTION or not p > 0:
        return 0.0, 0.0, 0.0
    budget = p / (fraction * noise)
    theta = 1.0 if math.isinf(slope) else min(1.0, budget * slope)
    nu_norm = max(budget / theta - eps / noise, 0.0)
    return theta, nu_norm * noise, fraction * theta * 0.5 * math.log2(1.0 + nu_norm)


def glue_pour(u: UserProfile, channels: Sequence[ParallelChannel],
              tol: ToleranceConfig = DEFAULT_TOL) -> GluePourAllocation:
    """Split one user's power over two parallel channels with processing cost.

    The outer search is over the block-average power p handed to the
    noisier channel; given its share each channel is solved in closed form.
    Channels must be ordered by noise (N1 <= N2), have N >= 1 and time
    fractions summing to one.
    """
    if len(channels) != 2:
        raise DomainError("glue_pour needs exactly two channels")
    c1, c2 = channels
    for c in channels:
        if not c.noise_variance >= 1:
            raise DomainError(f"noise variance must be >= 1, got {c.noise_variance!r}")
        if not 0 <= c.time_fraction <= 1:
            raise DomainError(f"time fraction outside [0, 1]: {c.time_fraction!r}")
    if abs(c1.time_fraction + c2.time_fraction - 1.0) > 1e-9:
        raise DomainError("channel time fractions must sum to 1")
    if c1.noise_variance > c2.noise_variance:
        raise DomainError("channels must be ordered by increasing noise")
    P, eps = u.power, u.processing_cost
    if not P > 0:
        raise DomainError("power budget must be positive")

    f1, n1 = c1.time_fraction, c1.noise_variance
    f2, n2 = c2.time_fraction, c2.noise_variance
    s1, s2 = burst_slope(eps / n1), burst_slope(eps / n2)

    def total(p):
        return (_subchannel(P - p, f1, n1, eps, s1)[2]
                + _subchannel(p, f2, n2, eps, s2)[2])

    if f2 < MIN_FRACTION:
        lo = hi = 0.0
    elif f1 < MIN_FRACTION:
        lo = hi = P
    else:
        lo, hi = 0.0, P
    # each channel's best rate is concave in its power share, so the split
    # objective is concave in p and a coarse scan brackets the peak
    coarse = dataclasses.replace(tol, grid_points=min(tol.grid_points, GLUE_GRID))
    p2, _ = maximize_1d(total, lo, hi, coarse, vectorized=True)
    # an empty share is always available and ties should prefer it
    if total(0.0) >= total(p2):
        p2 = 0.0

    t1, v1, r1 = (float(x) for x in _subchannel(P - p2, f1, n1, eps, s1))
    t2, v2, r2 = (float(x) for x in _subchannel(p2, f2, n2, eps, s2))
    return GluePourAllocation(
        thetas=(t1, t2), nus=(v1, v2), powers=(P - p2, p2),
        total_rate=r1 + r2, channels=(c1, c2))
