"""Very strong interference regime of the Z channel with processing cost.

When both users keep their single-user burst optima and the bursts
overlap as little as possible, receiver 1 can decode and strip user 2's
whole codeword iff

    rho*log(1 + a nu2) + (1 - rho)*log(1 + a nu2/(1 + nu1)) >= log(1 + nu2)

with rho = (1 - theta1)/theta2.  Its left side grows strictly with a, so
the smallest such a is a well-defined threshold.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Tuple

from zicburst.errors import DomainError, PreconditionError
from zicburst.single_user import UserProfile, single_user_optimum

__all__ = [
    "ZicConfig",
    "RegimeReport",
    "overlap_required",
    "overlap_fraction",
    "very_strong_margin",
    "very_strong_holds",
    "very_strong_threshold",
    "low_snr_threshold",
    "regime_report",
]

# slack on the log-domain decoding condition
HOLD_SLACK = 1e-12


@dataclass(frozen=True)
class ZicConfig:
    """Cross-link power gain plus both users' profiles."""

    cross_gain: float
    user1: UserProfile
    user2: UserProfile

    def __post_init__(self):
        if not self.cross_gain >= 0:
            raise DomainError(f"cross gain must be non-negative, got {self.cross_gain!r}")

    @classmethod
    def symmetric(cls, a: float, power: float, eps: float) -> "ZicConfig":
        u = UserProfile(power, eps)
        return cls(a, u, u)


@dataclass(frozen=True)
class RegimeReport:
    overlap_required: bool
    rho: Optional[float]
    very_strong: Optional[bool]
    threshold_a: Optional[float]


def overlap_required(u1: UserProfile, u2: UserProfile) -> bool:
    """True iff the two single-user bursts cannot be time-divided."""
    return single_user_optimum(u1).theta_star + single_user_optimum(u2).theta_star > 1.0


def overlap_fraction(u1: UserProfile, u2: UserProfile) -> float:
    """rho = (1 - theta1*)/theta2*, clamped to [0, 1]."""
    t1 = single_user_optimum(u1).theta_star
    t2 = single_user_optimum(u2).theta_star
    return min(1.0, max(0.0, (1.0 - t1) / t2))


def _require_overlap(u1, u2):
    if not overlap_required(u1, u2):
        raise PreconditionError(
            "theta1* + theta2* <= 1: time division already gives interference-free rates")


def _margin(a, rho, nu1, nu2):
    rhs = rho * math.log1p(a * nu2) + (1.0 - rho) * math.log1p(a * nu2 / (1.0 + nu1))
    return rhs - math.log1p(nu2)


def very_strong_margin(cfg: ZicConfig) -> float:
    """Log-domain slack of the decoding condition (>= 0 means it holds)."""
    _require_overlap(cfg.user1, cfg.user2)
    o1 = single_user_optimum(cfg.user1)
    o2 = single_user_optimum(cfg.user2)
    rho = overlap_fraction(cfg.user1, cfg.user2)
    return _margin(cfg.cross_gain, rho, o1.nu_star, o2.nu_star)


def very_strong_holds(cfg: ZicConfig) -> bool:
    """Whether both users reach their interference-free rates at this gain."""
    return very_strong_margin(cfg) >= -HOLD_SLACK


def very_strong_threshold(u1: UserProfile, u2: UserProfile, width: float = 1e-6) -> float:
    """Smallest cross gain for which the very strong condition holds.

    Bisection on [1, a_hi] keeping the condition true at the upper end;
    a_hi starts at 2(1 + nu1*) and doubles until the condition holds.
    With theta1* = 1 the condition reduces exactly to a >= 1 + nu1*.
    """
    _require_overlap(u1, u2)
    o1, o2 = single_user_optimum(u1), single_user_optimum(u2)
    rho = overlap_fraction(u1, u2)
    if rho == 0.0:
        return 1.0 + o1.nu_star

    def holds(a):
        return _margin(a, rho, o1.nu_star, o2.nu_star) >= -HOLD_SLACK

    lo, hi = 1.0, 2.0 * (1.0 + o1.nu_star)
    while not holds(hi):
        lo, hi = hi, 2.0 * hi
        if hi > 1e300:
            raise DomainError("very strong threshold did not bracket")
    if holds(lo):
        return lo
    while hi - lo > width:
        mid = 0.5 * (lo + hi)
        if holds(mid):
            hi = mid
        else:
            lo = mid
    return hi


def low_snr_threshold(u1: UserProfile, u2: UserProfile) -> Tuple[str, float]:
    """Closed-form gain thresholds in the low-SNR scaling P/sqrt(2 eps) = lambda.

    Returns (case, threshold) with case one of
      "bursty_both"   lambda1 < 1, lambda2 < 1
      "bursty_user1"  lambda1 < 1 <= lambda2
      "always_on_user1"  lambda1 >= 1, threshold 1 + P1 - eps1.
    The caller is responsible for the profiles being in that scaling.
    """
    P1, e1 = u1.power, u1.processing_cost
    P2, e2 = u2.power, u2.processing_cost
    s1, s2 = math.sqrt(2.0 * e1), math.sqrt(2.0 * e2)
    lam1 = P1 / s1 if s1 > 0 else math.inf
    lam2 = P2 / s2 if s2 > 0 else math.inf

    if lam1 >= 1.0:
        return "always_on_user1", 1.0 + P1 - e1
    if lam2 >= 1.0:
        return "bursty_user1", (1.0 + s1) / (1.0 + s1 - P1)
    if lam1 + lam2 <= 1.0:
        # bursts fit side by side and a0 would be <= 1
        raise DomainError("low-SNR threshold undefined: bursts do not overlap")
    return "bursty_both", (P2 + s1 * P2) / (P2 + s2 * (s1 - P1))


def regime_report(cfg: ZicConfig) -> RegimeReport:
    if not overlap_required(cfg.user1, cfg.user2):
        return RegimeReport(False, None, None, None)
    return RegimeReport(
        overlap_required=True,
        rho=overlap_fraction(cfg.user1, cfg.user2),
        very_strong=very_strong_holds(cfg),
        threshold_a=very_strong_threshold(cfg.user1, cfg.user2),
    )
