"""Sum rates of the joint transmission schemes for the Z channel.

All schemes use constant on-power per user (user 1 may power-control in
scheme V).  With burst fractions t1, t2 the on-powers are
nu_i = P_i/t_i - eps_i and the bursts overlap on t1 + t2 - 1.

    I    both always on; decode interference (a >= 1) or treat it as noise
    II   time division, t1 + t2 = 1
    III  partial overlap, receiver 1 decodes jointly only on the overlap
    IV   partial overlap, joint decoding over the whole block (a >= 1)
    V    partial overlap, user 1 glue-pours around user 2's burst (a < 1)
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional

import numpy as np

from zicburst.core_math import DEFAULT_TOL, ToleranceConfig, capacity, maximize_1d, maximize_2d
from zicburst.errors import DomainError, InfeasibleError
from zicburst.regimes import ZicConfig
from zicburst.single_user import (ParallelChannel, UserProfile, glue_pour,
                                  single_user_optimum)

__all__ = [
    "SchemeId",
    "SchemeEvaluation",
    "TIE_TOL",
    "upper_bound",
    "scheme_i",
    "scheme_ii",
    "scheme_iii",
    "scheme_iv",
    "scheme_v",
    "scheme_iii_objective",
    "scheme_iv_objective",
    "scheme_v_objective",
    "tdm_objective",
    "valid_schemes",
    "evaluate",
    "best_scheme",
]

# schemes within this many bits of the best are treated as tied
TIE_TOL = 1e-6


class SchemeId(str, enum.Enum):
    I = "I"
    II = "II"
    III = "III"
    IV = "IV"
    V = "V"
    UPPER_BOUND = "UPPER_BOUND"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class SchemeEvaluation:
    scheme_id: SchemeId
    sum_rate: float
    params: Dict[str, float] = field(default_factory=dict)
    feasible: bool = True


def _c(x):
    return 0.5 * np.log2(1.0 + x)


def _infeasible(sid: SchemeId) -> SchemeEvaluation:
    return SchemeEvaluation(sid, 0.0, {}, feasible=False)


def _theta_cap(u: UserProfile) -> float:
    # keeps nu = P/theta - eps non-negative
    if u.processing_cost == 0:
        return 1.0
    return min(1.0, u.power / u.processing_cost)


def _on_power(u: UserProfile, theta):
    return u.power / theta - u.processing_cost


def upper_bound(cfg: ZicConfig) -> SchemeEvaluation:
    """Sum of the two interference-free single-user rates."""
    o1 = single_user_optimum(cfg.user1)
    o2 = single_user_optimum(cfg.user2)
    return SchemeEvaluation(
        SchemeId.UPPER_BOUND, o1.rate + o2.rate,
        {"theta1": o1.theta_star, "theta2": o2.theta_star,
         "nu1": o1.nu_star, "nu2": o2.nu_star})


def scheme_i(cfg: ZicConfig) -> SchemeEvaluation:
    """Both users always on at power P_i - eps_i."""
    u1, u2, a = cfg.user1, cfg.user2, cfg.cross_gain
    s1 = u1.power - u1.processing_cost
    s2 = u2.power - u2.processing_cost
    if s1 <= 0 or s2 <= 0:
        return _infeasible(SchemeId.I)
    if a >= 1:
        rate = min(capacity(s1) + capacity(s2), capacity(s1 + a * s2))
    else:
        rate = capacity(s1 / (1.0 + a * s2)) + capacity(s2)
    return SchemeEvaluation(SchemeId.I, rate, {})


def tdm_objective(cfg: ZicConfig, t1):
    u1, u2 = cfg.user1, cfg.user2
    t2 = 1.0 - t1
    return t1 * _c(_on_power(u1, t1)) + t2 * _c(_on_power(u2, t2))


def scheme_ii(cfg: ZicConfig, tol: ToleranceConfig = DEFAULT_TOL) -> SchemeEvaluation:
    """Time division with user 1 on a fraction t1 in [1 - theta2*, theta1*]."""
    o1 = single_user_optimum(cfg.user1)
    o2 = single_user_optimum(cfg.user2)
    if o1.theta_star + o2.theta_star <= 1.0:
        # both bursts fit side by side
        return SchemeEvaluation(
            SchemeId.II, o1.rate + o2.rate,
            {"theta1": o1.theta_star, "theta2": o2.theta_star})
    t1, rate = maximize_1d(lambda t: tdm_objective(cfg, t),
                           1.0 - o2.theta_star, o1.theta_star, tol, vectorized=True)
    return SchemeEvaluation(SchemeId.II, rate, {"theta1": t1, "theta2": 1.0 - t1})


def _overlap_box(cfg: ZicConfig):
    o1 = single_user_optimum(cfg.user1)
    o2 = single_user_optimum(cfg.user2)
    return ((1.0 - o2.theta_star, _theta_cap(cfg.user1)),
            (1.0 - o1.theta_star, _theta_cap(cfg.user2)))


def _overlaps(t1, t2):
    return t1 + t2 >= 1.0


def scheme_iii_objective(cfg: ZicConfig, t1, t2):
    u1, u2, a = cfg.user1, cfg.user2, cfg.cross_gain
    nu1, nu2 = _on_power(u1, t1), _on_power(u2, t2)
    both = t1 + t2 - 1.0
    if a >= 1:
        joint = np.minimum(_c(nu1) + _c(nu2), _c(nu1 + a * nu2))
        return (1.0 - t2) * _c(nu1) + (1.0 - t1) * _c(nu2) + both * joint
    return (1.0 - t2) * _c(nu1) + t2 * _c(nu2) + both * _c(nu1 / (1.0 + a * nu2))


def scheme_iv_objective(cfg: ZicConfig, t1, t2):
    u1, u2, a = cfg.user1, cfg.user2, cfg.cross_gain
    nu1, nu2 = _on_power(u1, t1), _on_power(u2, t2)
    both = t1 + t2 - 1.0
    own = t1 * _c(nu1) + t2 * _c(nu2)
    at_rx1 = (1.0 - t2) * _c(nu1) + (1.0 - t1) * _c(a * nu2) + both * _c(nu1 + a * nu2)
    return np.minimum(own, at_rx1)


def _two_dim(sid, objective, cfg, tol):
    box = _overlap_box(cfg)
    try:
        (t1, t2), rate = maximize_2d(lambda x, y: objective(cfg, x, y), _overlaps,
                                     box, tol, vectorized=True)
    except (InfeasibleError, ValueError):
        return _infeasible(sid)
    if not math.isfinite(rate):
        return _infeasible(sid)
    return SchemeEvaluation(sid, float(rate), {"theta1": t1, "theta2": t2})


def scheme_iii(cfg: ZicConfig, tol: ToleranceConfig = DEFAULT_TOL) -> SchemeEvaluation:
    """Partial overlap; receiver 1 decodes interference only while it overlaps."""
    return _two_dim(SchemeId.III, scheme_iii_objective, cfg, tol)


def scheme_iv(cfg: ZicConfig, tol: ToleranceConfig = DEFAULT_TOL) -> SchemeEvaluation:
    """Partial overlap with joint decoding of both codewords over the block."""
    if cfg.cross_gain < 1:
        raise DomainError("scheme IV is defined for a >= 1 only")
    return _two_dim(SchemeId.IV, scheme_iv_objective, cfg, tol)


def _scheme_v_split(cfg: ZicConfig, t2: float, tol: ToleranceConfig):
    u2 = cfg.user2
    nu2 = max(_on_power(u2, t2), 0.0)
    channels = (ParallelChannel(1.0, 1.0 - t2),
                ParallelChannel(1.0 + cfg.cross_gain * nu2, t2))
    alloc = glue_pour(cfg.user1, channels, tol)
    return t2 * capacity(nu2) + alloc.total_rate, alloc


def scheme_v_objective(cfg: ZicConfig, t2: float,
                       tol: ToleranceConfig = DEFAULT_TOL) -> float:
    """Sum rate when user 2 bursts on t2 and user 1 glue-pours around it."""
    return _scheme_v_split(cfg, t2, tol)[0]


def scheme_v(cfg: ZicConfig, tol: ToleranceConfig = DEFAULT_TOL) -> SchemeEvaluation:
    """User 2 at constant power on t2, user 1 power-controlled (a < 1)."""
    if cfg.cross_gain >= 1:
        raise DomainError("scheme V is defined for a < 1 only")
    o1 = single_user_optimum(cfg.user1)
    lo, hi = 1.0 - o1.theta_star, _theta_cap(cfg.user2)
    if lo > hi:
        return _infeasible(SchemeId.V)
    t2, _ = maximize_1d(lambda t: scheme_v_objective(cfg, t, tol), lo, hi, tol)
    rate, alloc = _scheme_v_split(cfg, t2, tol)
    return SchemeEvaluation(SchemeId.V, rate, {
        "theta2": t2,
        "theta11": alloc.thetas[0], "nu11": alloc.nus[0],
        "theta12": alloc.thetas[1], "nu12": alloc.nus[1],
        "power12": alloc.powers[1],
    })


def valid_schemes(a: float) -> List[SchemeId]:
    last = SchemeId.IV if a >= 1 else SchemeId.V
    return [SchemeId.I, SchemeId.II, SchemeId.III, last]


def evaluate(sid: SchemeId, cfg: ZicConfig,
             tol: ToleranceConfig = DEFAULT_TOL) -> SchemeEvaluation:
    sid = SchemeId(sid)
    if sid is SchemeId.I:
        return scheme_i(cfg)
    if sid is SchemeId.UPPER_BOUND:
        return upper_bound(cfg)
    fn = {SchemeId.II: scheme_ii, SchemeId.III: scheme_iii,
          SchemeId.IV: scheme_iv, SchemeId.V: scheme_v}[sid]
    return fn(cfg, tol)


def pick_best(evals: List[SchemeEvaluation]) -> Optional[SchemeEvaluation]:
    """Highest feasible sum rate; near-ties (TIE_TOL) go to the lowest index."""
    feasible = [e for e in evals if e.feasible]
    if not feasible:
        return None
    top = max(e.sum_rate for e in feasible)
    return next(e for e in feasible if e.sum_rate >= top - TIE_TOL)


def best_scheme(cfg: ZicConfig, tol: ToleranceConfig = DEFAULT_TOL) -> Optional[SchemeEvaluation]:
    return pick_best([evaluate(s, cfg, tol) for s in valid_schemes(cfg.cross_gain)])
