"""Scalar special functions and the deterministic grid+refine maximizers."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Tuple

import numpy as np

from zicburst.errors import DomainError, InfeasibleError, InvalidInterval

__all__ = [
    "ToleranceConfig",
    "DEFAULT_TOL",
    "FAST_TOL",
    "lambert_w0",
    "capacity",
    "maximize_1d",
    "maximize_2d",
]

INV_E = math.exp(-1.0)
INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class ToleranceConfig:
    """Numerical knobs shared by every optimizer in the package.

    abs_tol bounds root-finding residuals and the stopping improvement of
    the 2D coordinate sweeps; grid_points is per optimization dimension;
    refine_tol is the final argument-interval width of golden-section search.
    """

    abs_tol: float = 1e-9
    grid_points: int = 2001
    refine_tol: float = 1e-7

    def __post_init__(self):
        if not self.abs_tol > 0 or not self.refine_tol > 0:
            raise DomainError("tolerances must be positive")
        if self.grid_points < 3:
            raise DomainError("grid_points must be at least 3")


DEFAULT_TOL = ToleranceConfig()
# Coarse profile for interactive use; not authoritative.
FAST_TOL = ToleranceConfig(grid_points=201)


def lambert_w0(x: float, tol: ToleranceConfig = DEFAULT_TOL) -> float:
    """Principal branch W0 of the Lambert W function, by Halley iteration.

    Returns w >= -1 with w * exp(w) = x.  Raises DomainError for x < -1/e.
    Iterates to machine precision, so tol only bounds the residual from above.
    """
    x = float(x)
    if math.isnan(x) or x < -INV_E:
        # tolerate the rounding of -1/e itself
        if not (x < -INV_E and x > -INV_E - 1e-15):
            raise DomainError(f"lambert_w0 undefined for x={x!r} < -1/e")
        x = -INV_E
    if x == 0.0:
        return 0.0
    if math.isinf(x):
        return math.inf

    q = 2.0 * (math.e * x + 1.0)
    if q < 0.3:
        # branch-point series in p = sqrt(2(ex+1))
        p = math.sqrt(max(q, 0.0))
        w = -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p ** 3
        if p == 0.0:
            return -1.0
    elif x < 3.0:
        w = math.log1p(x)
    else:
        lx = math.log(x)
        w = lx - math.log(lx)

    for _ in range(100):
        ew = math.exp(w)
        f = w * ew - x
        wp1 = w + 1.0
        if wp1 == 0.0:
            break
        dw = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1))
        w -= dw
        if abs(dw) <= 1e-15 * (1.0 + abs(w)):
            break
    return max(w, -1.0)


def capacity(snr):
    """Gaussian capacity 0.5*log2(1+snr) in bits per channel use.

    Accepts scalars or arrays; negative snr raises DomainError.
    """
    if np.ndim(snr) == 0:
        if snr < 0:
            raise DomainError(f"snr must be non-negative, got {snr!r}")
        return 0.5 * math.log2(1.0 + float(snr))
    snr = np.asarray(snr, dtype=float)
    if np.any(snr < 0):
        raise DomainError("snr must be non-negative")
    return 0.5 * np.log2(1.0 + snr)


def _safe(value) -> float:
    value = float(value)
    return value if math.isfinite(value) else -math.inf


def _golden_max(f: Callable[[float], float], lo: float, hi: float,
                tol: float) -> Tuple[float, float]:
    """Golden-section search for the maximum of a unimodal f on [lo, hi]."""
    a, b = lo, hi
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = _safe(f(c)), _safe(f(d))
    while b - a > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = _safe(f(c))
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = _safe(f(d))
    x, v = (c, fc) if fc >= fd else (d, fd)
    # the probes never reach the ends; boundary maxima are common here
    for end in (lo, hi):
        fe = _safe(f(end))
        if fe > v:
            x, v = end, fe
    return x, v


def _grid_values(f, xs: np.ndarray, vectorized: bool) -> np.ndarray:
    with np.errstate(all="ignore"):
        if vectorized:
            vals = np.asarray(f(xs), dtype=float)
            vals = np.broadcast_to(vals, xs.shape).copy()
        else:
            vals = np.array([f(x) for x in xs], dtype=float)
    vals[~np.isfinite(vals)] = -np.inf
    return vals


def maximize_1d(f: Callable, lo: float, hi: float,
                tol: ToleranceConfig = DEFAULT_TOL,
                vectorized: bool = False) -> Tuple[float, float]:
    """Maximize f on [lo, hi]: dense grid scan, then golden refinement.

    The refinement runs on the two grid cells around the best sample, so
    the result is never worse than the grid winner. With vectorized=True
    the grid is evaluated by a single call f(array).

    Returns (argmax, max).
    """
    lo, hi = float(lo), float(hi)
    if lo > hi:
        raise InvalidInterval(f"empty interval [{lo}, {hi}]")
    if lo == hi:
        return lo, _safe(f(lo))

    xs = np.linspace(lo, hi, tol.grid_points)
    vals = _grid_values(f, xs, vectorized)
    i = int(np.argmax(vals))
    best_x, best_v = float(xs[i]), float(vals[i])
    if best_v == -math.inf:
        return best_x, best_v

    a = float(xs[max(i - 1, 0)])
    b = float(xs[min(i + 1, xs.size - 1)])
    with np.errstate(all="ignore"):
        x, v = _golden_max(f, a, b, tol.refine_tol)
    if v > best_v:
        best_x, best_v = x, v
    return best_x, best_v


Box = Tuple[Tuple[float, float], Tuple[float, float]]


def _feasible_span(ok, lo, hi, tol):
    """Feasible part of [lo, hi] around t = 0, assuming it is an interval."""

    def edge(inside, outside):
        if ok(outside):
            return outside
        while abs(outside - inside) > tol * 1e-2:
            mid = 0.5 * (inside + outside)
            if ok(mid):
                inside = mid
            else:
                outside = mid
        return inside

    return edge(0.0, lo), edge(0.0, hi)


def maximize_2d(f: Callable, feasible: Callable, box: Box,
                tol: ToleranceConfig = DEFAULT_TOL,
                vectorized: bool = False,
                max_sweeps: int = 50) -> Tuple[Tuple[float, float], float]:
    """Maximize f(x, y) over the feasible part of a rectangle.

    A grid_points x grid_points scan picks the best feasible grid point;
    golden-section line searches along both axes and both diagonals then
    refine it within one grid cell per pass, repeating until a pass gains
    less than abs_tol.  Ties
    on the grid go to the lexicographically smallest (x, y).

    feasible(x, y) must accept arrays when vectorized=True.
    Raises InfeasibleError when no grid point is feasible.
    """
    (x_lo, x_hi), (y_lo, y_hi) = box
    if x_lo > x_hi or y_lo > y_hi:
        raise InvalidInterval(f"empty box {box}")
    n = tol.grid_points
    xs = np.linspace(x_lo, x_hi, n)
    ys = np.linspace(y_lo, y_hi, n)

    with np.errstate(all="ignore"):
        if vectorized:
            X, Y = np.meshgrid(xs, ys, indexing="ij")
            mask = np.broadcast_to(np.asarray(feasible(X, Y), dtype=bool), X.shape)
            vals = np.asarray(f(X, Y), dtype=float)
            vals = np.broadcast_to(vals, X.shape).copy()
        else:
            mask = np.array([[bool(feasible(x, y)) for y in ys] for x in xs])
            vals = np.array([[f(x, y) for y in ys] for x in xs], dtype=float)
    vals[~np.isfinite(vals)] = -np.inf
    vals[~mask] = -np.inf
    if not mask.any():
        raise InfeasibleError("no feasible grid point in box")

    # argmax returns the first maximum in C order: smallest x, then y
    i, j = np.unravel_index(int(np.argmax(vals)), vals.shape)
    x, y = float(xs[i]), float(ys[j])
    best = float(vals[i, j])
    if best == -math.inf:
        return (x, y), best

    hx = (x_hi - x_lo) / (n - 1)
    hy = (y_hi - y_lo) / (n - 1)
    # axis moves, then diagonal moves so a maximum on a slanted
    # constraint edge is not a dead end
    directions = [(hx, 0.0), (0.0, hy), (hx, -hy), (hx, hy)]
    directions = [d for d in directions if d != (0.0, 0.0)]
    with np.errstate(all="ignore"):
        for _ in range(max_sweeps):
            start = best
            for dx, dy in directions:
                x0, y0 = x, y
                lo_t, hi_t = -1.0, 1.0
                # keep the line inside the box
                for d, c, c_lo, c_hi in ((dx, x0, x_lo, x_hi), (dy, y0, y_lo, y_hi)):
                    if d > 0:
                        lo_t = max(lo_t, (c_lo - c) / d)
                        hi_t = min(hi_t, (c_hi - c) / d)
                    elif d < 0:
                        lo_t = max(lo_t, (c_hi - c) / d)
                        hi_t = min(hi_t, (c_lo - c) / d)
                lo_t, hi_t = min(lo_t, 0.0), max(hi_t, 0.0)

                def ok(t):
                    return bool(feasible(x0 + t * dx, y0 + t * dy))

                a, b = _feasible_span(ok, lo_t, hi_t, tol.refine_tol)
                if b <= a:
                    continue
                step = tol.refine_tol / max(abs(dx), abs(dy))
                t, v = _golden_max(lambda t: f(x0 + t * dx, y0 + t * dy), a, b, step)
                if v > best and ok(t):
                    x, y, best = x0 + t * dx, y0 + t * dy, v
            if best - start < tol.abs_tol:
                break
    return (x, y), best
