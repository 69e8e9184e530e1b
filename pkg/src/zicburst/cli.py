"""Command-line front end.

    zicburst single-user --power 3.5 --eps 2
    zicburst regime --p1 3.5 --eps1 2 --p2 3.5 --eps2 2
    zicburst scheme --p1 3.5 --eps1 2 --p2 3.5 --eps2 2 --a 1.5
    zicburst sweep --a-min 0 --a-max 0.99 --steps 100 --format csv
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence

import numpy as np

from zicburst.core_math import DEFAULT_TOL, FAST_TOL, ToleranceConfig
from zicburst.errors import DomainError, InfeasibleError, InvalidInterval, PreconditionError
from zicburst.regimes import (ZicConfig, overlap_fraction, overlap_required,
                              very_strong_threshold)
from zicburst.schemes import SchemeId, evaluate, pick_best, upper_bound, valid_schemes
from zicburst.single_user import UserProfile, single_user_optimum

SWEEP_FIELDS = ["a", "scheme_i", "scheme_ii", "scheme_iii", "scheme_iv", "scheme_v",
                "upper_bound", "best"]
_COLUMN = {SchemeId.I: "scheme_i", SchemeId.II: "scheme_ii", SchemeId.III: "scheme_iii",
           SchemeId.IV: "scheme_iv", SchemeId.V: "scheme_v"}
DEFAULT_PROFILE = {"p1": 3.5, "eps1": 2.0, "p2": 3.5, "eps2": 2.0}


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class SweepRow:
    a: float
    scheme_i: Optional[float]
    scheme_ii: Optional[float]
    scheme_iii: Optional[float]
    scheme_iv: Optional[float]
    scheme_v: Optional[float]
    upper_bound: float
    best: Optional[str]

    def as_dict(self) -> Dict:
        return {name: getattr(self, name) for name in SWEEP_FIELDS}


def quantize(x: Optional[float]) -> Optional[float]:
    """Round to the 6 decimals written to CSV, so CSV and JSON agree."""
    return None if x is None else float(f"{x:.6f}")


def sweep_row(cfg: ZicConfig, tol: ToleranceConfig = DEFAULT_TOL) -> SweepRow:
    evals = [evaluate(s, cfg, tol) for s in valid_schemes(cfg.cross_gain)]
    rates = {_COLUMN[e.scheme_id]: (e.sum_rate if e.feasible else None) for e in evals}
    best = pick_best(evals)
    return SweepRow(
        a=cfg.cross_gain,
        scheme_i=rates.get("scheme_i"),
        scheme_ii=rates.get("scheme_ii"),
        scheme_iii=rates.get("scheme_iii"),
        scheme_iv=rates.get("scheme_iv"),
        scheme_v=rates.get("scheme_v"),
        upper_bound=upper_bound(cfg).sum_rate,
        best=None if best is None else best.scheme_id.value,
    )


def _row_job(args):
    return sweep_row(*args)


def sweep(u1: UserProfile, u2: UserProfile, a_min: float, a_max: float, steps: int,
          tol: ToleranceConfig = DEFAULT_TOL, workers: int = 1) -> List[SweepRow]:
    """Evaluate every valid scheme on a uniform grid of cross gains."""
    if steps < 2:
        raise UsageError("steps must be at least 2")
    if not 0 <= a_min <= a_max:
        raise UsageError("need 0 <= a-min <= a-max")
    jobs = [(ZicConfig(float(a), u1, u2), tol) for a in np.linspace(a_min, a_max, steps)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_row_job, jobs))
    return [_row_job(j) for j in jobs]


def rows_to_csv(rows: Sequence[SweepRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SWEEP_FIELDS)
    for row in rows:
        cells = []
        for name in SWEEP_FIELDS:
            v = getattr(row, name)
            if v is None:
                cells.append("")
            elif name == "best":
                cells.append(v)
            else:
                cells.append(f"{v:.6f}")
        writer.writerow(cells)
    return buf.getvalue()


def rows_to_json(rows: Sequence[SweepRow]) -> str:
    out = []
    for row in rows:
        d = row.as_dict()
        out.append({k: (v if k == "best" else quantize(v)) for k, v in d.items()})
    return json.dumps(out, indent=1) + "\n"


def parse_csv(text: str) -> List[SweepRow]:
    reader = csv.DictReader(io.StringIO(text))
    rows = []
    for rec in reader:
        vals = {k: (None if rec[k] == "" else float(rec[k]))
                for k in SWEEP_FIELDS if k != "best"}
        rows.append(SweepRow(best=rec["best"] or None, **vals))
    return rows


def read_config(path: str) -> Dict[str, float]:
    """Read `key = value` (or `key: value`) lines; # starts a comment."""
    values = {}
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            sep = "=" if "=" in line else ":"
            if sep not in line:
                raise UsageError(f"{path}:{lineno}: expected key = value")
            key, value = (s.strip() for s in line.split(sep, 1))
            key = key.lower().replace("-", "_")
            if key not in DEFAULT_PROFILE:
                raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
            try:
                values[key] = float(value)
            except ValueError:
                raise UsageError(f"{path}:{lineno}: {key} is not a number") from None
    return values


def _profiles(args) -> tuple:
    values = dict(DEFAULT_PROFILE)
    if args.config:
        values.update(read_config(args.config))
    for key in DEFAULT_PROFILE:
        flag = getattr(args, key)
        if flag is not None:
            values[key] = flag
    return (UserProfile(values["p1"], values["eps1"]),
            UserProfile(values["p2"], values["eps2"]))


def _tol(args) -> ToleranceConfig:
    return FAST_TOL if args.fast else DEFAULT_TOL


def _emit_record(record: Dict, as_json: bool, out) -> None:
    if as_json:
        out.write(json.dumps(record) + "\n")
        return
    for key, value in record.items():
        if isinstance(value, float):
            value = f"{value:.6g}"
        elif value is None:
            value = "null"
        elif isinstance(value, bool):
            value = str(value).lower()
        out.write(f"{key}={value}\n")


def cmd_single_user(args, out) -> None:
    opt = single_user_optimum(UserProfile(args.power, args.eps))
    _emit_record({"theta_star": opt.theta_star, "nu_star": opt.nu_star,
                  "rate": opt.rate}, args.json, out)


def cmd_regime(args, out) -> None:
    u1, u2 = _profiles(args)
    o1, o2 = single_user_optimum(u1), single_user_optimum(u2)
    record = {"theta1_star": o1.theta_star, "theta2_star": o2.theta_star,
              "overlap_required": overlap_required(u1, u2),
              "rho": None, "very_strong_threshold": None,
              "no_overhead_threshold": 1.0 + u1.power}
    if record["overlap_required"]:
        record["rho"] = overlap_fraction(u1, u2)
        record["very_strong_threshold"] = very_strong_threshold(u1, u2)
    _emit_record(record, args.json, out)


def cmd_scheme(args, out) -> None:
    u1, u2 = _profiles(args)
    cfg = ZicConfig(args.a, u1, u2)
    ids = [SchemeId(args.id)] if args.id else valid_schemes(cfg.cross_gain) + [SchemeId.UPPER_BOUND]
    tol = _tol(args)
    results = [evaluate(s, cfg, tol) for s in ids]
    if args.json:
        doc = [{"scheme": e.scheme_id.value, "sum_rate": e.sum_rate,
                "feasible": e.feasible, "params": e.params} for e in results]
        out.write(json.dumps(doc) + "\n")
        return
    for e in results:
        params = " ".join(f"{k}={v:.6g}" for k, v in e.params.items())
        rate = f"{e.sum_rate:.6f}" if e.feasible else "infeasible"
        out.write(f"{e.scheme_id.value}\t{rate}\t{params}".rstrip() + "\n")


def cmd_sweep(args, out) -> None:
    u1, u2 = _profiles(args)
    rows = sweep(u1, u2, args.a_min, args.a_max, args.steps, _tol(args), args.workers)
    out.write(rows_to_csv(rows) if args.format == "csv" else rows_to_json(rows))


def _add_pair_flags(p: argparse.ArgumentParser) -> None:
    for key in ("p1", "eps1", "p2", "eps2"):
        p.add_argument(f"--{key}", type=float, default=None,
                       help=f"overrides the config file (default {DEFAULT_PROFILE[key]})")
    p.add_argument("--config", help="key = value file with p1, eps1, p2, eps2")
    p.add_argument("--fast", action="store_true",
                   help="coarse grids for interactive use (not authoritative)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zicburst",
        description="Bursty transmission on the Gaussian Z-interference channel "
                    "with processing energy cost.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("single-user", help="optimal burst fraction and rate of one user")
    p.add_argument("--power", type=float, required=True)
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_single_user)

    p = sub.add_parser("regime", help="very strong interference diagnostics")
    _add_pair_flags(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_regime)

    p = sub.add_parser("scheme", help="sum rate of one or all schemes at a given gain")
    _add_pair_flags(p)
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--id", choices=[s.value for s in SchemeId])
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_scheme)

    p = sub.add_parser("sweep", help="sum rates of all schemes over a grid of gains")
    _add_pair_flags(p)
    p.add_argument("--a-min", type=float, default=0.0)
    p.add_argument("--a-max", type=float, default=5.0)
    p.add_argument("--steps", type=int, default=51)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--workers", type=int, default=1,
                   help="process pool size; output is identical for any value")
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    try:
        args.func(args, out)
    except (UsageError, DomainError, InvalidInterval, InfeasibleError,
            PreconditionError, OSError) as exc:
        print(f"zicburst {args.command}: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
