"""Sum rates of schemes I, II, III and V against the cross gain for a < 1.

Reports the last gain at which power control (scheme V) still beats time
division, and how far scheme III trails scheme V.

    python scripts/fig3_weak_gain.py [--steps 100] [--fast] [--csv out.csv]
"""

import argparse

from zicburst.cli import rows_to_csv, sweep
from zicburst.core_math import DEFAULT_TOL, FAST_TOL
from zicburst.schemes import TIE_TOL
from zicburst.single_user import UserProfile


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--power", type=float, default=3.5)
    parser.add_argument("--eps", type=float, default=2.0)
    parser.add_argument("--steps", type=int, default=100)
    parser.add_argument("--fast", action="store_true")
    parser.add_argument("--csv")
    args = parser.parse_args()

    u = UserProfile(args.power, args.eps)
    a_max = (args.steps - 1) / args.steps
    rows = sweep(u, u, 0.0, a_max, args.steps, FAST_TOL if args.fast else DEFAULT_TOL)
    print(f"{'a':>6} {'I':>8} {'II':>8} {'III':>8} {'V':>8} {'bound':>8}  best")
    for r in rows:
        print(f"{r.a:6.3f} {r.scheme_i:8.5f} {r.scheme_ii:8.5f} {r.scheme_iii:8.5f} "
              f"{r.scheme_v:8.5f} {r.upper_bound:8.5f}  {r.best}")

    better = [r.a for r in rows if r.scheme_v - r.scheme_ii > TIE_TOL]
    if better:
        print(f"scheme V beats TDM up to a = {max(better):.3f}")
    gaps = [(r.scheme_v - r.scheme_iii, r.a) for r in rows]
    gap, at = max(gaps)
    print(f"largest V - III gap: {gap:.2e} bits at a = {at:.3f}")
    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write(rows_to_csv(rows))


if __name__ == "__main__":
    main()
