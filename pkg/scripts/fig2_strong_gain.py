"""Sum rates of schemes I-IV against the cross gain for a >= 1.

Prints the table behind the strong-gain comparison plus where scheme IV
reaches the interference-free bound.

    python scripts/fig2_strong_gain.py [--steps 41] [--fast] [--csv out.csv]
"""

import argparse

from zicburst.cli import rows_to_csv, sweep
from zicburst.core_math import DEFAULT_TOL, FAST_TOL
from zicburst.regimes import very_strong_threshold
from zicburst.single_user import UserProfile, single_user_optimum


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--power", type=float, default=3.5)
    parser.add_argument("--eps", type=float, default=2.0)
    parser.add_argument("--a-max", type=float, default=5.0)
    parser.add_argument("--steps", type=int, default=41)
    parser.add_argument("--fast", action="store_true")
    parser.add_argument("--csv")
    args = parser.parse_args()

    u = UserProfile(args.power, args.eps)
    opt = single_user_optimum(u)
    print(f"theta* = {opt.theta_star:.4f}, nu* = {opt.nu_star:.4f}, "
          f"theta1* + theta2* = {2 * opt.theta_star:.4f}")
    thr = very_strong_threshold(u, u)
    print(f"very strong threshold a = {thr:.4f} (without processing cost: {1 + u.power})")

    rows = sweep(u, u, 1.0, args.a_max, args.steps, FAST_TOL if args.fast else DEFAULT_TOL)
    print(f"{'a':>6} {'I':>8} {'II':>8} {'III':>8} {'IV':>8} {'bound':>8}  best")
    for r in rows:
        print(f"{r.a:6.3f} {r.scheme_i:8.5f} {r.scheme_ii:8.5f} {r.scheme_iii:8.5f} "
              f"{r.scheme_iv:8.5f} {r.upper_bound:8.5f}  {r.best}")
    saturated = [r.a for r in rows if r.upper_bound - r.scheme_iv <= 1e-4]
    if saturated:
        print(f"scheme IV within 1e-4 of the bound from a = {min(saturated):.3f}")
    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write(rows_to_csv(rows))


if __name__ == "__main__":
    main()
