#!/usr/bin/env python3
"""Tabulate the reduced eigenvalue against the invariant duration.

Produces lambda(C) = (b-a)^2/(4C) + m^2 C on both branches, marks the
stationary durations, and writes the sweep to CSV.  Useful for seeing the
saddle landscape the Newton search navigates: a minimum-looking profile on
C > 0, its mirror image on C < 0, and nothing in between.
"""

import argparse

import numpy as np

from waveline.report import write_csv
from waveline.stationarity import optimal_C, reduced_lambda, stationary_lambda


def parse_args():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--a", type=float, nargs=4, default=[0.0, 0.0, 0.0, 0.0])
    p.add_argument("--b", type=float, nargs=4, default=[2.0, 0.6, 0.3, 0.1])
    p.add_argument("--m", type=float, default=1.0)
    p.add_argument("--points", type=int, default=200)
    p.add_argument("--span", type=float, default=3.0,
                   help="sweep C from C*/span to span*C* on each branch")
    p.add_argument("--out", default="out/sweep_lambda_vs_C.csv")
    return p.parse_args()


def main():
    args = parse_args()
    a, b = np.array(args.a), np.array(args.b)

    rows = []
    for branch in (1, -1):
        c_star = optimal_C(a, b, args.m, branch=branch)
        lam_star = stationary_lambda(a, b, args.m, branch=branch)
        print(f"branch {branch:+d}:  C* = {c_star:+.12f}   lambda* = {lam_star:+.12f}")
        for c in np.geomspace(abs(c_star) / args.span, abs(c_star) * args.span,
                              args.points) * branch:
            rows.append((branch, float(c), float(reduced_lambda(c, a, b, args.m))))

    write_csv(args.out, ("branch", "C", "lambda"), rows)
    print(f"wrote {len(rows)} rows to {args.out}")


if __name__ == "__main__":
    main()
