"""Slack statistics of the Fekete-sum upper bounds on random divisors."""
import argparse
from fractions import Fraction

import numpy as np

from berkfekete.bounds import holder_bound_check, mahler_general_check
from berkfekete.potential import g0_weight, zero_weight
from berkfekete.scalars import FieldMode


def random_arch(rng, N):
    z = rng.normal(size=N) + 1j * rng.normal(size=N)
    return list(z * np.exp(rng.normal(size=N)))


def random_padic(rng, p, N):
    pts = set()
    while len(pts) < N:
        pts.add(Fraction(int(rng.integers(-p ** 6, p ** 6)), p ** int(rng.integers(0, 4))))
    return sorted(pts)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=200)
    ap.add_argument("--n-max", type=int, default=100)
    ap.add_argument("--prime", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)
    g0, z0 = g0_weight(), zero_weight(FieldMode.padic(args.prime))
    rows = {"arch_general": [], "arch_holder": [], "padic_general": [], "padic_holder": []}
    for _ in range(args.trials):
        N = int(rng.integers(1, args.n_max + 1))
        F = random_arch(rng, N)
        rows["arch_general"].append(mahler_general_check(g0, F, 1.0 / N).slack)
        rows["arch_holder"].append(holder_bound_check(g0, F).slack)
        F = random_padic(rng, args.prime, N)
        rows["padic_general"].append(mahler_general_check(z0, F, Fraction(1, args.prime)).slack)
        rows["padic_holder"].append(holder_bound_check(z0, F).slack)
    print("check,min_slack,median_slack,violations")
    for k, v in rows.items():
        v = np.array(v)
        print(f"{k},{v.min():.6g},{np.median(v):.6g},{int(np.sum(v < 0))}")


if __name__ == "__main__":
    main()
