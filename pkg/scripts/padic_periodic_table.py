"""Exact Fekete sums over periodic points of z^d + lambda, p-adically."""
import argparse
from fractions import Fraction

from berkfekete.dynamics import periodic_fekete

FAMILIES = [(3, 2, Fraction(1, 9), 3), (5, 2, Fraction(1, 25), 3), (7, 3, Fraction(1, 49), 2)]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--degree-cap", type=int, default=64)
    args = ap.parse_args()
    print("p,d,lambda,n,#P_n,sum/log p,predicted/log p,match,ratio*log d/log p,ratio")
    for p, d, lam, n_max in FAMILIES:
        for n in range(1, n_max + 1):
            r = periodic_fekete(p, d, lam, n, args.degree_cap)
            print(f"{p},{d},{lam},{n},{r.count},{r.sum.exact},{r.predicted.exact},"
                  f"{r.match},{r.ratio_coeff},{r.ratio:.12f}")


if __name__ == "__main__":
    main()
