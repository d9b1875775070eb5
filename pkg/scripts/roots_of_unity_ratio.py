"""Ratio (F_N, F_N)_{g0} / (N log N) for the N-th roots of unity."""
import argparse
import math
import time

from berkfekete.potential import fekete_sum, g0_weight
from berkfekete.search import roots_of_unity


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-max", type=int, default=512)
    ap.add_argument("--every", type=int, default=1, help="print every k-th row")
    args = ap.parse_args()
    g = g0_weight()
    t0 = time.perf_counter()
    worst = 0.0
    print("N,fekete_sum,ratio,abs_dev")
    for N in range(2, args.n_max + 1):
        val = fekete_sum(roots_of_unity(N), g).approx
        ratio = val / (N * math.log(N))
        worst = max(worst, abs(ratio - 1))
        if N % args.every == 0 or N == 2:
            print(f"{N},{val:.12g},{ratio:.15f},{abs(ratio - 1):.3e}")
    print(f"# max |ratio - 1| = {worst:.3e}, {time.perf_counter() - t0:.2f} s")


if __name__ == "__main__":
    main()
