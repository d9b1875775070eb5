"""Best ratios found by local search for g0 against the Hölder envelope."""
import argparse
import time

from berkfekete.potential import g0_weight
from berkfekete.search import SearchConfig, ratio_report


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--N", type=int, nargs="+", default=[4, 8, 16])
    ap.add_argument("--iterations", type=int, default=10_000)
    ap.add_argument("--restarts", type=int, default=8)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--no-structured-seeds", action="store_true")
    args = ap.parse_args()
    base = SearchConfig(N=2, iterations=args.iterations, restarts=args.restarts, seed=args.seed,
                        include_structured_seeds=not args.no_structured_seeds)
    t0 = time.perf_counter()
    print("N,best_value,ratio,envelope,holds")
    for row in ratio_report(g0_weight(), args.N, base):
        print(f"{row['N']},{row['best_value']:.12g},{row['ratio']:.12f},"
              f"{row['envelope']:.6f},{row['holds']}")
    print(f"# {time.perf_counter() - t0:.1f} s")


if __name__ == "__main__":
    main()
