"""Compare the compiled and pure-Python multiplication kernels.

Times the hot path (sparse term-map products) on workloads resembling
the real verification pipeline: dense binomial powers, the full n=3 and
n=4 product-solution verifications, and a two-variable continuation.

Usage: python benchmarks/bench_kernel.py [--repeat N]
"""

import argparse
import time
from fractions import Fraction

from toricpke import _pykernel
from toricpke._kernel import BACKEND, mul_terms as fast_mul
from toricpke.algebra import MultiPoly


def binomial_power_terms(nvars, k):
    p = MultiPoly.one(nvars)
    for i in range(nvars):
        p = p + MultiPoly.variable(nvars, i) * Fraction(1, i + 2)
    return (p ** k).terms


def time_mul(mul, a, b, repeat):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        mul(a, b)
        best = min(best, time.perf_counter() - start)
    return best


def bench_products(repeat):
    rows = []
    for nvars, k in ((2, 6), (3, 5), (4, 4)):
        terms = binomial_power_terms(nvars, k)
        fast = time_mul(fast_mul, terms, terms, repeat)
        pure = time_mul(_pykernel.mul_terms, terms, terms, repeat)
        rows.append((f"square a {nvars}-var degree-{k * nvars} power "
                     f"({len(terms)} terms)", fast, pure))
    return rows


def bench_verification(repeat):
    from toricpke.catalog import product_solution
    from toricpke.ma_engine import verify_ma_star

    rows = []
    for part in ((1, 2), (1, 1, 2), (4,)):
        p = product_solution(part)

        def run():
            assert verify_ma_star(p).is_solution

        best = float("inf")
        for _ in range(repeat):
            start = time.perf_counter()
            run()
            best = min(best, time.perf_counter() - start)
        rows.append((f"verify product solution {part}", best, None))
    return rows


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    print(f"active kernel backend: {BACKEND}")
    print()
    print(f"{'workload':<55} {'active':>10} {'python':>10} {'speedup':>8}")
    for label, fast, pure in bench_products(args.repeat):
        ratio = f"{pure / fast:7.2f}x" if pure else ""
        pure_s = f"{pure * 1e3:8.2f}ms" if pure else "      --"
        print(f"{label:<55} {fast * 1e3:8.2f}ms {pure_s} {ratio}")
    print()
    print("end-to-end (uses whichever backend is active):")
    for label, best, _ in bench_verification(args.repeat):
        print(f"{label:<55} {best * 1e3:8.2f}ms")


if __name__ == "__main__":
    main()
