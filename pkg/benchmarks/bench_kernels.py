"""Compare the compiled and pure-Python modular echelon kernels.

Usage: python3 benchmarks/bench_kernels.py [--sizes 40 80 120] [--repeat 3]
"""
import argparse
import random
import time

from rathyper import _kernels_py

try:
    from rathyper import _fastkernels
except ImportError:
    _fastkernels = None


def random_rows(n: int, m: int, seed: int) -> list[list[int]]:
    rng = random.Random(seed)
    # rank-deficient on purpose so the pivot search does real work
    base = [[rng.randint(-50, 50) for _ in range(m)] for _ in range(n // 2 + 1)]
    rows = []
    for _ in range(n):
        a, b = rng.sample(range(len(base)), 2)
        ca, cb = rng.randint(-3, 3), rng.randint(-3, 3)
        rows.append([ca * x + cb * y for x, y in zip(base[a], base[b])])
    return rows


def best_time(fn, rows, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn(rows)
        best = min(best, time.perf_counter() - t)
    return best


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", nargs="+", type=int, default=[40, 80, 160])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    print(f"{'size':>6} {'python (s)':>12} {'cython (s)':>12} {'speedup':>8}")
    for n in args.sizes:
        rows = random_rows(n, n + 10, seed=n)
        tp = best_time(_kernels_py.echelon_mod_p, rows, args.repeat)
        if _fastkernels is None:
            print(f"{n:>6} {tp:>12.4f} {'n/a':>12} {'':>8}")
            continue
        assert _fastkernels.echelon_mod_p(rows) == _kernels_py.echelon_mod_p(rows)
        tc = best_time(_fastkernels.echelon_mod_p, rows, args.repeat)
        print(f"{n:>6} {tp:>12.4f} {tc:>12.4f} {tp / tc:>7.1f}x")


if __name__ == "__main__":
    main()
