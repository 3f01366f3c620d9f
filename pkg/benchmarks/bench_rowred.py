"""Benchmark the compiled row-reduction kernel against the pure-Python twin.

Random dense matrices over Q (via integer rows) and GF(p); the two
implementations must produce identical output, which is asserted before any
timing is reported.

Usage: python benchmarks/bench_rowred.py [--sizes 40,80,120] [--seed 7]
"""

from __future__ import annotations

import argparse
import random
import time

from cikit import _rowred_py

try:
    from cikit import _rowred as compiled
except ImportError:
    compiled = None


def random_int_matrix(rng, m, n, lo=-20, hi=20):
    return [[rng.randrange(lo, hi + 1) for _ in range(n)] for _ in range(m)]


def timed(fn, *args, repeats=3):
    best = float("inf")
    result = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, result


def bench_case(name, pure_fn, fast_fn, args, lines):
    t_pure, r_pure = timed(pure_fn, *args)
    if fast_fn is None:
        lines.append(f"{name:28s} pure {t_pure * 1e3:9.2f} ms   (no compiled kernel)")
        return
    t_fast, r_fast = timed(fast_fn, *args)
    assert r_pure == r_fast, f"{name}: compiled and pure kernels disagree"
    speedup = t_pure / t_fast if t_fast else float("inf")
    lines.append(
        f"{name:28s} pure {t_pure * 1e3:9.2f} ms   compiled {t_fast * 1e3:9.2f} ms"
        f"   speedup {speedup:6.1f}x"
    )


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--sizes", default="40,80,120")
    parser.add_argument("--seed", type=int, default=7)
    parser.add_argument("--prime", type=int, default=7)
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]
    rng = random.Random(args.seed)

    lines = []
    for n in sizes:
        m = (2 * n) // 3
        ints = random_int_matrix(rng, m, n)
        fp = [[v % args.prime for v in row] for row in ints]
        bench_case(
            f"rref_int {m}x{n}",
            _rowred_py.rref_int,
            compiled.rref_int if compiled else None,
            ([list(r) for r in ints],),
            lines,
        )
        bench_case(
            f"rref_fp  {m}x{n} (p={args.prime})",
            lambda rows: _rowred_py.rref_fp(rows, args.prime),
            (lambda rows: compiled.rref_fp(rows, args.prime)) if compiled else None,
            ([list(r) for r in fp],),
            lines,
        )
        d = ints[: m // 2]
        c = ints[m // 2 :]
        bench_case(
            f"indep_int {m}x{n}",
            _rowred_py.indep_int,
            compiled.indep_int if compiled else None,
            (d, c),
            lines,
        )

    print(f"compiled kernel available: {compiled is not None}")
    print()
    print("\n".join(lines))


if __name__ == "__main__":
    main()
