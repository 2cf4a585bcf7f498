"""Compare the compiled kernels against the numpy fallback.

Usage: python3 benchmarks/bench_kernels.py [--sizes 8,20,40] [--repeat 5]

Each line reports best-of-repeat wall time per call for both backends and
checks that their outputs are identical.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from semiring_dh import kernels
from semiring_dh.semiring import builtin


def best_time(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def cases(n: int, rng: np.random.Generator):
    R = builtin("s6")
    a = rng.integers(0, 6, size=(n, n)).astype(np.uint8)
    b = rng.integers(0, 6, size=(n, n)).astype(np.uint8)
    powers = rng.integers(0, 6, size=(50, n, n)).astype(np.uint8)
    coeffs = rng.integers(0, 2, size=50).astype(np.uint8)
    cp = rng.integers(0, 2, size=(256, 50)).astype(np.uint8)
    cq = rng.integers(0, 2, size=(256, 50)).astype(np.uint8)
    return {
        "matmul": lambda k: k.matmul(R.add, R.mul, a, b),
        "poly_sum": lambda k: k.poly_sum(R.add, R.mul, 0, 1, powers, coeffs),
        "batch_tokens[256]": lambda k: k.batch_tokens(R.add, R.mul, 0, 1, powers, powers, cp, cq),
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="8,20,40")
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)

    impls = kernels.backends()
    if "cython" not in impls:
        print("compiled kernels unavailable; only the numpy fallback is importable")
    rng = np.random.default_rng(0)
    for n in (int(x) for x in args.sizes.split(",")):
        for label, call in cases(n, rng).items():
            outs = {name: call(mod) for name, mod in impls.items()}
            ref = outs["numpy"]
            same = all(np.array_equal(ref, o) for o in outs.values())
            times = {name: best_time(lambda m=mod: call(m), args.repeat) for name, mod in impls.items()}
            cols = " ".join(f"{name}={t * 1e3:.3f}ms" for name, t in times.items())
            speedup = times["numpy"] / times["cython"] if "cython" in times else 1.0
            print(f"kernel={label} n={n} {cols} speedup={speedup:.1f}x identical={str(same).lower()}")


if __name__ == "__main__":
    main()
