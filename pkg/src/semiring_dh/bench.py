"""Timings and operation counts for key generation and key derivation.

Key generation on a fresh instance pays for the powers ``M^0 .. M^k``,
about ``k`` matrix products, so its operation count grows like ``k n^3``.
Derivation on a warm instance is one polynomial sum per side plus two
products, ``O(k n^2 + n^3)``. A token is ``n^2`` elements of
``ceil(lg theta)`` bits each.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

from . import kernels
from .matrix import CenterPolynomial
from .protocol import ProtocolInstance, derive_shared, keygen, keypair_from, random_instance
from .rng import stream
from .semiring import SemiringTable

__all__ = ["BenchReport", "bench_protocol", "token_bits"]


@dataclass(frozen=True)
class BenchReport:
    label: str
    n: int
    k: int
    theta: int
    seconds: float
    ops: int

    def kv(self) -> str:
        return (f"op={self.label} n={self.n} k={self.k} theta={self.theta} "
                f"seconds={self.seconds:.6f} ops={self.ops} bits={token_bits(self.n, self.theta)}")


def token_bits(n: int, theta: int) -> int:
    """Bits needed to send one ``n x n`` matrix over ``theta`` elements."""
    return n * n * max(1, math.ceil(math.log2(theta)))


def _measure(fn) -> tuple[float, int]:
    kernels.reset_counters()
    start = time.perf_counter()
    fn()
    elapsed = time.perf_counter() - start
    return elapsed, sum(kernels.ops.values())


def bench_protocol(semiring: SemiringTable, n: int, degree_bound: int, seed: int | None = None,
                   repeat: int = 3) -> list[BenchReport]:
    """Best-of-``repeat`` keygen (cold power cache) and derive (warm) timings.

    Keys have exactly degree ``k`` so the count reflects it; sampling is
    left out of the timed region.
    """
    rng = stream(seed, "bench", semiring.name, n, degree_bound)
    base = random_instance(semiring, n, rng, degree_bound)
    results = {"keygen": [], "derive": []}
    for _ in range(repeat):
        fresh = ProtocolInstance(base.m1, base.m2, base.s, degree_bound)
        key_rng = stream(seed, "bench", "keys")
        p, q = (_full_degree(semiring, degree_bound, key_rng) for _ in range(2))
        t, ops = _measure(lambda: keypair_from(fresh, p, q))
        results["keygen"].append((t, ops))
        own, _ = keypair_from(fresh, p, q)
        _, token = keygen(fresh, key_rng)
        t, ops = _measure(lambda: derive_shared(fresh, own, token))
        results["derive"].append((t, ops))
    out = []
    for label, runs in results.items():
        best = min(runs)
        out.append(BenchReport(label, n, degree_bound, semiring.order, best[0], best[1]))
    return out


def _full_degree(semiring: SemiringTable, k: int, rng) -> CenterPolynomial:
    center = sorted(semiring.center)
    coeffs = [center[i] for i in rng.integers(0, len(center), size=k)] + [semiring.one]
    return CenterPolynomial(semiring, coeffs)
