"""Orders, periods and preperiods of matrix power sequences, and Landau's function.

Power sequences start at exponent one: ``M^1, M^2, ...``. If ``M^m`` is the
first repeat and it equals ``M^k`` (``k < m``) then the period is ``m - k``,
the preperiod is ``k - 1`` and the order is their sum, so a purely periodic
sequence has preperiod 0 and order equal to its period.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from math import gcd, lcm

import numpy as np

from . import kernels
from .matrix import SemiringMatrix
from .semiring import SemiringTable, boolean_b2

__all__ = [
    "OrderProfile",
    "CapExceeded",
    "order_profile_bruteforce",
    "SccDecomposition",
    "scc_decomposition",
    "scc_period",
    "LandauResult",
    "landau_g",
    "landau_table",
    "extremal_matrix",
    "massias_bound",
    "massias_check",
    "LANDAU_MAX_N",
]

LANDAU_MAX_N = 4096


@dataclass(frozen=True)
class OrderProfile:
    preperiod: int
    period: int

    @property
    def order(self) -> int:
        return self.period + self.preperiod

    def __str__(self):
        return f"per={self.period} pr={self.preperiod} ord={self.order}"


@dataclass(frozen=True)
class CapExceeded:
    """No repeat among ``M^1 .. M^(cap+1)``: certifies ``ord(M) > cap``."""

    cap: int

    def __str__(self):
        return f"ord > {self.cap}"


def order_profile_bruteforce(m: SemiringMatrix, cap: int) -> OrderProfile | CapExceeded:
    """Walk ``M^1, M^2, ...`` using at most ``cap`` matrix products.

    Powers are keyed by their row-major byte serialization; the dict
    compares full keys on hash hits, so a repeat is never accepted on a
    hash collision alone.
    """
    if cap < 1:
        raise ValueError("cap must be a positive integer")
    R = m.semiring
    first_seen = {m.to_bytes(): 1}
    x = m.entries
    for index in range(2, cap + 2):
        x = kernels.matmul(R.add, R.mul, x, m.entries)
        key = x.tobytes()
        k = first_seen.get(key)
        if k is not None:
            return OrderProfile(preperiod=k - 1, period=index - k)
        first_seen[key] = index
    return CapExceeded(cap)


@dataclass(frozen=True)
class SccDecomposition:
    components: tuple
    component_period: tuple


def _is_boolean(table: SemiringTable) -> bool:
    b2 = boolean_b2()
    return (table.order == 2 and np.array_equal(table.add, b2.add)
            and np.array_equal(table.mul, b2.mul))


def _tarjan(adj: list[list[int]]) -> list[list[int]]:
    # iterative Tarjan; components come out in reverse topological order
    n = len(adj)
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack, comps = [], []
    counter = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        while work:
            v, i = work.pop()
            if i == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            recurse = False
            while i < len(adj[v]):
                w = adj[v][i]
                i += 1
                if index[w] == -1:
                    work.append((v, i))
                    work.append((w, 0))
                    recurse = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if recurse:
                continue
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                comps.append(sorted(comp))
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
    return comps


def _component_period(comp: list[int], adj: list[list[int]]) -> int:
    members = set(comp)
    level = {comp[0]: 0}
    frontier = [comp[0]]
    g = 0
    while frontier:
        nxt = []
        for u in frontier:
            for v in adj[u]:
                if v not in members:
                    continue
                if v not in level:
                    level[v] = level[u] + 1
                    nxt.append(v)
        frontier = nxt
    for u in comp:
        for v in adj[u]:
            if v in members:
                g = gcd(g, level[u] + 1 - level[v])
    return max(g, 1)


def scc_decomposition(m: SemiringMatrix) -> SccDecomposition:
    if not _is_boolean(m.semiring):
        raise ValueError(f"SCC periods need a Boolean matrix, got semiring {m.semiring.name}")
    adj = [np.flatnonzero(row).tolist() for row in m.entries]
    comps = _tarjan(adj)
    return SccDecomposition(
        tuple(frozenset(c) for c in comps),
        tuple(_component_period(c, adj) for c in comps),
    )


def scc_period(m: SemiringMatrix) -> int:
    """Period of the power sequence of a Boolean matrix: the lcm over the
    strongly connected components of the gcd of their cycle lengths."""
    return lcm(*scc_decomposition(m).component_period)


def _primes_upto(limit: int) -> list[int]:
    if limit < 2:
        return []
    sieve = bytearray([1]) * (limit + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(limit) + 1):
        if sieve[i]:
            sieve[i * i:: i] = bytearray(len(sieve[i * i:: i]))
    return [i for i, v in enumerate(sieve) if v]


def _prime_bound(n: int) -> int:
    # g(n) only has prime factors <= 2.86 sqrt(n ln n)
    if n < 2:
        return 0
    return min(n, math.floor(2.86 * math.sqrt(n * math.log(n))))


def _landau_dp(n: int, primes: list[int]) -> list[int]:
    # best[m] = max lcm over sets of prime powers (distinct primes) of total size <= m
    best = [1] * (n + 1)
    for p in primes:
        for m in range(n, p - 1, -1):
            q = p
            while q <= m:
                cand = best[m - q] * q
                if cand > best[m]:
                    best[m] = cand
                q *= p
    return best


@dataclass(frozen=True)
class LandauResult:
    """``g(n)`` with its extremal partition (prime powers, padded with 1s).

    ``partition`` is sorted ascending; :meth:`by_prime` lists the 1s first
    and then the prime powers by increasing prime.
    """

    n: int
    value: int
    partition: tuple

    def by_prime(self) -> tuple:
        ones = tuple(x for x in self.partition if x == 1)
        powers = sorted((x for x in self.partition if x > 1), key=_smallest_prime_factor)
        return ones + tuple(powers)

    def __str__(self):
        return f"g={self.value} partition={'+'.join(map(str, self.partition))}"


def _smallest_prime_factor(x: int) -> int:
    for d in range(2, math.isqrt(x) + 1):
        if x % d == 0:
            return d
    return x


def _partition_of(n: int, value: int, primes: list[int]) -> tuple:
    parts = []
    rest = value
    for p in primes:
        q = 1
        while rest % p == 0:
            rest //= p
            q *= p
        if q > 1:
            parts.append(q)
    assert rest == 1
    parts += [1] * (n - sum(parts))
    return tuple(sorted(parts))


def landau_g(n: int) -> LandauResult:
    """Exact Landau function by knapsack DP over prime powers."""
    if not 1 <= n <= LANDAU_MAX_N:
        raise ValueError(f"landau_g is defined here for 1 <= n <= {LANDAU_MAX_N}, got {n}")
    primes = _primes_upto(_prime_bound(n))
    value = _landau_dp(n, primes)[n]
    return LandauResult(n, value, _partition_of(n, value, primes))


def landau_table(n_max: int) -> list[int]:
    """``[g(0)=1, g(1), ..., g(n_max)]`` from a single DP pass."""
    if not 1 <= n_max <= LANDAU_MAX_N:
        raise ValueError(f"n_max must lie in [1, {LANDAU_MAX_N}]")
    return _landau_dp(n_max, _primes_upto(_prime_bound(n_max)))


def extremal_matrix(n: int, semiring: SemiringTable | None = None) -> SemiringMatrix:
    """Block-diagonal permutation matrix whose cycle lengths are the parts
    of the extremal Landau partition of ``n``; its period is ``g(n)``."""
    R = semiring or boolean_b2()
    if R.zero is None or R.one is None:
        raise ValueError("extremal matrices need a semiring with zero and one")
    arr = np.full((n, n), R.zero, dtype=np.uint8)
    start = 0
    for part in landau_g(n).partition:
        for i in range(part):
            arr[start + i, start + (i + 1) % part] = R.one
        start += part
    return SemiringMatrix(R, arr)


def massias_bound(n: int) -> float:
    """Upper bound ``sqrt(n ln n) (1 + ln ln n / (2 ln n))`` on ``ln g(n)``."""
    ln = math.log(n)
    return math.sqrt(n * ln) * (1 + math.log(ln) / (2 * ln))


def massias_check(n_max: int) -> list[tuple[int, float, float]]:
    """``(n, ln g(n), bound)`` for every ``3 <= n <= n_max`` breaking the bound."""
    table = landau_table(n_max)
    out = []
    for n in range(3, n_max + 1):
        lg = math.log(table[n])
        bound = massias_bound(n)
        if lg > bound:
            out.append((n, lg, bound))
    return out
