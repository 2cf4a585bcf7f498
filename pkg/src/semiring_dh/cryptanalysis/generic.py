"""Attacks that only use the action oracle: exhaustive search, the G_Eve
fraction, cycle-finding plus baby-step giant-step for a known generator,
and randomized baby-step giant-step for group actions."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Any, Iterable, Iterator

import numpy as np

from ..actions import SemigroupAction
from ..matrix import CenterPolynomial
from ..semiring import SemiringTable

__all__ = [
    "SapInstance",
    "CountingAction",
    "Exhausted",
    "NotFound",
    "Witness",
    "brute_force_sap",
    "polynomial_pairs",
    "EveFraction",
    "eve_set_fraction",
    "eve_set_exact",
    "wilson_interval",
    "CyclicResult",
    "cyclic_attack",
    "brent_cycle",
    "BsgsResult",
    "randomized_bsgs",
]


@dataclass(frozen=True)
class SapInstance:
    """Find ``g`` with ``act(g, x) == y``; ``y`` is promised to lie in ``Gx``."""

    action: SemigroupAction
    x: Any
    y: Any


class CountingAction(SemigroupAction):
    """Delegating wrapper that counts calls to ``act``."""

    def __init__(self, inner: SemigroupAction):
        self.inner = inner
        self.applications = 0
        self.commutative = inner.commutative
        self.is_group = inner.is_group

    def act(self, g, s):
        self.applications += 1
        return self.inner.act(g, s)

    def compose(self, g, h):
        return self.inner.compose(g, h)

    def sample(self, rng):
        return self.inner.sample(rng)

    def sample_invertible(self, rng):
        return self.inner.sample_invertible(rng)

    def identity(self):
        return self.inner.identity()

    def inverse(self, g):
        return self.inner.inverse(g)

    def power(self, g, k):
        return self.inner.power(g, k)


@dataclass(frozen=True)
class Exhausted:
    budget: int
    tried: int


@dataclass(frozen=True)
class NotFound:
    reason: str
    applications: int


@dataclass(frozen=True)
class Witness:
    g: Any
    tried: int


def _nonzero_coeff_lists(center: list[int], zero: int, degree: int) -> Iterator[tuple]:
    for coeffs in itertools.product(center, repeat=degree + 1):
        if any(c != zero for c in coeffs):
            yield coeffs


def polynomial_pairs(semiring: SemiringTable, max_degree: int) -> Iterator[tuple[CenterPolynomial, CenterPolynomial]]:
    """All ``(p, q)`` with degrees ``<= max_degree``, by increasing
    ``deg p + deg q`` and then lexicographically on the coefficient lists."""
    center = sorted(semiring.center)
    zero = semiring.zero
    for total in range(2 * max_degree + 1):
        for dp in range(max(0, total - max_degree), min(total, max_degree) + 1):
            dq = total - dp
            for cp in _nonzero_coeff_lists(center, zero, dp):
                p = CenterPolynomial(semiring, cp)
                for cq in _nonzero_coeff_lists(center, zero, dq):
                    yield p, CenterPolynomial(semiring, cq)


def brute_force_sap(instance: SapInstance, enumeration: Iterable, budget: int) -> Witness | Exhausted:
    """First element of ``enumeration`` mapping ``x`` to ``y``, trying at
    most ``budget`` candidates."""
    if budget < 0:
        raise ValueError("budget must be non-negative")
    tried = 0
    for g in itertools.islice(enumeration, budget):
        tried += 1
        if instance.action.act(g, instance.x) == instance.y:
            return Witness(g, tried)
    return Exhausted(budget, tried)


def wilson_interval(hits: int, n: int, z: float = 1.959963984540054) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion (95% by default)."""
    if n == 0:
        return 0.0, 1.0
    phat = hits / n
    denom = 1 + z * z / n
    centre = (phat + z * z / (2 * n)) / denom
    half = z * math.sqrt(phat * (1 - phat) / n + z * z / (4 * n * n)) / denom
    low = 0.0 if hits == 0 else max(0.0, centre - half)
    high = 1.0 if hits == n else min(1.0, centre + half)
    return low, high


@dataclass(frozen=True)
class EveFraction:
    hits: int
    samples: int
    low: float
    high: float

    @property
    def fraction(self) -> float:
        return self.hits / self.samples if self.samples else 0.0


def eve_set_fraction(action: SemigroupAction, s, token, sample_count: int,
                     rng: np.random.Generator) -> EveFraction:
    """Monte-Carlo estimate of the share of ``G`` sending ``s`` to ``token``."""
    hits = sum(1 for _ in range(sample_count) if action.act(action.sample(rng), s) == token)
    low, high = wilson_interval(hits, sample_count)
    return EveFraction(hits, sample_count, low, high)


def eve_set_exact(action: SemigroupAction, s, token, elements: Iterable) -> EveFraction:
    """The same fraction computed over an explicit list of semigroup elements."""
    elements = list(elements)
    hits = sum(1 for g in elements if action.act(g, s) == token)
    return EveFraction(hits, len(elements), hits / len(elements), hits / len(elements))


def brent_cycle(f, x0, cap: int):
    """Brent's cycle detection on ``x0, f(x0), ...``.

    Returns ``(mu, lam, x_mu)``: tail length, cycle length and the first
    element on the cycle, or ``None`` when more than ``cap`` evaluations of
    ``f`` would be needed. ``f`` is called at most ``2 (mu + lam) + lam``
    times.
    """
    calls = 0
    power = lam = 1
    tortoise = x0
    hare = f(x0)
    calls += 1
    while tortoise != hare:
        if power == lam:
            tortoise = hare
            power *= 2
            lam = 0
        if calls >= cap:
            return None
        hare = f(hare)
        calls += 1
        lam += 1
    tortoise = hare = x0
    for _ in range(lam):
        hare = f(hare)
    mu = 0
    while tortoise != hare:
        tortoise = f(tortoise)
        hare = f(hare)
        mu += 1
    return mu, lam, tortoise


@dataclass(frozen=True)
class CyclicResult:
    k: int
    preperiod: int
    period: int
    applications: int


def cyclic_attack(g, x, y, action: SemigroupAction, cap: int) -> CyclicResult | NotFound:
    """Find ``k >= 1`` with ``act(g^k, x) == y``.

    The sequence ``z_i = g^i x`` has a tail of length ``tau`` and a cycle of
    length ``rho``, found with Brent's method. A ``k`` in the tail is caught
    while walking it; otherwise ``k`` lies in ``[b, b + rho)`` with
    ``b = max(tau, 1)`` and is found by baby-step giant-step on the cycle.
    Stepping backwards by ``m`` is applying ``g^((rho - m) mod rho)``, which
    is valid because ``y`` is on the cycle.
    """
    counter = CountingAction(action)
    step = lambda z: counter.act(g, z)  # noqa: E731
    found = brent_cycle(step, x, cap)
    if found is None:
        return NotFound(f"no cycle within {cap} applications", counter.applications)
    tau, rho, _ = found

    # walk the tail again, this time comparing against y
    z = x
    for i in range(1, tau + 1):
        z = step(z)
        if z == y:
            return _verified(g, x, y, counter, i, tau, rho)
    base = max(tau, 1)
    if tau == 0:
        z = step(z)
    # z = g^base x
    m = math.isqrt(rho - 1) + 1 if rho > 1 else 1
    baby = {}
    for j in range(m):
        baby.setdefault(z, j)
        if j + 1 < m:
            z = step(z)
    back = action.power(g, (rho - m) % rho) if (rho - m) % rho else None
    cur = y
    for i in range(m + 1):
        j = baby.get(cur)
        if j is not None:
            k = base + (j + i * m) % rho
            return _verified(g, x, y, counter, k, tau, rho)
        if back is None:
            break
        cur = counter.act(back, cur)
    return NotFound("y is not of the form g^k x", counter.applications)


def _verified(g, x, y, counter: CountingAction, k: int, tau: int, rho: int) -> CyclicResult | NotFound:
    if counter.act(counter.power(g, k), x) != y:
        return NotFound(f"candidate exponent {k} failed verification", counter.applications)
    return CyclicResult(k, tau, rho, counter.applications)


@dataclass(frozen=True)
class BsgsResult:
    witness: Any
    applications: int
    baby_steps: int
    giant_steps: int


def randomized_bsgs(action: SemigroupAction, x, y, group_size_hint: int, rng: np.random.Generator,
                    max_applications: int | None = None) -> BsgsResult | NotFound:
    """Random ``h_1 .. h_m`` with ``m ~ sqrt|G|`` tabulate ``h_i x``; then
    random ``h`` until ``h y`` hits the table, giving ``g = h^-1 h_i``."""
    if not action.is_group:
        raise ValueError("randomized baby-step giant-step needs a group action")
    counter = CountingAction(action)
    m = max(1, math.isqrt(max(group_size_hint, 1) - 1) + 1)
    limit = max_applications if max_applications is not None else 64 * m + 64
    table = {}
    for _ in range(m):
        h = action.sample_invertible(rng)
        table.setdefault(counter.act(h, x), h)
    giant = 0
    while counter.applications < limit:
        h = action.sample_invertible(rng)
        giant += 1
        hit = table.get(counter.act(h, y))
        if hit is None:
            continue
        g = action.compose(action.inverse(h), hit)
        if counter.act(g, x) == y:
            return BsgsResult(g, counter.applications, m, giant)
    return NotFound(f"no collision within {limit} applications", counter.applications)
