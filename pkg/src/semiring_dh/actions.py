"""Semigroup actions ``G x S -> S`` that the protocols and attacks are written against.

Semigroup elements are opaque: only ``compose`` and ``act`` are needed, and
equality is only ever tested on set elements (which are hashable for every
shipped action).
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from typing import Any

import numpy as np
from sympy import isprime, n_order

from . import gfp
from .matrix import (CenterPolynomial, MatrixMismatchError, PowerCache, SemiringMatrix,
                     _check_pair, mat_mul)
from .semiring import SemiringTable

__all__ = [
    "SemigroupAction",
    "TwoSidedAction",
    "ModExpAction",
    "TranslationAction",
    "FmLinearAction",
    "two_sided",
    "modexp",
    "translation",
    "fm_linear",
    "action_instances",
    "random_polynomial",
]


class SemigroupAction(ABC):
    """``act(compose(g, h), s) == act(g, act(h, s))``."""

    commutative: bool = True
    is_group: bool = False

    @abstractmethod
    def compose(self, g, h):
        ...

    @abstractmethod
    def act(self, g, s):
        ...

    @abstractmethod
    def sample(self, rng: np.random.Generator):
        """A random semigroup element."""

    def identity(self):
        raise NotImplementedError(f"{type(self).__name__} has no identity")

    def inverse(self, g):
        raise NotImplementedError(f"{type(self).__name__} is not a group action")

    def sample_invertible(self, rng: np.random.Generator):
        return self.sample(rng)

    def power(self, g, k: int):
        """``g^k`` for ``k >= 1`` by square-and-multiply on ``compose``."""
        if k < 1:
            if k == 0:
                return self.identity()
            raise ValueError("negative powers need inverses")
        result = None
        base = g
        while k:
            if k & 1:
                result = base if result is None else self.compose(result, base)
            k >>= 1
            if k:
                base = self.compose(base, base)
        return result


def random_polynomial(semiring: SemiringTable, degree_bound: int, rng: np.random.Generator) -> CenterPolynomial:
    """Degree uniform in ``[1, degree_bound]``, coefficients uniform over the
    center (zero included); the all-zero draw is resampled."""
    if degree_bound < 1:
        raise ValueError("degree_bound must be >= 1")
    center = sorted(semiring.center)
    if len(center) < 2:
        raise ValueError(f"center of {semiring.name} has fewer than two elements; no usable keys")
    deg = int(rng.integers(1, degree_bound + 1))
    while True:
        coeffs = [center[i] for i in rng.integers(0, len(center), size=deg + 1)]
        if any(c != semiring.zero for c in coeffs):
            return CenterPolynomial(semiring, coeffs)


class TwoSidedAction(SemigroupAction):
    """``(p, q) . X = p(M1) X q(M2)`` with ``p, q`` central polynomials.

    Elements of ``G`` are pairs of :class:`CenterPolynomial`; composition
    is ``(p1 p2, q2 q1)``.
    """

    def __init__(self, m1: SemiringMatrix, m2: SemiringMatrix, degree_bound: int = 49):
        _check_pair(m1, m2)
        self.semiring = m1.semiring
        self.n = m1.n
        self.m1, self.m2 = m1, m2
        self.degree_bound = degree_bound
        self._left = PowerCache(m1)
        self._right = PowerCache(m2)

    def compose(self, g, h):
        return (g[0] * h[0], h[1] * g[1])

    def act(self, g, s: SemiringMatrix) -> SemiringMatrix:
        _check_pair(self.m1, s)
        p, q = g
        return mat_mul(mat_mul(self._left.evaluate(p), s), self._right.evaluate(q))

    def sample(self, rng):
        return (random_polynomial(self.semiring, self.degree_bound, rng),
                random_polynomial(self.semiring, self.degree_bound, rng))

    def identity(self):
        one = CenterPolynomial(self.semiring, [self.semiring.one])
        return (one, one)

    def monomial(self, degree: int):
        """``(t^d, t^d)``: acts by ``X -> M1^d X M2^d``."""
        R = self.semiring
        t = CenterPolynomial(R, [R.zero] * degree + [R.one])
        return (t, t)


def _check_prime(p: int):
    if not isprime(p):
        raise ValueError(f"{p} is not prime")


class ModExpAction(SemigroupAction):
    """``(N, *)`` acting on the cyclic group ``<g> < (Z/pZ)^*`` by
    ``(a, s) -> s^a``. Exponents are kept modulo ``ord(g)``; the units
    modulo ``ord(g)`` form the group used by randomized baby-step giant-step.
    """

    def __init__(self, p: int, g: int):
        _check_prime(p)
        if not 0 < g % p:
            raise ValueError("generator must be a unit mod p")
        self.p, self.g = p, g % p
        self.order = int(n_order(self.g, p))

    def compose(self, a, b):
        return (a * b) % self.order

    def act(self, a, s):
        return pow(s, int(a), self.p)

    def sample(self, rng):
        return int(rng.integers(1, self.order + 1))

    def identity(self):
        return 1

    is_group = True

    def sample_invertible(self, rng):
        from math import gcd

        while True:
            a = int(rng.integers(1, self.order + 1))
            if gcd(a, self.order) == 1:
                return a

    def inverse(self, a):
        return pow(int(a), -1, self.order)


class TranslationAction(SemigroupAction):
    """``<g>`` acting on ``(Z/pZ)^*`` by multiplication; group elements are
    exponents modulo ``ord(g)`` composed by addition: ``(a, s) -> g^a s``."""

    is_group = True

    def __init__(self, p: int, g: int):
        _check_prime(p)
        if not 0 < g % p:
            raise ValueError("generator must be a unit mod p")
        self.p, self.g = p, g % p
        self.order = int(n_order(self.g, p))

    def compose(self, a, b):
        return (a + b) % self.order

    def act(self, a, s):
        return (pow(self.g, int(a), self.p) * s) % self.p

    def sample(self, rng):
        return int(rng.integers(0, self.order))

    def identity(self):
        return 0

    def inverse(self, a):
        return (-a) % self.order


class FmLinearAction(SemigroupAction):
    """``F_p[M]`` acting on ``F_p^n`` by matrix-vector product.

    Semigroup elements are int64 matrices; set elements are tuples.
    """

    def __init__(self, p: int, m):
        _check_prime(p)
        m = np.array(m, dtype=np.int64) % p
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError("M must be a square matrix")
        self.p, self.m, self.n = p, m, m.shape[0]
        self.minpoly = gfp.minimal_polynomial(m, p)

    @property
    def dimension(self) -> int:
        """``dim F_p[M]``, the degree of the minimal polynomial."""
        return len(self.minpoly) - 1

    def compose(self, g, h):
        return (g @ h) % self.p

    def act(self, g, s) -> tuple:
        v = np.asarray(s, dtype=np.int64)
        return tuple(int(x) for x in (g @ v) % self.p)

    def sample(self, rng):
        coeffs = rng.integers(0, self.p, size=self.dimension)
        return gfp.poly_at_matrix(coeffs, self.m, self.p)

    def identity(self):
        return np.eye(self.n, dtype=np.int64)


def two_sided(semiring: SemiringTable, n: int, m1: SemiringMatrix, m2: SemiringMatrix,
              degree_bound: int = 49) -> TwoSidedAction:
    for m in (m1, m2):
        if m.semiring != semiring or m.n != n:
            raise MatrixMismatchError(f"expected an {n}x{n} matrix over {semiring.name}")
    return TwoSidedAction(m1, m2, degree_bound)


def modexp(p: int, g: int) -> ModExpAction:
    return ModExpAction(p, g)


def translation(p: int, g: int) -> TranslationAction:
    return TranslationAction(p, g)


def fm_linear(p: int, n: int, m) -> FmLinearAction:
    action = FmLinearAction(p, m)
    if action.n != n:
        raise ValueError(f"M is {action.n}x{action.n}, expected n={n}")
    return action


def action_instances() -> dict[str, Any]:
    """Constructors of the shipped actions, by name."""
    return {"two_sided": two_sided, "modexp": modexp, "fm_linear": fm_linear, "translation": translation}
