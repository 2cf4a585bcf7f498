"""Linear-algebra reduction of the Diffie-Hellman semigroup problem.

When the action factors through a commutative matrix algebra
``F_p[G] < Mat_n(F_p)`` via ``psi(g s) = rho(g) psi(s)``, random samples of
``F_p[G]`` let an eavesdropper solve for matrices ``M_g, M_h`` that agree
with ``rho(g), rho(h)`` on ``u = psi(x)``. Then
``M_g M_h u = M_g rho(h) u = rho(h) M_g u = rho(h) rho(g) u``
is the shared point, whether or not ``M_g`` equals ``rho(g)``.

No oracle exists for two-sided semiring actions: the reduction needs a
field, and there is nothing to sample from.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from .. import gfp
from ..actions import FmLinearAction

__all__ = [
    "LinearizedAction",
    "LinearAttackResult",
    "LinearAttackFailure",
    "linear_algebra_attack",
    "fm_linearized",
    "fm_action_break",
    "FmInstance",
    "fm_instance",
    "basis_probability",
    "basis_frequency",
]


@dataclass(frozen=True)
class LinearizedAction:
    """``psi: S -> F_p^n``, ``rho: G -> Mat_n(F_p)`` and a sampler of ``F_p[G]``."""

    p: int
    n: int
    psi: Callable
    rho: Callable
    sampler: Callable[[np.random.Generator], np.ndarray]
    dimension: int


@dataclass(frozen=True)
class LinearAttackResult:
    sigma: np.ndarray
    rounds: int


@dataclass(frozen=True)
class LinearAttackFailure:
    rounds: int
    reason: str


def _columns(family: list[np.ndarray], u: np.ndarray, p: int) -> np.ndarray:
    return np.stack([(m @ u) % p for m in family], axis=1)


def linear_algebra_attack(lin: LinearizedAction, u, v, w, rng: np.random.Generator,
                          max_rounds: int = 64) -> LinearAttackResult | LinearAttackFailure:
    """Recover ``psi((gh) x)`` from ``u = psi(x)``, ``v = psi(g x)``, ``w = psi(h x)``.

    Each round draws ``k = dim F_p[G]`` samples, keeps the subfamily whose
    images ``M_i u`` are pivot columns (padding with zero matrices up to
    ``n``), and solves ``[M_i u] a = v`` and ``[M_i u] b = w``. A round is
    repeated with fresh samples if either system is inconsistent.
    """
    p, n = lin.p, lin.n
    u = np.asarray(u, dtype=np.int64) % p
    v = np.asarray(v, dtype=np.int64) % p
    w = np.asarray(w, dtype=np.int64) % p
    zero = np.zeros((n, n), dtype=np.int64)
    for rounds in range(1, max_rounds + 1):
        family = [np.asarray(lin.sampler(rng), dtype=np.int64) % p for _ in range(lin.dimension)]
        _, pivots = gfp.rref(_columns(family, u, p), p)
        chosen = [family[i] for i in pivots][:n]
        chosen += [zero] * (n - len(chosen))
        cols = _columns(chosen, u, p)
        a = gfp.solve(cols, v, p)
        b = gfp.solve(cols, w, p)
        if a is None or b is None:
            continue
        mg = sum(int(c) * m for c, m in zip(a, chosen)) % p
        mh = sum(int(c) * m for c, m in zip(b, chosen)) % p
        sigma = (mg @ ((mh @ u) % p)) % p
        return LinearAttackResult(sigma, rounds)
    return LinearAttackFailure(max_rounds, "no solvable system within the retry budget")


def fm_linearized(action: FmLinearAction) -> LinearizedAction:
    """``F_p[M]`` on ``F_p^n``: ``psi`` and ``rho`` are identities and the
    sampler draws polynomials in ``M`` of degree below the minimal polynomial."""
    p = action.p
    return LinearizedAction(
        p=p, n=action.n,
        psi=lambda s: np.asarray(s, dtype=np.int64) % p,
        rho=lambda g: np.asarray(g, dtype=np.int64) % p,
        sampler=action.sample,
        dimension=action.dimension,
    )


@dataclass(frozen=True)
class FmInstance:
    """An eavesdropper's view ``(x, g x, h x)`` with the hidden answer ``g h x``."""

    action: FmLinearAction
    x: tuple
    gx: tuple
    hx: tuple
    shared: tuple


def fm_instance(p: int, n: int, rng: np.random.Generator, m=None) -> FmInstance:
    """Random ``M`` (unless given), base point ``x`` and secrets ``g, h``."""
    if m is None:
        m = rng.integers(0, p, size=(n, n))
    action = FmLinearAction(p, m)
    x = tuple(int(c) for c in rng.integers(0, p, size=n))
    g = action.sample(rng)
    h = action.sample(rng)
    gx, hx = action.act(g, x), action.act(h, x)
    return FmInstance(action, x, gx, hx, action.act(g, hx))


def fm_action_break(p: int, n: int, m, instance: FmInstance, rng: np.random.Generator,
                    max_rounds: int = 64) -> LinearAttackResult | LinearAttackFailure:
    """The linear attack specialised to ``F_p[M]`` acting on ``F_p^n``."""
    action = instance.action
    if action.p != p or action.n != n or not np.array_equal(action.m, np.asarray(m, dtype=np.int64) % p):
        raise ValueError("instance does not match (p, n, M)")
    lin = fm_linearized(action)
    return linear_algebra_attack(lin, instance.x, instance.gx, instance.hx, rng, max_rounds)


def basis_probability(q: int, k: int) -> Fraction:
    """``|GL_k(F_q)| / |Mat_k(F_q)| = prod_{i=1..k} (1 - q^-i)``."""
    out = Fraction(1)
    for i in range(1, k + 1):
        out *= 1 - Fraction(1, q ** i)
    return out


def basis_frequency(q: int, k: int, draws: int, rng: np.random.Generator) -> float:
    """Share of uniformly random ``k x k`` matrices over ``F_q`` that are invertible."""
    hits = sum(gfp.rank(rng.integers(0, q, size=(k, k)), q) == k for _ in range(draws))
    return hits / draws
