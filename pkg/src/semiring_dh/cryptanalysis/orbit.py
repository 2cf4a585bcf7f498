"""Orbit-size estimation for the two-sided protocol by counting token collisions.

Tokens ``p(M1) S q(M2)`` for random keys are computed in fixed-size batches.
Batch ``b`` always draws from the stream ``(seed, "orbit", b)``, so the
first ``N`` samples are identical for every requested sample count and
worker count. Each token is reduced to a 128-bit BLAKE2b digest; digest
collisions are then re-checked on the full matrices in a second pass.
"""

from __future__ import annotations

import hashlib
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .. import kernels
from ..matrix import SemiringMatrix
from ..protocol import ProtocolInstance
from ..rng import stream

__all__ = [
    "OrbitEstimate",
    "orbit_estimate",
    "sample_coefficients",
    "token_batch",
    "exact_orbit",
    "DIGEST_BYTES",
    "BATCH_SIZE",
]

DIGEST_BYTES = 16
BATCH_SIZE = 4096


@dataclass(frozen=True)
class OrbitEstimate:
    samples_drawn: int
    distinct_count: int
    collision_count: int
    false_collisions: int = 0

    @property
    def lower_bound_log2(self) -> float:
        return math.log2(self.distinct_count)

    @property
    def point_estimate_log2(self) -> float | None:
        """Birthday estimate ``log2(N^2 / 2c)``; absent without collisions."""
        if self.collision_count == 0:
            return None
        return math.log2(self.samples_drawn ** 2 / (2 * self.collision_count))

    def kv(self) -> str:
        pe = self.point_estimate_log2
        return (f"samples={self.samples_drawn} distinct={self.distinct_count} "
                f"collisions={self.collision_count} lower_bound_log2={self.lower_bound_log2:.4f} "
                f"point_estimate_log2={'none' if pe is None else f'{pe:.4f}'}")


def sample_coefficients(center: np.ndarray, zero: int, degree_bound: int, count: int,
                        rng: np.random.Generator) -> np.ndarray:
    """``(count, degree_bound + 1)`` coefficient rows: degree uniform in
    ``[1, degree_bound]``, coefficients uniform over the center up to that
    degree and ``zero`` above it. All-zero rows are redrawn."""
    out = np.full((count, degree_bound + 1), zero, dtype=np.uint8)
    todo = np.arange(count)
    while len(todo):
        deg = rng.integers(1, degree_bound + 1, size=len(todo))
        draws = center[rng.integers(0, len(center), size=(len(todo), degree_bound + 1))]
        mask = np.arange(degree_bound + 1)[None, :] <= deg[:, None]
        rows = np.where(mask, draws, zero).astype(np.uint8)
        out[todo] = rows
        todo = todo[(rows == zero).all(axis=1)]
    return out


@dataclass(frozen=True)
class _Plan:
    add: np.ndarray
    mul: np.ndarray
    zero: int
    one: int
    left: np.ndarray   # M1^e S
    right: np.ndarray  # M2^e
    center: np.ndarray
    degree_bound: int
    seed: int | None


def _plan(instance: ProtocolInstance, degree_bound: int, seed: int | None) -> _Plan:
    R = instance.semiring
    s = instance.s.entries
    powers = instance.left.stacked(degree_bound)
    left = np.ascontiguousarray(np.stack([kernels.matmul(R.add, R.mul, m, s) for m in powers]))
    right = np.ascontiguousarray(instance.right.stacked(degree_bound))
    center = np.array(sorted(R.center), dtype=np.uint8)
    if len(center) < 2:
        raise ValueError(f"center of {R.name} has a single element")
    return _Plan(R.add, R.mul, R.zero, R.one, left, right, center, degree_bound, seed)


def token_batch(plan: _Plan, batch: int, size: int = BATCH_SIZE) -> np.ndarray:
    """The ``(size, n, n)`` tokens of batch number ``batch``."""
    rng = stream(plan.seed, "orbit", batch)
    cp = sample_coefficients(plan.center, plan.zero, plan.degree_bound, size, rng)
    cq = sample_coefficients(plan.center, plan.zero, plan.degree_bound, size, rng)
    return kernels.batch_tokens(plan.add, plan.mul, plan.zero, plan.one,
                                plan.left, plan.right, cp, cq)


def _digest(token: np.ndarray) -> bytes:
    return hashlib.blake2b(token.tobytes(), digest_size=DIGEST_BYTES).digest()


def _batch_digests(args) -> list[bytes]:
    plan, batch, keep = args
    tokens = token_batch(plan, batch)[:keep]
    return [_digest(t) for t in tokens]


def _batches(total: int) -> list[tuple[int, int]]:
    return [(b, min(BATCH_SIZE, total - b * BATCH_SIZE)) for b in range(-(-total // BATCH_SIZE))]


def orbit_estimate(instance: ProtocolInstance, sample_count: int, degree_bound: int | None = None,
                   seed: int | None = None, workers: int = 1, verify: bool = True) -> OrbitEstimate:
    """Count distinct tokens among ``sample_count`` random key pairs.

    ``collision_count`` is the number of unordered sample pairs with equal
    tokens. With ``verify`` every digest collision is confirmed on the full
    matrices; a digest collision between different matrices is counted in
    ``false_collisions`` and removed from the estimate.
    """
    if sample_count < 1:
        raise ValueError("sample_count must be positive")
    deg = instance.degree_bound if degree_bound is None else degree_bound
    plan = _plan(instance, deg, seed)
    jobs = [(plan, b, keep) for b, keep in _batches(sample_count)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            digest_lists = pool.map(_batch_digests, jobs)
    else:
        digest_lists = map(_batch_digests, jobs)

    multiplicity: dict[bytes, int] = {}
    for digests in digest_lists:
        for d in digests:
            multiplicity[d] = multiplicity.get(d, 0) + 1

    false = 0
    if verify:
        repeated = {d for d, c in multiplicity.items() if c > 1}
        if repeated:
            false = _verify(plan, sample_count, repeated, multiplicity)
    distinct = len(multiplicity) + false
    pairs = sum(c * (c - 1) // 2 for c in multiplicity.values()) - false
    return OrbitEstimate(sample_count, distinct, pairs, false)


def _verify(plan: _Plan, sample_count: int, repeated: set, multiplicity: dict) -> int:
    # second pass: every occurrence of a repeated digest must equal the first
    rep: dict[bytes, bytes] = {}
    false = 0
    for b, keep in _batches(sample_count):
        tokens = token_batch(plan, b)[:keep]
        for t in tokens:
            raw = t.tobytes()
            d = hashlib.blake2b(raw, digest_size=DIGEST_BYTES).digest()
            if d not in repeated:
                continue
            first = rep.setdefault(d, raw)
            if first != raw:
                false += 1
    return false


def exact_orbit(instance: ProtocolInstance, max_degree: int | None = None) -> set[bytes]:
    """All tokens ``p(M1) S q(M2)`` over every non-zero ``p, q`` of degree
    at most ``max_degree``, by closing the set of polynomial values under
    adding one more term. Only feasible when those value sets are small."""
    deg = instance.degree_bound if max_degree is None else max_degree
    left = _poly_values(instance.left, deg)
    right = _poly_values(instance.right, deg)
    R = instance.semiring
    s = instance.s.entries
    out = set()
    for pl in left:
        ps = kernels.matmul(R.add, R.mul, np.frombuffer(pl, np.uint8).reshape(s.shape), s)
        for qr in right:
            q = np.frombuffer(qr, np.uint8).reshape(s.shape)
            out.add(kernels.matmul(R.add, R.mul, ps, q).tobytes())
    return out


def _poly_values(cache, deg: int) -> set[bytes]:
    # values of sum_e r_e M^e, tracked with a flag for "some r_e is non-zero"
    R = cache.matrix.semiring
    n = cache.matrix.n
    zero_mat = np.full((n, n), R.zero, dtype=np.uint8)
    states = {(zero_mat.tobytes(), False)}
    for e in range(deg + 1):
        pe = cache.power(e).entries
        nxt = set()
        for raw, nonzero in states:
            acc = np.frombuffer(raw, np.uint8).reshape(n, n)
            for r in sorted(R.center):
                if r == R.zero:
                    nxt.add((raw, nonzero))
                    continue
                term = kernels.scale(R.mul, r, pe)
                nxt.add((kernels.matadd(R.add, acc, term).tobytes(), True))
        states = nxt
    return {raw for raw, nonzero in states if nonzero}


def as_matrix(instance: ProtocolInstance, raw: bytes) -> SemiringMatrix:
    n = instance.n
    return SemiringMatrix(instance.semiring, np.frombuffer(raw, np.uint8).reshape(n, n))
