"""Square matrices over a table semiring and polynomials with central coefficients."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from . import kernels
from .semiring import SemiringTable

__all__ = [
    "MatrixMismatchError",
    "SemiringMatrix",
    "CenterPolynomial",
    "identity",
    "zero_matrix",
    "mat_add",
    "mat_mul",
    "mat_pow",
    "eval_poly",
    "two_sided_apply",
    "PowerCache",
]


class MatrixMismatchError(ValueError):
    """Operands over different semirings or of different sizes."""


@dataclass(frozen=True, eq=False)
class SemiringMatrix:
    """An ``n x n`` matrix of element indices bound to a semiring."""

    semiring: SemiringTable
    entries: np.ndarray

    def __post_init__(self):
        arr = np.array(self.entries, dtype=np.int64)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
            raise MatrixMismatchError(f"matrix must be square and non-empty, got shape {arr.shape}")
        k = self.semiring.order
        if ((arr < 0) | (arr >= k)).any():
            raise ValueError(f"matrix entries must lie in [0, {k})")
        out = np.ascontiguousarray(arr, dtype=np.uint8)
        out.setflags(write=False)
        object.__setattr__(self, "entries", out)

    @classmethod
    def _wrap(cls, semiring: SemiringTable, arr: np.ndarray) -> "SemiringMatrix":
        # trusted constructor for kernel outputs; skips range validation
        obj = object.__new__(cls)
        arr = np.ascontiguousarray(arr, dtype=np.uint8)
        arr.setflags(write=False)
        object.__setattr__(obj, "semiring", semiring)
        object.__setattr__(obj, "entries", arr)
        return obj

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    @cached_property
    def _bytes(self) -> bytes:
        return self.entries.tobytes()

    def to_bytes(self) -> bytes:
        """Canonical row-major serialization of the entries."""
        return self._bytes

    def __eq__(self, other):
        if not isinstance(other, SemiringMatrix):
            return NotImplemented
        return (self.semiring == other.semiring and self.n == other.n
                and self._bytes == other._bytes)

    def __hash__(self):
        return hash((self.semiring.name, self.n, self._bytes))

    def __repr__(self):
        return f"SemiringMatrix({self.semiring.name}, n={self.n}, {self.entries.tolist()})"

    def tolist(self) -> list[list[int]]:
        return self.entries.tolist()

    def __add__(self, other: "SemiringMatrix") -> "SemiringMatrix":
        return mat_add(self, other)

    def __matmul__(self, other: "SemiringMatrix") -> "SemiringMatrix":
        return mat_mul(self, other)


def _check_pair(a: SemiringMatrix, b: SemiringMatrix):
    if a.semiring is not b.semiring and a.semiring != b.semiring:
        raise MatrixMismatchError(f"semiring mismatch: {a.semiring.name} vs {b.semiring.name}")
    if a.n != b.n:
        raise MatrixMismatchError(f"size mismatch: {a.n} vs {b.n}")


def mat_add(a: SemiringMatrix, b: SemiringMatrix) -> SemiringMatrix:
    _check_pair(a, b)
    return SemiringMatrix._wrap(a.semiring, kernels.matadd(a.semiring.add, a.entries, b.entries))


def mat_mul(a: SemiringMatrix, b: SemiringMatrix) -> SemiringMatrix:
    _check_pair(a, b)
    R = a.semiring
    return SemiringMatrix._wrap(R, kernels.matmul(R.add, R.mul, a.entries, b.entries))


def _require_zero_one(semiring: SemiringTable):
    if semiring.zero is None or semiring.one is None:
        raise ValueError(f"semiring {semiring.name} must declare both zero and one")


def identity(semiring: SemiringTable, n: int) -> SemiringMatrix:
    _require_zero_one(semiring)
    arr = np.full((n, n), semiring.zero, dtype=np.uint8)
    np.fill_diagonal(arr, semiring.one)
    return SemiringMatrix._wrap(semiring, arr)


def zero_matrix(semiring: SemiringTable, n: int) -> SemiringMatrix:
    if semiring.zero is None:
        raise ValueError(f"semiring {semiring.name} has no zero")
    return SemiringMatrix._wrap(semiring, np.full((n, n), semiring.zero, dtype=np.uint8))


def mat_pow(m: SemiringMatrix, e: int) -> SemiringMatrix:
    """``m**e`` by square-and-multiply; ``e = 0`` gives the identity."""
    if e < 0:
        raise ValueError("negative exponent")
    if e == 0:
        return identity(m.semiring, m.n)
    result = None
    base = m
    while e:
        if e & 1:
            result = base if result is None else mat_mul(result, base)
        e >>= 1
        if e:
            base = mat_mul(base, base)
    return result


@dataclass(frozen=True, eq=False)
class CenterPolynomial:
    """``r_0 + r_1 t + ... + r_k t^k`` with every ``r_i`` in the center.

    The degree is the length of the coefficient list minus one, as given;
    trailing zeros are not stripped since there is no canonical form to
    reduce to.
    """

    semiring: SemiringTable
    coeffs: tuple

    def __post_init__(self):
        coeffs = tuple(int(c) for c in self.coeffs)
        if not coeffs:
            raise ValueError("a polynomial needs at least one coefficient")
        C = self.semiring.center
        bad = [c for c in coeffs if c not in C]
        if bad:
            raise ValueError(f"coefficients {bad} are not central in {self.semiring.name}")
        if self.semiring.zero is not None and all(c == self.semiring.zero for c in coeffs):
            raise ValueError("the all-zero polynomial is not allowed")
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __eq__(self, other):
        if not isinstance(other, CenterPolynomial):
            return NotImplemented
        return self.semiring == other.semiring and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.semiring.name, self.coeffs))

    def __repr__(self):
        return f"CenterPolynomial({list(self.coeffs)})"

    def __mul__(self, other: "CenterPolynomial") -> "CenterPolynomial":
        """Coefficient convolution with semiring arithmetic."""
        R = self.semiring
        if other.semiring != R:
            raise MatrixMismatchError("polynomials over different semirings")
        if R.zero is None:
            raise ValueError("polynomial products need a zero")
        out = [R.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = R.plus(out[i + j], R.times(a, b))
        return CenterPolynomial(R, out)


def eval_poly(p: CenterPolynomial, m: SemiringMatrix) -> SemiringMatrix:
    """Horner evaluation ``(((r_k M + r_{k-1}) M + ...) M + r_0)``.

    Uses ``k`` matrix products and ``k`` diagonal additions.
    """
    R = m.semiring
    if p.semiring != R:
        raise MatrixMismatchError("polynomial and matrix over different semirings")
    _require_zero_one(R)
    n = m.n
    diag = np.arange(n)
    acc = np.full((n, n), R.zero, dtype=np.uint8)
    acc[diag, diag] = p.coeffs[-1]
    for r in reversed(p.coeffs[:-1]):
        acc = kernels.matmul(R.add, R.mul, acc, m.entries)
        acc[diag, diag] = R.add[acc[diag, diag], r]
    return SemiringMatrix._wrap(R, acc)


def two_sided_apply(p: CenterPolynomial, m1: SemiringMatrix, x: SemiringMatrix,
                    q: CenterPolynomial, m2: SemiringMatrix) -> SemiringMatrix:
    """``p(M1) . X . q(M2)``."""
    _check_pair(m1, x)
    _check_pair(x, m2)
    return mat_mul(mat_mul(eval_poly(p, m1), x), eval_poly(q, m2))


class PowerCache:
    """Lazily grown list ``M^0, M^1, ...`` for repeated polynomial evaluation.

    With the powers cached, ``p(M)`` costs one scaled matrix sum per
    non-zero coefficient instead of one matrix product per degree.
    """

    def __init__(self, m: SemiringMatrix):
        _require_zero_one(m.semiring)
        if not (m.semiring.zero_ok and m.semiring.one_ok):
            raise ValueError(f"declared zero/one of {m.semiring.name} do not satisfy their laws")
        self.matrix = m
        self._powers = [identity(m.semiring, m.n).entries, m.entries]
        self._stack = None

    def __len__(self):
        return len(self._powers)

    def ensure(self, degree: int):
        R = self.matrix.semiring
        while len(self._powers) <= degree:
            self._powers.append(kernels.matmul(R.add, R.mul, self._powers[-1], self.matrix.entries))
            self._stack = None

    def power(self, e: int) -> SemiringMatrix:
        self.ensure(e)
        return SemiringMatrix._wrap(self.matrix.semiring, self._powers[e])

    def stacked(self, degree: int) -> np.ndarray:
        """``(degree + 1, n, n)`` array of ``M^0 .. M^degree``."""
        self.ensure(degree)
        if self._stack is None or len(self._stack) <= degree:
            self._stack = np.ascontiguousarray(np.stack(self._powers))
        return self._stack[: degree + 1]

    def evaluate(self, p: CenterPolynomial | Sequence[int]) -> SemiringMatrix:
        coeffs = p.coeffs if isinstance(p, CenterPolynomial) else tuple(p)
        R = self.matrix.semiring
        powers = self.stacked(len(coeffs) - 1)
        out = kernels.poly_sum(R.add, R.mul, R.zero, R.one, powers,
                               np.asarray(coeffs, dtype=np.uint8))
        return SemiringMatrix._wrap(R, out)
