"""Dense linear algebra over prime fields ``F_p`` on int64 numpy arrays."""

from __future__ import annotations

import numpy as np

__all__ = ["rref", "rank", "solve", "minimal_polynomial", "poly_at_matrix", "matpow"]


def rref(a, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form of ``a`` mod ``p`` and the pivot columns."""
    m = np.array(a, dtype=np.int64) % p
    rows, cols = m.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(m[r:, c])
        if len(nz) == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            m[[r, piv]] = m[[piv, r]]
        m[r] = (m[r] * pow(int(m[r, c]), -1, p)) % p
        col = m[:, c].copy()
        col[r] = 0
        m = (m - np.outer(col, m[r])) % p
        pivots.append(c)
        r += 1
    return m, pivots


def rank(a, p: int) -> int:
    return len(rref(a, p)[1])


def solve(a, b, p: int) -> np.ndarray | None:
    """One solution of ``a x = b`` mod ``p`` (free variables set to 0), or
    ``None`` when the system is inconsistent. ``a`` may be singular."""
    a = np.array(a, dtype=np.int64) % p
    b = np.array(b, dtype=np.int64).reshape(-1) % p
    aug = np.concatenate([a, b[:, None]], axis=1)
    red, pivots = rref(aug, p)
    n = a.shape[1]
    if n in pivots:
        return None
    x = np.zeros(n, dtype=np.int64)
    for r, c in enumerate(pivots):
        x[c] = red[r, n]
    return x


def matpow(m, e: int, p: int) -> np.ndarray:
    m = np.array(m, dtype=np.int64) % p
    out = np.eye(m.shape[0], dtype=np.int64)
    while e:
        if e & 1:
            out = (out @ m) % p
        e >>= 1
        if e:
            m = (m @ m) % p
    return out


def minimal_polynomial(m, p: int) -> list[int]:
    """Monic minimal polynomial of ``m`` over ``F_p``, low degree first.

    Finds the first linear dependency among ``I, M, M^2, ...`` by Gaussian
    elimination on their flattened images.
    """
    m = np.array(m, dtype=np.int64) % p
    n = m.shape[0]
    powers = [np.eye(n, dtype=np.int64).reshape(-1)]
    cur = np.eye(n, dtype=np.int64)
    for d in range(1, n + 1):
        cur = (cur @ m) % p
        basis = np.stack(powers, axis=1)
        c = solve(basis, cur.reshape(-1), p)
        if c is not None:
            # M^d = sum c_i M^i  =>  m(t) = t^d - sum c_i t^i
            return [int(-x % p) for x in c] + [1]
        powers.append(cur.reshape(-1))
    raise AssertionError("Cayley-Hamilton bounds the degree by n")


def poly_at_matrix(coeffs, m, p: int) -> np.ndarray:
    """``sum coeffs[i] M^i`` mod ``p`` by Horner's scheme."""
    m = np.array(m, dtype=np.int64) % p
    n = m.shape[0]
    acc = np.zeros((n, n), dtype=np.int64)
    eye = np.eye(n, dtype=np.int64)
    for c in reversed(list(coeffs)):
        acc = (acc @ m + int(c) * eye) % p
    return acc
