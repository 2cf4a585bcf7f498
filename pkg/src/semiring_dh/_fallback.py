"""Pure-Python (numpy) versions of the compiled kernels in ``_kernels.pyx``.

Results are bit-identical to the compiled path; only speed differs.
"""

from __future__ import annotations

import numpy as np


def _u8(x) -> np.ndarray:
    return np.ascontiguousarray(x, dtype=np.uint8)


def matmul(add, mul, a, b) -> np.ndarray:
    add, mul, a, b = _u8(add), _u8(mul), _u8(a), _u8(b)
    if a.shape[1] != b.shape[0]:
        raise ValueError("inner dimensions differ")
    if a.shape[1] == 0:
        raise ValueError("empty inner dimension")
    # terms[i, t, j] = a[i, t] * b[t, j]; fold over t left to right
    terms = mul[a[:, :, None], b[None, :, :]]
    acc = terms[:, 0, :]
    for t in range(1, a.shape[1]):
        acc = add[acc, terms[:, t, :]]
    return np.ascontiguousarray(acc)


def matadd(add, a, b) -> np.ndarray:
    return np.ascontiguousarray(_u8(add)[_u8(a), _u8(b)])


def scale(mul, r, a) -> np.ndarray:
    return np.ascontiguousarray(_u8(mul)[int(r)][_u8(a)])


def poly_sum(add, mul, zero, one, powers, coeffs) -> np.ndarray:
    add, mul, powers, coeffs = _u8(add), _u8(mul), _u8(powers), _u8(coeffs)
    if coeffs.shape[0] > powers.shape[0]:
        raise ValueError("more coefficients than cached powers")
    acc = np.full(powers.shape[1:], zero, dtype=np.uint8)
    for e, r in enumerate(coeffs.tolist()):
        if r == zero:
            continue
        term = powers[e] if r == one else mul[r][powers[e]]
        acc = add[acc, term]
    return acc


def batch_tokens(add, mul, zero, one, left, right, cp, cq) -> np.ndarray:
    add, mul = _u8(add), _u8(mul)
    left, right, cp, cq = _u8(left), _u8(right), _u8(cp), _u8(cq)
    if cp.shape[1] > left.shape[0] or cq.shape[1] > right.shape[0]:
        raise ValueError("more coefficients than cached powers")
    if cp.shape[0] != cq.shape[0]:
        raise ValueError("coefficient batches differ in length")
    nb, n = cp.shape[0], left.shape[1]
    lacc = _batched_poly_sum(add, mul, zero, one, left, cp)
    racc = _batched_poly_sum(add, mul, zero, one, right, cq)
    terms = mul[lacc[:, :, :, None], racc[:, None, :, :]]
    out = terms[:, :, 0, :]
    for t in range(1, n):
        out = add[out, terms[:, :, t, :]]
    return np.ascontiguousarray(out.reshape(nb, n, n))


def _batched_poly_sum(add, mul, zero, one, powers, coeffs) -> np.ndarray:
    nb = coeffs.shape[0]
    acc = np.full((nb,) + powers.shape[1:], zero, dtype=np.uint8)
    for e in range(coeffs.shape[1]):
        r = coeffs[:, e]
        # mul[r] @ powers[e] for each row, then fold only rows with r != zero
        term = mul[r[:, None, None], powers[e][None, :, :]]
        term = np.where((r == one)[:, None, None], powers[e][None, :, :], term)
        summed = add[acc, term]
        live = (r != zero)[:, None, None]
        acc = np.where(live, summed, acc)
    return acc
