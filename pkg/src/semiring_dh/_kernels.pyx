# cython: language_level=3
"""Compiled table-driven kernels for matrices over finite semirings.

Elements are ``uint8`` indices into ``k x k`` addition and multiplication
tables (left operand indexes the row). Every function here has a numpy
twin in :mod:`semiring_dh._fallback` with identical results.
"""

import numpy as np
cimport numpy as cnp

cnp.import_array()

ctypedef unsigned char u8


def matmul(const u8[:, ::1] add, const u8[:, ::1] mul,
           const u8[:, ::1] a, const u8[:, ::1] b):
    cdef Py_ssize_t n = a.shape[0], m = a.shape[1], p = b.shape[1]
    cdef Py_ssize_t i, j, t
    cdef u8 x
    out = np.empty((n, p), dtype=np.uint8)
    cdef u8[:, ::1] c = out
    cdef const u8* mrow
    if m != b.shape[0]:
        raise ValueError("inner dimensions differ")
    if m == 0:
        raise ValueError("empty inner dimension")
    with nogil:
        for i in range(n):
            mrow = &mul[a[i, 0], 0]
            for j in range(p):
                c[i, j] = mrow[b[0, j]]
            for t in range(1, m):
                mrow = &mul[a[i, t], 0]
                for j in range(p):
                    c[i, j] = add[c[i, j], mrow[b[t, j]]]
    return out


def matadd(const u8[:, ::1] add, const u8[:, ::1] a, const u8[:, ::1] b):
    cdef Py_ssize_t n = a.shape[0], p = a.shape[1], i, j
    out = np.empty((n, p), dtype=np.uint8)
    cdef u8[:, ::1] c = out
    with nogil:
        for i in range(n):
            for j in range(p):
                c[i, j] = add[a[i, j], b[i, j]]
    return out


def scale(const u8[:, ::1] mul, int r, const u8[:, ::1] a):
    cdef Py_ssize_t n = a.shape[0], p = a.shape[1], i, j
    out = np.empty((n, p), dtype=np.uint8)
    cdef u8[:, ::1] c = out
    cdef const u8* mrow = &mul[r, 0]
    with nogil:
        for i in range(n):
            for j in range(p):
                c[i, j] = mrow[a[i, j]]
    return out


cdef void _poly_sum(const u8[:, ::1] add, const u8[:, ::1] mul, u8 zero, u8 one,
                    const u8[:, :, ::1] powers, const u8[::1] coeffs,
                    u8[:, ::1] acc) noexcept nogil:
    cdef Py_ssize_t d = coeffs.shape[0], n = acc.shape[0], p = acc.shape[1]
    cdef Py_ssize_t e, i, j
    cdef u8 r
    cdef const u8* mrow
    for i in range(n):
        for j in range(p):
            acc[i, j] = zero
    for e in range(d):
        r = coeffs[e]
        if r == zero:
            continue
        if r == one:
            for i in range(n):
                for j in range(p):
                    acc[i, j] = add[acc[i, j], powers[e, i, j]]
        else:
            mrow = &mul[r, 0]
            for i in range(n):
                for j in range(p):
                    acc[i, j] = add[acc[i, j], mrow[powers[e, i, j]]]


def poly_sum(const u8[:, ::1] add, const u8[:, ::1] mul, int zero, int one,
             const u8[:, :, ::1] powers, const u8[::1] coeffs):
    """Return the semiring sum of ``coeffs[e] * powers[e]``."""
    if coeffs.shape[0] > powers.shape[0]:
        raise ValueError("more coefficients than cached powers")
    out = np.empty((powers.shape[1], powers.shape[2]), dtype=np.uint8)
    _poly_sum(add, mul, zero, one, powers, coeffs, out)
    return out


def batch_tokens(const u8[:, ::1] add, const u8[:, ::1] mul, int zero, int one,
                 const u8[:, :, ::1] left, const u8[:, :, ::1] right,
                 const u8[:, ::1] cp, const u8[:, ::1] cq):
    """Row ``b`` of the result is ``(sum cp[b,e] left[e]) (sum cq[b,e] right[e])``.

    With ``left[e] = M1^e S`` and ``right[e] = M2^e`` this is the public token
    ``p(M1) S q(M2)`` for the coefficient rows ``cp[b]``, ``cq[b]``.
    """
    cdef Py_ssize_t nb = cp.shape[0], n = left.shape[1], b, i, j, t
    if cp.shape[1] > left.shape[0] or cq.shape[1] > right.shape[0]:
        raise ValueError("more coefficients than cached powers")
    if cq.shape[0] != nb:
        raise ValueError("coefficient batches differ in length")
    out = np.empty((nb, n, n), dtype=np.uint8)
    cdef u8[:, :, ::1] res = out
    cdef u8[:, ::1] lacc = np.empty((n, n), dtype=np.uint8)
    cdef u8[:, ::1] racc = np.empty((n, n), dtype=np.uint8)
    cdef const u8* mrow
    cdef u8 x
    with nogil:
        for b in range(nb):
            _poly_sum(add, mul, zero, one, left, cp[b], lacc)
            _poly_sum(add, mul, zero, one, right, cq[b], racc)
            for i in range(n):
                mrow = &mul[lacc[i, 0], 0]
                for j in range(n):
                    res[b, i, j] = mrow[racc[0, j]]
                for t in range(1, n):
                    mrow = &mul[lacc[i, t], 0]
                    for j in range(n):
                        res[b, i, j] = add[res[b, i, j], mrow[racc[t, j]]]
    return out
