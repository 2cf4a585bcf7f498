"""Kernel dispatch: compiled Cython core when importable, numpy otherwise.

Set ``SEMIRING_DH_PURE=1`` in the environment to force the fallback.
``BACKEND`` names the active implementation. Call counts are kept so the
benchmark reporter can convert them into semiring-operation counts.
"""

from __future__ import annotations

import os
from collections import Counter

from . import _fallback

_compiled = None
if not os.environ.get("SEMIRING_DH_PURE"):
    try:
        from . import _kernels as _compiled
    except ImportError:
        _compiled = None

_impl = _compiled if _compiled is not None else _fallback
BACKEND = "cython" if _compiled is not None else "numpy"

calls: Counter = Counter()
# semiring table lookups (one per scalar + or *), by kernel
ops: Counter = Counter()


def reset_counters():
    calls.clear()
    ops.clear()


def backends() -> dict:
    """All importable kernel implementations, keyed by name."""
    out = {"numpy": _fallback}
    if _compiled is not None:
        out["cython"] = _compiled
    return out


def matmul(add, mul, a, b):
    calls["matmul"] += 1
    ops["matmul"] += a.shape[0] * b.shape[1] * (2 * a.shape[1] - 1)
    return _impl.matmul(add, mul, a, b)


def matadd(add, a, b):
    calls["matadd"] += 1
    ops["matadd"] += a.size
    return _impl.matadd(add, a, b)


def scale(mul, r, a):
    calls["scale"] += 1
    ops["scale"] += a.size
    return _impl.scale(mul, r, a)


def poly_sum(add, mul, zero, one, powers, coeffs):
    calls["poly_sum"] += 1
    ops["poly_sum"] += 2 * len(coeffs) * powers[0].size
    return _impl.poly_sum(add, mul, zero, one, powers, coeffs)


def batch_tokens(add, mul, zero, one, left, right, cp, cq):
    calls["batch_tokens"] += 1
    n = left.shape[1]
    ops["batch_tokens"] += len(cp) * (2 * (cp.shape[1] + cq.shape[1]) * n * n + n * n * (2 * n - 1))
    return _impl.batch_tokens(add, mul, zero, one, left, right, cp, cq)
