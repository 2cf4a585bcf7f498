"""Seeded randomness with named sub-streams.

Every consumer asks for ``stream(seed, "module", "purpose")``. Streams with
different names are statistically independent, so adding a new consumer
never perturbs the draws of an existing one.
"""

from __future__ import annotations

import hashlib

import numpy as np

DEFAULT_SEED = 20080617


def _name_key(name: str) -> int:
    return int.from_bytes(hashlib.sha256(name.encode()).digest()[:4], "little")


def stream(seed: int | None, *names: str | int) -> np.random.Generator:
    seed = DEFAULT_SEED if seed is None else int(seed)
    if seed < 0:
        raise ValueError("seeds are non-negative integers")
    key = tuple(n if isinstance(n, int) else _name_key(n) for n in names)
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=key)))
