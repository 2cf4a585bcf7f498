"""Finite semirings given by explicit operation tables.

Elements are the dense indices ``0 .. k-1``; ``add[a, b]`` is ``a + b`` and
``mul[a, b]`` is ``a * b`` (the left operand indexes the row). Addition is
expected to be commutative and both operations associative, with the two
distributive laws; :func:`validate_axioms` checks all of this exhaustively.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "SemiringStructureError",
    "SemiringTable",
    "Violation",
    "CongruencePartition",
    "validate_axioms",
    "center",
    "generated_congruence",
    "is_congruence",
    "is_simple",
    "builtin",
    "boolean_b2",
    "zmod",
    "matrix_semiring",
    "BUILTIN_NAMES",
]

MAX_ORDER = 256


class SemiringStructureError(ValueError):
    """Malformed tables: wrong shape or out-of-range entries.

    Distinct from an axiom violation, which is reported as data by
    :func:`validate_axioms`.
    """


def _as_table(rows, k: int, label: str) -> np.ndarray:
    try:
        arr = np.array(rows, dtype=np.int64)
    except (TypeError, ValueError) as exc:
        raise SemiringStructureError(f"{label} table is not a rectangular integer array") from exc
    if arr.shape != (k, k):
        raise SemiringStructureError(f"{label} table has shape {arr.shape}, expected {(k, k)}")
    bad = np.argwhere((arr < 0) | (arr >= k))
    if len(bad):
        i, j = bad[0]
        raise SemiringStructureError(
            f"{label}[{i}][{j}] = {arr[i, j]} is not an element index in [0, {k})"
        )
    out = np.ascontiguousarray(arr, dtype=np.uint8)
    out.setflags(write=False)
    return out


@dataclass(frozen=True, eq=False)
class SemiringTable:
    """A finite semiring of order ``k`` as two ``k x k`` index tables."""

    name: str
    add: np.ndarray
    mul: np.ndarray
    zero: int | None = None
    one: int | None = None

    def __post_init__(self):
        add = np.asarray(self.add)
        if add.ndim != 2 or add.shape[0] != add.shape[1] or add.shape[0] == 0:
            raise SemiringStructureError(f"add table must be square and non-empty, got shape {add.shape}")
        k = add.shape[0]
        if k > MAX_ORDER:
            raise SemiringStructureError(f"order {k} exceeds the supported maximum {MAX_ORDER}")
        object.__setattr__(self, "add", _as_table(self.add, k, "add"))
        object.__setattr__(self, "mul", _as_table(self.mul, k, "mul"))
        for label in ("zero", "one"):
            idx = getattr(self, label)
            if idx is not None:
                if not isinstance(idx, (int, np.integer)) or not 0 <= idx < k:
                    raise SemiringStructureError(f"{label} = {idx!r} is not an element index in [0, {k})")
                object.__setattr__(self, label, int(idx))

    @property
    def order(self) -> int:
        return self.add.shape[0]

    def plus(self, a: int, b: int) -> int:
        return int(self.add[a, b])

    def times(self, a: int, b: int) -> int:
        return int(self.mul[a, b])

    @cached_property
    def _key(self):
        return (self.name, self.add.tobytes(), self.mul.tobytes(), self.zero, self.one)

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, SemiringTable):
            return NotImplemented
        return self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"SemiringTable(name={self.name!r}, order={self.order}, zero={self.zero}, one={self.one})"

    @cached_property
    def zero_ok(self) -> bool:
        """True when a zero is declared and satisfies the zero laws."""
        z = self.zero
        if z is None:
            return False
        e = np.arange(self.order)
        return bool(
            (self.add[e, z] == e).all() and (self.add[z, e] == e).all()
            and (self.mul[e, z] == z).all() and (self.mul[z, e] == z).all()
        )

    @cached_property
    def one_ok(self) -> bool:
        """True when a one is declared and is a two-sided multiplicative identity."""
        u = self.one
        if u is None:
            return False
        e = np.arange(self.order)
        return bool((self.mul[e, u] == e).all() and (self.mul[u, e] == e).all())

    @cached_property
    def center(self) -> frozenset:
        return frozenset(int(c) for c in np.flatnonzero((self.mul == self.mul.T).all(axis=1)))


@dataclass(frozen=True)
class Violation:
    """One violated law with the first witness found (lexicographic order)."""

    law: str
    witness: tuple

    def __str__(self):
        return f"{self.law} fails at {self.witness}"


def _first(mask: np.ndarray) -> tuple | None:
    bad = np.argwhere(~mask)
    return tuple(int(x) for x in bad[0]) if len(bad) else None


def validate_axioms(table: SemiringTable) -> list[Violation]:
    """Exhaustively check the semiring laws (and declared zero/one laws).

    Returns an empty list iff every law holds. Cost is ``O(k^3)`` table
    lookups, which is instant for the orders shipped here (k <= 64).
    """
    A = table.add.astype(np.intp)
    M = table.mul.astype(np.intp)
    k = table.order
    a, b, c = np.indices((k, k, k), sparse=True)
    checks = [
        ("additive associativity", A[A[a, b], c] == A[a, A[b, c]]),
        ("additive commutativity", A == A.T),
        ("multiplicative associativity", M[M[a, b], c] == M[a, M[b, c]]),
        ("left distributivity", M[a, A[b, c]] == A[M[a, b], M[a, c]]),
        ("right distributivity", M[A[a, b], c] == A[M[a, c], M[b, c]]),
    ]
    e = np.arange(k)
    if table.zero is not None:
        z = table.zero
        checks.append(("zero is additive identity", (A[e, z] == e) & (A[z, e] == e)))
        checks.append(("zero is absorbing", (M[e, z] == z) & (M[z, e] == z)))
    if table.one is not None:
        u = table.one
        checks.append(("one is multiplicative identity", (M[e, u] == e) & (M[u, e] == e)))
    report = []
    for law, mask in checks:
        w = _first(mask)
        if w is not None:
            report.append(Violation(law, w))
    return report


def center(table: SemiringTable) -> frozenset:
    """Elements ``c`` with ``c*a == a*c`` for every ``a``."""
    return table.center


class _UnionFind:
    def __init__(self, k: int):
        self.parent = list(range(k))

    def find(self, a: int) -> int:
        parent = self.parent
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if ra < rb:
            self.parent[rb] = ra
        else:
            self.parent[ra] = rb
        return True


@dataclass(frozen=True)
class CongruencePartition:
    """A partition of the element indices; each class is sorted and the
    classes are ordered by their smallest member (the canonical rep)."""

    classes: tuple

    @classmethod
    def from_labels(cls, labels: Sequence[int]) -> "CongruencePartition":
        groups: dict = {}
        for x, lab in enumerate(labels):
            groups.setdefault(lab, []).append(x)
        return cls(tuple(sorted(tuple(g) for g in groups.values())))

    @property
    def size(self) -> int:
        return sum(len(c) for c in self.classes)

    def representative(self, a: int) -> int:
        for cls_ in self.classes:
            if a in cls_:
                return cls_[0]
        raise KeyError(a)

    def labels(self) -> list[int]:
        out = [0] * self.size
        for cls_ in self.classes:
            for x in cls_:
                out[x] = cls_[0]
        return out

    def related(self, a: int, b: int) -> bool:
        return self.representative(a) == self.representative(b)

    @property
    def is_full(self) -> bool:
        return len(self.classes) == 1

    @property
    def is_discrete(self) -> bool:
        return all(len(c) == 1 for c in self.classes)

    def refines(self, other: "CongruencePartition") -> bool:
        """True when every class of ``self`` lies inside a class of ``other``."""
        lab = other.labels()
        return all(len({lab[x] for x in c}) == 1 for c in self.classes)


def generated_congruence(table: SemiringTable, seed_pairs: Iterable[tuple[int, int]] = ()) -> CongruencePartition:
    """Smallest congruence containing ``seed_pairs``.

    Union-find over the elements with a work queue of merged pairs; each
    merge of ``(a, b)`` enqueues ``(a+c, b+c)``, ``(c+a, c+b)``, ``(ac, bc)``
    and ``(ca, cb)`` for every ``c``. Since every related pair is joined by
    a chain of merged pairs, compatibility of the merged pairs suffices.
    """
    k = table.order
    add = table.add.tolist()
    mul = table.mul.tolist()
    uf = _UnionFind(k)
    queue = []
    for a, b in seed_pairs:
        if not (0 <= a < k and 0 <= b < k):
            raise ValueError(f"seed pair {(a, b)} out of range for order {k}")
        queue.append((a, b))
    while queue:
        a, b = queue.pop()
        if not uf.union(a, b):
            continue
        ra, rb, ma, mb = add[a], add[b], mul[a], mul[b]
        for c in range(k):
            queue.append((ra[c], rb[c]))
            queue.append((add[c][a], add[c][b]))
            queue.append((ma[c], mb[c]))
            queue.append((mul[c][a], mul[c][b]))
    return CongruencePartition.from_labels([uf.find(x) for x in range(k)])


def is_congruence(table: SemiringTable, partition: CongruencePartition) -> bool:
    """Exhaustive closure check of ``partition`` against both operations."""
    lab = np.array(partition.labels())
    A, M = table.add, table.mul
    same = lab[:, None] == lab[None, :]
    for T in (A, M):
        # a ~ b  =>  T[a, c] ~ T[b, c]  and  T[c, a] ~ T[c, b]
        right = lab[T][:, None, :] == lab[T][None, :, :]
        left = lab[T.T][:, None, :] == lab[T.T][None, :, :]
        if not (right.all(axis=2) | ~same).all() or not (left.all(axis=2) | ~same).all():
            return False
    return True


def is_simple(table: SemiringTable) -> bool:
    """Exact congruence-freeness test over all unordered pairs."""
    if table.order < 2:
        raise ValueError("simplicity is only defined here for order >= 2")
    for a, b in itertools.combinations(range(table.order), 2):
        if not generated_congruence(table, [(a, b)]).is_full:
            return False
    return True


def boolean_b2() -> SemiringTable:
    """``{0, 1}`` with max as addition and min as multiplication."""
    return SemiringTable("boolean_b2", [[0, 1], [1, 1]], [[0, 0], [0, 1]], zero=0, one=1)


def zmod(n: int) -> SemiringTable:
    """Integers modulo ``n``; a control case for simplicity checks."""
    if not 1 <= n <= MAX_ORDER:
        raise ValueError(f"zmod needs 1 <= n <= {MAX_ORDER}, got {n}")
    e = np.arange(n)
    return SemiringTable(
        f"zmod{n}", (e[:, None] + e[None, :]) % n, (e[:, None] * e[None, :]) % n,
        zero=0, one=1 % n if n > 1 else 0,
    )


def _from_data(name: str) -> SemiringTable:
    from importlib import resources

    from .formats import parse_semiring

    text = resources.files("semiring_dh").joinpath(f"data/{name}.semiring").read_text()
    return parse_semiring(text)


BUILTIN_NAMES = ("boolean_b2", "s6", "s20", "zmod<n>")
_cache: dict = {}


def builtin(name: str) -> SemiringTable:
    """Shipped semirings: ``boolean_b2``, ``s6``, ``s20`` and ``zmod<n>``."""
    if name in _cache:
        return _cache[name]
    if name == "boolean_b2":
        table = boolean_b2()
    elif name in ("s6", "s20"):
        table = _from_data(name)
    elif (m := re.fullmatch(r"zmod(\d+)", name)) is not None:
        table = zmod(int(m.group(1)))
    else:
        raise KeyError(f"unknown semiring {name!r}; known: {', '.join(BUILTIN_NAMES)}")
    _cache[name] = table
    return table


def matrix_semiring(table: SemiringTable, n: int) -> SemiringTable:
    """``Mat_n(R)`` as a table semiring, elements numbered by their entries
    read row-major as base-``k`` digits (most significant first)."""
    k = table.order
    size = k ** (n * n)
    if size > MAX_ORDER:
        raise ValueError(f"Mat_{n} over order {k} has {size} elements, more than {MAX_ORDER}")
    from . import kernels

    mats = [np.array(d, dtype=np.uint8).reshape(n, n)
            for d in itertools.product(range(k), repeat=n * n)]
    index = {m.tobytes(): i for i, m in enumerate(mats)}
    add = [[index[kernels.matadd(table.add, x, y).tobytes()] for y in mats] for x in mats]
    mul = [[index[kernels.matmul(table.add, table.mul, x, y).tobytes()] for y in mats] for x in mats]
    zero = one = None
    if table.zero is not None:
        zero = index[np.full((n, n), table.zero, dtype=np.uint8).tobytes()]
        if table.one is not None:
            eye = np.full((n, n), table.zero, dtype=np.uint8)
            np.fill_diagonal(eye, table.one)
            one = index[eye.tobytes()]
    return SemiringTable(f"mat{n}_{table.name}", add, mul, zero=zero, one=one)
