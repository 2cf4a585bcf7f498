"""Diffie-Hellman key exchange over semigroup actions.

:func:`generic_dh` runs the exchange over any commutative
:class:`~semiring_dh.actions.SemigroupAction`. The rest of the module is the
concrete two-sided matrix version: public matrices ``M1, M2, S`` over a
semiring, private keys are pairs of central polynomials ``(p, q)`` and the
public token is ``p(M1) S q(M2)``.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from functools import cached_property
from importlib import resources
from typing import Any

import numpy as np

from .actions import SemigroupAction, random_polynomial
from .formats import FormatError, LineReader, _resolve, matrix_lines
from .matrix import CenterPolynomial, PowerCache, SemiringMatrix, _check_pair, mat_mul
from .rng import stream
from .semiring import SemiringTable, builtin

__all__ = [
    "ProtocolError",
    "ProtocolInstance",
    "PrivateKey",
    "PublicToken",
    "SharedKey",
    "DhReport",
    "Transcript",
    "keygen",
    "keypair_from",
    "derive_shared",
    "generic_dh",
    "paper_instance",
    "random_instance",
    "run_session",
    "encode_instance",
    "decode_instance",
    "encode_transcript",
    "decode_transcript",
    "DEFAULT_DEGREE_BOUND",
]

DEFAULT_DEGREE_BOUND = 49


class ProtocolError(ValueError):
    """Unusable instance or key material."""


@dataclass(frozen=True, eq=False)
class ProtocolInstance:
    m1: SemiringMatrix
    m2: SemiringMatrix
    s: SemiringMatrix
    degree_bound: int = DEFAULT_DEGREE_BOUND

    def __post_init__(self):
        _check_pair(self.m1, self.m2)
        _check_pair(self.m1, self.s)
        R = self.semiring
        if R.zero is None or R.one is None:
            raise ProtocolError(f"semiring {R.name} must declare zero and one")
        if not (R.zero_ok and R.one_ok):
            raise ProtocolError(f"declared zero/one of {R.name} do not satisfy their laws")
        if self.degree_bound < 1:
            raise ProtocolError("degree_bound must be >= 1")

    @property
    def semiring(self) -> SemiringTable:
        return self.m1.semiring

    @property
    def n(self) -> int:
        return self.m1.n

    @cached_property
    def left(self) -> PowerCache:
        return PowerCache(self.m1)

    @cached_property
    def right(self) -> PowerCache:
        return PowerCache(self.m2)

    def apply(self, p: CenterPolynomial, x: SemiringMatrix, q: CenterPolynomial) -> SemiringMatrix:
        """``p(M1) x q(M2)`` using the cached powers of ``M1`` and ``M2``."""
        _check_pair(self.m1, x)
        return mat_mul(mat_mul(self.left.evaluate(p), x), self.right.evaluate(q))

    def __eq__(self, other):
        if not isinstance(other, ProtocolInstance):
            return NotImplemented
        return (self.m1 == other.m1 and self.m2 == other.m2 and self.s == other.s
                and self.degree_bound == other.degree_bound)

    __hash__ = None


@dataclass(frozen=True)
class PrivateKey:
    p: CenterPolynomial
    q: CenterPolynomial


@dataclass(frozen=True)
class PublicToken:
    a: SemiringMatrix


@dataclass(frozen=True)
class SharedKey:
    k: SemiringMatrix
    digest: bytes = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "digest", matrix_digest(self.k))

    @property
    def hexdigest(self) -> str:
        return self.digest.hex()


def matrix_digest(m: SemiringMatrix) -> bytes:
    """SHA-256 of the canonical text serialization of ``m``."""
    text = "\n".join(matrix_lines(m)) + "\n"
    return hashlib.sha256(text.encode()).digest()


def _check_key(instance: ProtocolInstance, key: PrivateKey):
    for poly in (key.p, key.q):
        if poly.semiring != instance.semiring:
            raise ProtocolError("key polynomial is over a different semiring")
        if poly.degree > instance.degree_bound:
            raise ProtocolError(f"key degree {poly.degree} exceeds bound {instance.degree_bound}")


def keypair_from(instance: ProtocolInstance, p: CenterPolynomial, q: CenterPolynomial) -> tuple[PrivateKey, PublicToken]:
    """Build a key pair from chosen polynomials instead of sampling them."""
    key = PrivateKey(p, q)
    _check_key(instance, key)
    return key, PublicToken(instance.apply(p, instance.s, q))


def keygen(instance: ProtocolInstance, rng: np.random.Generator) -> tuple[PrivateKey, PublicToken]:
    """Random ``(p, q)`` with degrees uniform in ``[1, degree_bound]`` and
    coefficients uniform over the center; returns the key and ``p(M1) S q(M2)``."""
    R = instance.semiring
    if len(R.center) < 2:
        raise ProtocolError(f"center of {R.name} has a single element; no usable keys")
    p = random_polynomial(R, instance.degree_bound, rng)
    q = random_polynomial(R, instance.degree_bound, rng)
    return keypair_from(instance, p, q)


def derive_shared(instance: ProtocolInstance, own: PrivateKey, peer: PublicToken) -> SharedKey:
    _check_key(instance, own)
    return SharedKey(instance.apply(own.p, peer.a, own.q))


@dataclass(frozen=True)
class DhReport:
    key_a: Any
    key_b: Any
    agreement: bool


def generic_dh(action: SemigroupAction, s, a, b) -> DhReport:
    """Both sides of the exchange: ``a(b s)`` and ``b(a s)``."""
    if not action.commutative:
        raise ProtocolError("the key exchange needs a commutative action")
    a_s = action.act(a, s)
    b_s = action.act(b, s)
    key_a = action.act(a, b_s)
    key_b = action.act(b, a_s)
    return DhReport(key_a, key_b, bool(key_a == key_b))


def _data_matrix(name: str, semiring: SemiringTable) -> SemiringMatrix:
    from .formats import parse_matrix

    text = resources.files("semiring_dh").joinpath(f"data/{name}.matrix").read_text()
    return parse_matrix(text, semiring)


def paper_instance(degree_bound: int = DEFAULT_DEGREE_BOUND) -> ProtocolInstance:
    """The 20x20 worked example over the six-element simple semiring."""
    R = builtin("s6")
    return ProtocolInstance(_data_matrix("paper_M1", R), _data_matrix("paper_M2", R),
                            _data_matrix("paper_S", R), degree_bound)


def paper_token() -> PublicToken:
    """Alice's published token from the worked example (its key is not known)."""
    return PublicToken(_data_matrix("paper_A", builtin("s6")))


def random_instance(semiring: SemiringTable, n: int, rng: np.random.Generator,
                    degree_bound: int = DEFAULT_DEGREE_BOUND) -> ProtocolInstance:
    """Uniformly random ``M1, M2, S``."""
    mats = [SemiringMatrix(semiring, rng.integers(0, semiring.order, size=(n, n))) for _ in range(3)]
    return ProtocolInstance(*mats, degree_bound=degree_bound)


@dataclass(frozen=True)
class Transcript:
    """Public view of one session plus the shared-key digests of both sides."""

    instance: ProtocolInstance
    token_a: PublicToken
    token_b: PublicToken
    digest_a: bytes
    digest_b: bytes
    seed: int | None = None

    @property
    def agreement(self) -> bool:
        return self.digest_a == self.digest_b


@dataclass(frozen=True)
class Session:
    transcript: Transcript
    alice: PrivateKey
    bob: PrivateKey
    key_a: SharedKey
    key_b: SharedKey

    @property
    def agreement(self) -> bool:
        return self.key_a.k == self.key_b.k


def run_session(instance: ProtocolInstance, seed: int | None = None) -> Session:
    """One full exchange with Alice and Bob drawing from separate named streams."""
    alice, token_a = keygen(instance, stream(seed, "protocol", "alice"))
    bob, token_b = keygen(instance, stream(seed, "protocol", "bob"))
    key_a = derive_shared(instance, alice, token_b)
    key_b = derive_shared(instance, bob, token_a)
    t = Transcript(instance, token_a, token_b, key_a.digest, key_b.digest, seed)
    return Session(t, alice, bob, key_a, key_b)


def _instance_lines(instance: ProtocolInstance) -> list[str]:
    lines = [f"semiring {instance.semiring.name}", f"n {instance.n}",
             f"degree_bound {instance.degree_bound}"]
    for label, m in (("M1", instance.m1), ("M2", instance.m2), ("S", instance.s)):
        lines.append(label)
        lines += matrix_lines(m)[3:]
    return lines


def encode_instance(instance: ProtocolInstance) -> str:
    """``instance`` header, semiring name, ``n``, ``degree_bound`` and the
    rows of ``M1``, ``M2``, ``S`` each after a label line."""
    return "\n".join(["instance"] + _instance_lines(instance)) + "\n"


def _read_instance_body(reader: LineReader, table) -> tuple[ProtocolInstance, SemiringTable, int]:
    lineno, name = reader.field("semiring")
    R = _resolve(name, table, lineno)
    n = reader.int_field("n", minimum=1)
    deg = reader.int_field("degree_bound", minimum=1)
    mats = []
    for label in ("M1", "M2", "S"):
        reader.keyword(label)
        mats.append(SemiringMatrix(R, reader.rows(n, n, R.order, label)))
    try:
        inst = ProtocolInstance(*mats, degree_bound=deg)
    except ProtocolError as exc:
        raise FormatError(str(exc)) from exc
    return inst, R, n


def decode_instance(text: str, table=None) -> ProtocolInstance:
    reader = LineReader(text)
    reader.keyword("instance")
    inst, _, _ = _read_instance_body(reader, table)
    reader.end()
    return inst


def encode_transcript(t: Transcript) -> str:
    lines = ["transcript", f"seed {'none' if t.seed is None else t.seed}"]
    lines += _instance_lines(t.instance)
    for label, tok in (("A", t.token_a), ("B", t.token_b)):
        lines.append(label)
        lines += matrix_lines(tok.a)[3:]
    lines += [f"digest_a {t.digest_a.hex()}", f"digest_b {t.digest_b.hex()}",
              f"agreement={'true' if t.agreement else 'false'}"]
    return "\n".join(lines) + "\n"


def _hex_field(reader: LineReader, key: str) -> bytes:
    lineno, value = reader.field(key)
    try:
        raw = bytes.fromhex(value)
    except ValueError:
        raise FormatError(f"{key} is not hex", lineno) from None
    if len(raw) != 32:
        raise FormatError(f"{key} must be 32 bytes", lineno)
    return raw


def decode_transcript(text: str, table=None) -> Transcript:
    reader = LineReader(text)
    reader.keyword("transcript")
    lineno, seed_text = reader.field("seed")
    if seed_text == "none":
        seed = None
    else:
        try:
            seed = int(seed_text)
        except ValueError:
            raise FormatError(f"seed must be an integer or 'none', got {seed_text!r}", lineno) from None
    inst, R, n = _read_instance_body(reader, table)
    tokens = []
    for label in ("A", "B"):
        reader.keyword(label)
        tokens.append(PublicToken(SemiringMatrix(R, reader.rows(n, n, R.order, label))))
    da = _hex_field(reader, "digest_a")
    db = _hex_field(reader, "digest_b")
    lineno, line = reader.next("agreement line")
    expected = f"agreement={'true' if da == db else 'false'}"
    if line.strip() != expected:
        raise FormatError(f"expected {expected!r}, got {line!r}", lineno)
    reader.end()
    return Transcript(inst, tokens[0], tokens[1], da, db, seed)
