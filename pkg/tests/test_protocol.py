from __future__ import annotations

import itertools

import numpy as np
import pytest

from conftest import load_fixture
from semiring_dh.actions import modexp, translation, two_sided
from semiring_dh.matrix import CenterPolynomial, SemiringMatrix, two_sided_apply
from semiring_dh.protocol import (PrivateKey, ProtocolError, ProtocolInstance, PublicToken, decode_instance,
                                  decode_transcript, derive_shared, encode_instance, encode_transcript,
                                  generic_dh, keygen, keypair_from, matrix_digest, paper_instance,
                                  paper_token, random_instance, run_session)
from semiring_dh.rng import stream
from semiring_dh.semiring import SemiringTable, builtin, zmod


def test_reference_instance_loads(paper):
    assert paper.n == 20 and paper.semiring.name == "s6"
    assert paper.degree_bound == 49
    for m in (paper.m1, paper.m2, paper.s):
        assert m.entries.max() < 6
    assert paper_token().a.n == 20


def test_golden_keygen(paper):
    gold = load_fixture("golden_keygen.json")
    key, token = keygen(paper, stream(gold["seed"], *gold["stream"]))
    assert list(key.p.coeffs) == gold["p"]
    assert list(key.q.coeffs) == gold["q"]
    assert matrix_digest(token.a).hex() == gold["token_sha256"]


def test_keygen_token_formula(paper):
    key, token = keygen(paper, stream(2, "test"))
    assert token.a == two_sided_apply(key.p, paper.m1, paper.s, key.q, paper.m2)
    assert key.p.degree <= 49 and key.q.degree <= 49


def test_forced_unit_key_gives_s(paper):
    one = CenterPolynomial(paper.semiring, [1])
    key, token = keypair_from(paper, one, one)
    assert token.a == paper.s
    peer_key, peer_token = keygen(paper, stream(3, "test"))
    assert derive_shared(paper, key, peer_token).k == peer_token.a


def test_degree_bound_validation(paper):
    with pytest.raises(ProtocolError):
        ProtocolInstance(paper.m1, paper.m2, paper.s, degree_bound=0)
    small = ProtocolInstance(paper.m1, paper.m2, paper.s, degree_bound=2)
    with pytest.raises(ProtocolError):
        keypair_from(small, CenterPolynomial(small.semiring, [0, 0, 0, 1]),
                     CenterPolynomial(small.semiring, [1]))


def test_center_of_size_one_is_unusable():
    # a semiring whose only central element is zero cannot produce keys
    trivial = SemiringTable("triv", [[0]], [[0]], zero=0, one=0)
    inst = ProtocolInstance(*(SemiringMatrix(trivial, [[0]]) for _ in range(3)))
    with pytest.raises(ProtocolError):
        keygen(inst, stream(1, "x"))


def test_agreement_on_reference_instance(paper):
    for seed in range(100):
        s = run_session(paper, seed)
        assert s.key_a.k == s.key_b.k
        assert s.key_a.digest == s.key_b.digest
        assert s.transcript.token_a.a.n == 20


def test_exhaustive_boolean_degree_one_agreement(b2):
    inst = random_instance(b2, 2, stream(5, "test", "b2"), degree_bound=1)
    polys = [CenterPolynomial(b2, c) for c in itertools.product([0, 1], repeat=2) if any(c)]
    keys = [keypair_from(inst, p, q) for p in polys for q in polys]
    for (ka, ta), (kb, tb) in itertools.product(keys, repeat=2):
        assert derive_shared(inst, ka, tb).k == derive_shared(inst, kb, ta).k


@pytest.mark.parametrize("name", ["s20", "boolean_b2", "zmod7"])
def test_agreement_on_other_semirings(name):
    R = builtin(name)
    inst = random_instance(R, 6, stream(1, "test", name), degree_bound=10)
    for seed in range(10):
        assert run_session(inst, seed).agreement


def test_generic_dh_modexp():
    assert pow(2, 77, 101) == 61
    rep = generic_dh(modexp(101, 2), 2, 7, 11)
    assert rep.agreement and rep.key_a == rep.key_b == 61
    rep = generic_dh(modexp(101, 2), 2, 1, 11)
    assert rep.key_a == pow(2, 11, 101)


def test_generic_dh_two_sided(paper):
    action = two_sided(paper.semiring, 20, paper.m1, paper.m2)
    rng = stream(9, "test")
    rep = generic_dh(action, paper.s, action.sample(rng), action.sample(rng))
    assert rep.agreement


def test_generic_dh_refuses_non_commutative():
    action = translation(13, 2)
    action.commutative = False
    with pytest.raises(ProtocolError):
        generic_dh(action, 1, 2, 3)


def test_serialization_round_trip(paper):
    assert decode_instance(encode_instance(paper)) == paper
    t = run_session(paper, 4).transcript
    text = encode_transcript(t)
    assert decode_transcript(text) == t
    assert encode_transcript(decode_transcript(text)) == text
    assert text.endswith("agreement=true\n")


def test_transcripts_are_deterministic(paper):
    a = encode_transcript(run_session(paper, 17).transcript)
    b = encode_transcript(run_session(paper_instance(), 17).transcript)
    assert a == b
    assert a != encode_transcript(run_session(paper, 18).transcript)


def test_transcript_tamper_detected(paper):
    text = encode_transcript(run_session(paper, 4).transcript)
    with pytest.raises(ValueError):
        decode_transcript(text.replace("agreement=true", "agreement=false"))


def test_instance_needs_zero_and_one(s6):
    no_zero = SemiringTable("nz", s6.add, s6.mul, one=1)
    m = SemiringMatrix(no_zero, [[1]])
    with pytest.raises(ProtocolError):
        ProtocolInstance(m, m, m)


def test_private_key_and_token_types(paper):
    key, token = keygen(paper, stream(1, "t"))
    assert isinstance(key, PrivateKey) and isinstance(token, PublicToken)


def test_tokens_size_preserved_over_zmod():
    inst = random_instance(zmod(5), 3, np.random.default_rng(0), 4)
    _, tok = keygen(inst, np.random.default_rng(1))
    assert tok.a.n == 3 and tok.a.semiring == zmod(5)
