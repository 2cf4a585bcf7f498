from __future__ import annotations

import numpy as np
import pytest

from semiring_dh.actions import (FmLinearAction, ModExpAction, action_instances, fm_linear, modexp,
                                 random_polynomial, translation, two_sided)
from semiring_dh.matrix import MatrixMismatchError, SemiringMatrix
from semiring_dh.rng import stream


def check_action_laws(action, s, rng, trials=10):
    for _ in range(trials):
        g, h = action.sample(rng), action.sample(rng)
        assert action.act(action.compose(g, h), s) == action.act(g, action.act(h, s))
        if action.commutative:
            assert action.act(g, action.act(h, s)) == action.act(h, action.act(g, s))


def test_modexp_example():
    a = modexp(101, 2)
    assert a.act(10, 2) == 14 == pow(2, 10, 101)
    assert a.order == 100


def test_modexp_needs_prime():
    with pytest.raises(ValueError):
        modexp(100, 3)


def test_modexp_laws(rng):
    a = modexp(1019, 2)
    check_action_laws(a, 2, rng)
    u = a.sample_invertible(rng)
    assert a.act(a.compose(a.inverse(u), u), 5) == 5


def test_translation_laws(rng):
    a = translation(13, 2)
    assert a.order == 12
    check_action_laws(a, 3, rng)
    assert a.act(a.compose(a.inverse(5), 5), 7) == 7


def test_fm_linear_identity_and_laws(rng):
    m = rng.integers(0, 7, size=(4, 4))
    a = fm_linear(7, 4, m)
    v = (1, 2, 3, 4)
    assert a.act(a.identity(), v) == v
    check_action_laws(a, v, rng)
    # every sample lies in F_p[M] so commutes with M
    g = a.sample(rng)
    assert np.array_equal((g @ a.m) % 7, (a.m @ g) % 7)


def test_fm_linear_dimension_checks():
    with pytest.raises(ValueError):
        fm_linear(7, 3, np.eye(4, dtype=int))
    with pytest.raises(ValueError):
        FmLinearAction(8, np.eye(2, dtype=int))


def test_fm_identity_minimal_polynomial_degree_one():
    assert FmLinearAction(5, np.eye(3, dtype=int)).dimension == 1


def test_two_sided_on_reference_matrices(paper, rng):
    a = two_sided(paper.semiring, 20, paper.m1, paper.m2)
    check_action_laws(a, paper.s, stream(3, "test", "two_sided"), trials=5)


def test_two_sided_mismatch(paper, b2):
    with pytest.raises(MatrixMismatchError):
        two_sided(b2, 20, paper.m1, paper.m2)
    with pytest.raises(MatrixMismatchError):
        two_sided(paper.semiring, 19, paper.m1, paper.m2)


def test_two_sided_identity_and_monomial(s6, rng):
    m1 = SemiringMatrix(s6, rng.integers(0, 6, size=(3, 3)))
    m2 = SemiringMatrix(s6, rng.integers(0, 6, size=(3, 3)))
    x = SemiringMatrix(s6, rng.integers(0, 6, size=(3, 3)))
    a = two_sided(s6, 3, m1, m2)
    assert a.act(a.identity(), x) == x
    assert a.act(a.monomial(2), x) == m1 @ m1 @ x @ m2 @ m2
    assert a.act(a.power(a.monomial(1), 3), x) == a.act(a.monomial(3), x)


def test_random_polynomial_properties(s6):
    rng = stream(1, "test", "poly")
    degrees = set()
    for _ in range(300):
        p = random_polynomial(s6, 5, rng)
        assert 1 <= p.degree <= 5
        assert set(p.coeffs) <= {0, 1}
        assert any(p.coeffs)
        degrees.add(p.degree)
    assert degrees == {1, 2, 3, 4, 5}
    with pytest.raises(ValueError):
        random_polynomial(s6, 0, rng)


def test_power_zero_is_identity():
    a = modexp(101, 2)
    assert a.power(7, 0) == 1
    assert a.power(3, 4) == 81


def test_factory_names():
    assert set(action_instances()) == {"two_sided", "modexp", "fm_linear", "translation"}
    assert isinstance(action_instances()["modexp"](11, 2), ModExpAction)
