from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from semiring_dh.actions import SemigroupAction, modexp, translation, two_sided
from semiring_dh.cryptanalysis import (BsgsResult, CountingAction, CyclicResult, Exhausted, NotFound,
                                       SapInstance, Witness, brute_force_sap, cyclic_attack, eve_set_exact,
                                       eve_set_fraction, polynomial_pairs, randomized_bsgs, wilson_interval)
from semiring_dh.cryptanalysis.generic import brent_cycle
from semiring_dh.matrix import SemiringMatrix
from semiring_dh.protocol import keygen, random_instance
from semiring_dh.rng import stream


class TrivialAction(SemigroupAction):
    def compose(self, g, h):
        return g

    def act(self, g, s):
        return s

    def sample(self, rng):
        return int(rng.integers(0, 10))


def test_polynomial_pairs_order(b2):
    pairs = list(polynomial_pairs(b2, 1))
    # degree totals 0, 1, 1, ..., 2
    totals = [p.degree + q.degree for p, q in pairs]
    assert totals == sorted(totals)
    assert pairs[0][0].coeffs == (1,) and pairs[0][1].coeffs == (1,)
    # 1 constant; 3 of degree one -> 1*1 + 2*(1*3) + 3*3
    assert len(pairs) == 1 + 6 + 9


def test_brute_force_recovers_boolean_keys(b2):
    for seed in range(10):
        inst = random_instance(b2, 2, stream(seed, "test", "brute"), degree_bound=2)
        _, token = keygen(inst, stream(seed, "test", "brute", "key"))
        action = two_sided(b2, 2, inst.m1, inst.m2, 2)
        res = brute_force_sap(SapInstance(action, inst.s, token.a), polynomial_pairs(b2, 2), 10_000)
        assert isinstance(res, Witness)
        assert action.act(res.g, inst.s) == token.a


def test_brute_force_identity_first(b2):
    inst = random_instance(b2, 2, stream(1, "t"), degree_bound=1)
    action = two_sided(b2, 2, inst.m1, inst.m2)
    res = brute_force_sap(SapInstance(action, inst.s, inst.s), polynomial_pairs(b2, 1), 10)
    assert res.tried == 1
    assert res.g[0].coeffs == (1,) and res.g[1].coeffs == (1,)


def test_brute_force_zero_budget(b2):
    action = translation(13, 2)
    assert brute_force_sap(SapInstance(action, 1, 5), iter(range(12)), 0) == Exhausted(0, 0)


def test_eve_fraction_exact_modexp():
    action = modexp(7, 3)
    assert action.order == 6
    frac = eve_set_exact(action, 3, pow(3, 2, 7), range(1, 7))
    assert frac.hits == 1 and frac.fraction == pytest.approx(1 / 6)


def test_eve_fraction_trivial_action():
    frac = eve_set_fraction(TrivialAction(), 5, 5, 200, np.random.default_rng(0))
    assert frac.fraction == 1.0
    assert frac.high == 1.0


def test_eve_fraction_modexp_monte_carlo():
    action = modexp(7, 3)
    frac = eve_set_fraction(action, 3, 2, 6000, stream(1, "eve"))
    assert frac.low <= 1 / 6 <= frac.high


def test_eve_fraction_reference_instance(paper):
    action = two_sided(paper.semiring, 20, paper.m1, paper.m2)
    _, token = keygen(paper, stream(5, "eve", "secret"))
    frac = eve_set_fraction(action, paper.s, token.a, 2000, stream(5, "eve", "samples"))
    assert frac.hits <= 2
    assert frac.low == 0.0 or frac.low < 0.01
    assert frac.high < 0.01


def test_wilson_interval():
    low, high = wilson_interval(50, 100)
    assert low < 0.5 < high
    assert wilson_interval(0, 0) == (0.0, 1.0)
    assert wilson_interval(0, 100)[0] == 0.0


def test_brent_on_rho_shape():
    # tail 0 -> 1 -> 2 -> 3, cycle 3 -> 4 -> 5 -> 6 -> 3
    nxt = {0: 1, 1: 2, 2: 3, 3: 4, 4: 5, 5: 6, 6: 3}
    mu, lam, start = brent_cycle(nxt.__getitem__, 0, 100)
    assert (mu, lam, start) == (3, 4, 3)
    assert brent_cycle(nxt.__getitem__, 0, 2) is None


def test_cyclic_dlp_example():
    action = translation(101, 2)
    res = cyclic_attack(1, 1, pow(2, 53, 101), action, 10_000)
    assert isinstance(res, CyclicResult)
    assert res.k % 100 == 53 == oracles.discrete_log(2, pow(2, 53, 101), 101)
    res1 = cyclic_attack(1, 1, 2, action, 10_000)
    assert res1.k == 1


@given(st.integers(1, 99))
def test_cyclic_attack_all_exponents(k):
    action = translation(101, 2)
    res = cyclic_attack(1, 1, pow(2, k, 101), action, 10_000)
    assert res.k == k
    bound = 4 * (res.preperiod + res.period) + 2 * math.isqrt(res.period - 1) + 2 + 8
    assert res.applications <= bound


def _cycle_with_tail(s6, n, tail):
    # M1 = nilpotent tail block + cycle block; M2 = identity
    arr = np.zeros((n, n), dtype=np.uint8)
    for i in range(tail - 1):
        arr[i, i + 1] = 1
    cyc = n - tail
    for i in range(cyc):
        arr[tail + i, tail + (i + 1) % cyc] = 1
    return SemiringMatrix(s6, arr)


def test_cyclic_attack_two_sided(s6):
    m1 = _cycle_with_tail(s6, 4, 0)
    m2 = _cycle_with_tail(s6, 4, 0)
    x = SemiringMatrix(s6, stream(2, "cyc").integers(0, 6, size=(4, 4)))
    action = two_sided(s6, 4, m1, m2)
    g = action.monomial(1)
    y = action.act(action.power(g, 9), x)
    res = cyclic_attack(g, x, y, action, 10_000)
    assert isinstance(res, CyclicResult)
    assert action.act(action.power(g, res.k), x) == y


@pytest.mark.parametrize("tail,k", [(2, 1), (2, 2), (2, 3), (3, 7), (3, 12)])
def test_cyclic_attack_with_tail(s6, tail, k):
    m1 = _cycle_with_tail(s6, 9, tail)
    x = SemiringMatrix(s6, stream(tail, k, "cyc").integers(0, 6, size=(9, 9)))
    m2 = SemiringMatrix(s6, np.eye(9, dtype=np.uint8))
    action = two_sided(s6, 9, m1, m2)
    g = action.monomial(1)
    y = action.act(action.power(g, k), x)
    res = cyclic_attack(g, x, y, action, 10_000)
    assert isinstance(res, CyclicResult)
    assert action.act(action.power(g, res.k), x) == y
    bound = 4 * (res.preperiod + res.period) + 2 * math.isqrt(max(res.period - 1, 0)) + 2 + 8
    assert res.applications <= bound


def test_cyclic_attack_not_found():
    action = translation(101, 2)
    # 3 is not a power of 4 modulo 101 (4 generates the squares only)
    four = translation(101, 4)
    assert isinstance(cyclic_attack(1, 1, 3, four, 10_000), NotFound)
    assert isinstance(cyclic_attack(1, 1, 3, action, 5), NotFound)


def test_counting_action_counts():
    c = CountingAction(modexp(101, 2))
    c.act(3, 2)
    c.act(3, 2)
    assert c.applications == 2


def test_bsgs_modexp_1019():
    action = modexp(1019, 2)
    for t in range(50):
        rng = stream(t, "bsgs")
        a = action.sample_invertible(rng)
        y = action.act(a, 2)
        res = randomized_bsgs(action, 2, y, 1018, rng)
        assert isinstance(res, BsgsResult)
        assert action.act(res.witness, 2) == y
        assert res.applications <= 10 * math.sqrt(1018)


def test_bsgs_y_equals_x():
    action = modexp(1019, 2)
    res = randomized_bsgs(action, 2, 2, 1018, stream(1, "bsgs"))
    assert action.act(res.witness, 2) == 2


def test_bsgs_tiny_group_exhaustive():
    action = translation(13, 2)
    assert action.order == 12
    for target_exp in range(12):
        y = action.act(target_exp, 1)
        res = randomized_bsgs(action, 1, y, 12, stream(target_exp, "tiny"))
        brute = [a for a in range(12) if action.act(a, 1) == y]
        assert brute == [target_exp]
        assert res.witness % 12 == target_exp


def test_bsgs_needs_group():
    with pytest.raises(ValueError):
        randomized_bsgs(TrivialAction(), 1, 1, 10, np.random.default_rng(0))


def test_bsgs_timeout_reported():
    action = translation(101, 4)  # order 50, never reaches 3
    res = randomized_bsgs(action, 1, 3, 50, stream(0, "t"), max_applications=200)
    assert isinstance(res, NotFound) and res.applications >= 200
