from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from braidroot.braid import BraidError, BraidWord, delta, gamma, half_twist, inverse, multiply, parse_word, power
from braidroot.garside import (
    ConjugacyCertificate,
    Conjugate,
    GarsideNormalForm,
    NotConjugate,
    SearchBudgetExceeded,
    Unknown,
    canonical_representative,
    conjugacy_test,
    equals,
    full_twist_power,
    is_identity,
    make_certificate,
    normal_form,
    summit_form,
    super_summit_set,
)

from oracles import burau, random_word, rewrite


def W(text, n):
    return parse_word(text, n)


def b3_words(max_len=10):
    return st.lists(st.sampled_from((1, -1, 2, -2)), max_size=max_len).map(lambda xs: BraidWord(3, tuple(xs)))


# -- normal form


def test_normal_form_examples():
    assert normal_form(W("1 -1", 3)) == GarsideNormalForm(3, 0, ())
    assert normal_form(W("1 2 1", 3)) == GarsideNormalForm(3, 1, ())
    nf = normal_form(W("-1", 3))
    assert nf.inf == -1 and nf.canonical_length == 1
    # the single factor is the permutation braid of s1 s2
    assert equals(nf.factors and GarsideNormalForm(3, 0, nf.factors).to_word(), W("1 2", 3))


def test_normal_form_text():
    assert str(normal_form(half_twist(4))) == "D^1"
    assert str(normal_form(W("1", 3))).startswith("D^0 | ")


@settings(max_examples=200)
@given(st.integers(2, 6), st.integers(0, 14), st.integers(0, 2**32))
def test_normal_form_roundtrip(n, length, seed):
    w = random_word(random.Random(seed), n, length)
    nf = normal_form(w)
    assert normal_form(nf.to_word()) == nf
    assert all(f != tuple(range(n)) for f in nf.factors)


@settings(max_examples=200)
@given(st.integers(2, 6), st.integers(0, 12), st.integers(0, 2**32))
def test_relation_rewrites_are_equal(n, length, seed):
    rng = random.Random(seed)
    w = random_word(rng, n, length)
    v = rewrite(rng, w, 40)
    assert equals(w, v)
    assert normal_form(w).key == normal_form(v).key


@settings(max_examples=300)
@given(b3_words(), b3_words())
def test_equality_agrees_with_burau_on_three_strands(a, b):
    # the Burau representation is faithful on B_3
    assert equals(a, b) == (burau(a) == burau(b))


@settings(max_examples=100)
@given(st.integers(2, 6), st.integers(0, 10), st.integers(0, 10), st.integers(0, 2**32))
def test_normal_form_arithmetic(n, la, lb, seed):
    rng = random.Random(seed)
    a, b = random_word(rng, n, la), random_word(rng, n, lb)
    na, nb = normal_form(a), normal_form(b)
    assert na * nb == normal_form(multiply(a, b))
    assert na.inverse() == normal_form(inverse(a))
    assert na ** 3 == normal_form(power(a, 3))
    assert na ** -2 == normal_form(power(a, -2))
    assert na.conjugate(nb) == normal_form(multiply(inverse(b), a, b))


def test_equality_examples():
    assert equals(power(W("1 2", 3), 3), power(W("2 1", 3), 3))
    assert not equals(W("1 2", 3), W("2 1", 3))
    assert equals(W("1 2 1", 3), W("2 1 2", 3))


def test_equality_rejects_mismatched_strands():
    with pytest.raises(BraidError):
        equals(W("1", 3), W("1", 4))


def test_full_twist_power_examples():
    assert full_twist_power(BraidWord.identity(4)) == 0
    assert full_twist_power(power(W("1 2", 3), 3)) == 1
    assert full_twist_power(W("1", 3)) is None
    assert full_twist_power(half_twist(3)) is None
    assert full_twist_power(power(half_twist(5), -4)) == -2


@pytest.mark.parametrize("n", range(3, 9))
def test_delta_and_gamma_powers_are_the_full_twist(n):
    full = power(half_twist(n), 2)
    assert equals(power(delta(n), n), full)
    assert equals(power(gamma(n), n - 1), full)


# -- summit sets


def test_summit_form_examples():
    full = power(half_twist(3), 2)
    y, c = summit_form(full)
    assert y == normal_form(full) and is_identity(c)

    w = W("-2 1 2", 3)
    y, c = summit_form(w)
    assert y.canonical_length == 1 and y.inf == 0
    assert normal_form(multiply(inverse(c), w, c)) == y

    y, c = summit_form(delta(3))
    assert (y.inf, y.canonical_length) == (0, 1)


@settings(max_examples=60)
@given(st.integers(3, 5), st.integers(1, 10), st.integers(0, 2**32))
def test_summit_set_is_closed_and_uniform(n, length, seed):
    w = random_word(random.Random(seed), n, length)
    y, c = summit_form(w)
    assert normal_form(multiply(inverse(c), w, c)) == y
    sss = super_summit_set(y)
    assert sss.complete
    for z in sss:
        assert (z.inf, z.sup) == (y.inf, y.sup)
        assert normal_form(multiply(inverse(sss.path(z)), sss.root.to_word(), sss.path(z))) == z


def test_budget_exceeded_is_reported():
    w = random_word(random.Random(5), 8, 30)
    y, _ = summit_form(w)
    with pytest.raises(SearchBudgetExceeded):
        super_summit_set(y, budget=1)
    res = conjugacy_test(w, multiply(W("1", 8), w, W("-1", 8)), budget=1)
    assert isinstance(res, Unknown) and res.status == "unknown"


# -- conjugacy


def test_conjugacy_examples():
    res = conjugacy_test(W("1", 3), W("2", 3))
    assert isinstance(res, Conjugate) and res.certificate.verified
    xi = inverse(W("1 2", 3))
    assert equals(multiply(inverse(xi), W("1", 3), xi), W("2", 3))

    res = conjugacy_test(W("1", 3), W("-1", 3))
    assert isinstance(res, NotConjugate) and res.status == "not_conjugate"

    res = conjugacy_test(W("1 2", 3), W("2 1", 3))
    assert isinstance(res, Conjugate) and res.certificate.check()


def test_conjugacy_refutes_same_exponent_sum():
    # s1^2 is pure, s1 s2 is not
    assert isinstance(conjugacy_test(W("1 1", 3), W("1 2", 3)), NotConjugate)


@settings(max_examples=80)
@given(st.integers(3, 6), st.integers(0, 10), st.integers(0, 8), st.integers(0, 2**32))
def test_random_conjugates_are_certified(n, lw, le, seed):
    rng = random.Random(seed)
    w, eta = random_word(rng, n, lw), random_word(rng, n, le)
    res = conjugacy_test(w, multiply(inverse(eta), w, eta))
    assert isinstance(res, Conjugate)
    assert res.certificate.verified and res.certificate.check()


def test_certificate_json_and_check():
    a, b = W("1", 3), W("2", 3)
    bad = make_certificate(a, b, BraidWord.identity(3))
    assert not bad.verified
    good = make_certificate(a, b, inverse(W("1 2", 3)))
    assert good.verified
    assert good.to_json() == {"n": 3, "alpha": "s1", "beta": "s2", "witness": "s2^-1 s1^-1", "verified": True}
    assert isinstance(good, ConjugacyCertificate)


@settings(max_examples=60)
@given(st.integers(3, 5), st.integers(0, 10), st.integers(0, 8), st.integers(0, 2**32))
def test_canonical_representative_is_class_invariant(n, lw, le, seed):
    rng = random.Random(seed)
    w, eta = random_word(rng, n, lw), random_word(rng, n, le)
    k1, c1 = canonical_representative(w)
    k2, c2 = canonical_representative(multiply(inverse(eta), w, eta))
    assert normal_form(k1) == normal_form(k2)
    assert equals(multiply(inverse(c1), w, c1), k1)
