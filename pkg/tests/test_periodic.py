from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from braidroot.braid import BraidWord, delta, exponent_sum, gamma, half_twist, inverse, multiply, parse_word, power
from braidroot.garside import equals
from braidroot.periodic import (
    NotPeriodicError,
    PeriodicClass,
    classify_periodic,
    is_periodic,
    standard_target,
    standardize_periodic,
)

from oracles import burau, random_word


def W(text, n):
    return parse_word(text, n)


def conj(w, eta):
    return multiply(inverse(eta), w, eta)


def test_is_periodic_examples():
    assert is_periodic(W("1 2", 3))
    assert is_periodic(power(half_twist(4), 2))
    assert not is_periodic(W("1", 3))


def test_classify_examples():
    eta = W("1 -3 2", 4)
    assert classify_periodic(conj(power(delta(4), 2), eta)) == PeriodicClass("delta", 2, 4)
    assert classify_periodic(gamma(4)) == PeriodicClass("gamma", 1, 4)
    assert classify_periodic(power(half_twist(3), 2)) == PeriodicClass("central", 1, 3)


def test_classify_central_wins_when_ambiguous():
    # delta^n is the full twist, so the class is central rather than delta
    assert classify_periodic(power(delta(5), 10)) == PeriodicClass("central", 2, 5)
    assert classify_periodic(power(gamma(5), -4)) == PeriodicClass("central", -1, 5)


def test_classify_rejects_non_periodic():
    with pytest.raises(NotPeriodicError):
        classify_periodic(W("1 -2", 3))


def test_class_json():
    assert PeriodicClass("delta", 1, 3).to_json() == {"base": "delta", "t": 1, "n": 3}


def test_standard_targets():
    assert standard_target(PeriodicClass("delta", 2, 4)) == power(delta(4), 2)
    assert standard_target(PeriodicClass("gamma", -1, 5)) == power(gamma(5), -1)
    assert equals(standard_target(PeriodicClass("central", 1, 3)), power(delta(3), 3))


def test_standardize_examples():
    cert = standardize_periodic(delta(3))
    assert cert.verified and cert.witness.letters == ()

    eta = W("1 -3 2", 4)
    cert = standardize_periodic(conj(power(gamma(4), 2), eta))
    assert cert.verified and equals(cert.beta, power(gamma(4), 2))

    full = power(half_twist(5), 2)
    cert = standardize_periodic(full)
    assert cert.verified and cert.witness.letters == ()


@pytest.mark.parametrize("n", range(3, 8))
def test_exponent_sums_of_roots(n):
    assert exponent_sum(delta(n)) == n - 1
    assert exponent_sum(gamma(n)) == n


def _central_power_via_burau(w: BraidWord):
    """Least k in 1..6 with w^k central, decided from Burau matrices only."""
    s = exponent_sum(w)
    for k in range(1, 7):
        if (s * k) % 6:
            continue
        if burau(power(w, k)) == burau(power(half_twist(3), (s * k) // 3)):
            return k
    return None


@settings(max_examples=200)
@given(st.integers(0, 2**32), st.sampled_from(("random", "delta", "gamma")))
def test_periodicity_agrees_with_burau_on_three_strands(seed, kind):
    # B_3 Burau is faithful and periodic braids there have a central power of order dividing 6
    rng = random.Random(seed)
    if kind == "random":
        w = random_word(rng, 3, rng.randint(0, 8))
    else:
        base = delta(3) if kind == "delta" else gamma(3)
        w = conj(power(base, rng.randint(-4, 4)), random_word(rng, 3, rng.randint(0, 6)))
    assert is_periodic(w) == (_central_power_via_burau(w) is not None)


@settings(max_examples=40)
@given(
    st.integers(3, 6),
    st.sampled_from(("delta", "gamma")),
    st.integers(-4, 4).filter(bool),
    st.integers(0, 2**32),
)
def test_standardize_random_conjugates(n, base, t, seed):
    rng = random.Random(seed)
    P = power(delta(n) if base == "delta" else gamma(n), t)
    w = conj(P, random_word(rng, n, rng.randint(0, 12)))
    cls = classify_periodic(w)
    cert = standardize_periodic(w)
    assert cert.verified
    assert equals(cert.beta, standard_target(cls))
    assert equals(conj(w, cert.witness), standard_target(cls))
