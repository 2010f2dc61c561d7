"""
Periodic braids: detection, classification by exponent sum, and conjugators
onto the standard representatives delta^t, gamma^t or Delta^(2t).

A braid on n strands is periodic exactly when its n-th or (n-1)-th power is a
power of the full twist, because every periodic braid is conjugate to a power
of delta (whose n-th power is the full twist) or of gamma (whose (n-1)-th power
is). The exponent sum then pins down which power.
"""

from __future__ import annotations

from dataclasses import dataclass

from .braid import BraidError, BraidWord, delta, exponent_sum, gamma, half_twist, power
from .garside import (
    DEFAULT_BUDGET,
    Conjugate,
    ConjugacyCertificate,
    NotConjugate,
    SearchBudgetExceeded,
    Unknown,
    conjugacy_test,
    full_twist_power,
    make_certificate,
    normal_form,
)

__all__ = [
    "NotPeriodicError",
    "PeriodicClass",
    "is_periodic",
    "classify_periodic",
    "standard_target",
    "standardize_periodic",
]


class NotPeriodicError(ValueError):
    pass


@dataclass(frozen=True)
class PeriodicClass:
    base: str  # "delta", "gamma" or "central"
    t: int
    n: int

    def to_json(self) -> dict:
        return {"base": self.base, "t": self.t, "n": self.n}


def is_periodic(w: BraidWord) -> bool:
    n = w.n
    if n < 2:
        return True
    nf = normal_form(w)
    return full_twist_power(nf ** n) is not None or full_twist_power(nf ** (n - 1)) is not None


def classify_periodic(w: BraidWord) -> PeriodicClass:
    if not is_periodic(w):
        raise NotPeriodicError(f"braid is not periodic: {w}")
    n = w.n
    s = exponent_sum(w)
    if n < 2:
        return PeriodicClass("central", 0, n)
    if s % (n * (n - 1)) == 0:
        return PeriodicClass("central", s // (n * (n - 1)), n)
    if s % (n - 1) == 0:
        return PeriodicClass("delta", s // (n - 1), n)
    if s % n == 0:
        return PeriodicClass("gamma", s // n, n)
    # unreachable for a genuinely periodic braid
    raise AssertionError(f"periodic braid with exponent sum {s} fits neither delta nor gamma")


def standard_target(cls: PeriodicClass) -> BraidWord:
    if cls.base == "central":
        return power(half_twist(cls.n), 2 * cls.t)
    if cls.base == "delta":
        return power(delta(cls.n), cls.t)
    if cls.base == "gamma":
        return power(gamma(cls.n), cls.t)
    raise BraidError(f"unknown periodic base {cls.base!r}")


def standardize_periodic(w: BraidWord, budget: int = DEFAULT_BUDGET) -> ConjugacyCertificate:
    """A verified certificate conjugating ``w`` onto its standard representative.

    Raises SearchBudgetExceeded if the summit search is cut off by ``budget``.
    """
    cls = classify_periodic(w)
    target = standard_target(cls)
    if cls.base == "central":
        # w equals Delta^(2t) itself, so the identity conjugates it
        return make_certificate(w, target, BraidWord.identity(w.n))
    result = conjugacy_test(w, target, budget)
    if isinstance(result, Conjugate):
        return result.certificate
    if isinstance(result, Unknown):
        raise SearchBudgetExceeded(result.explored, budget)
    assert isinstance(result, NotConjugate)
    raise AssertionError(f"periodic braid not conjugate to its standard form: {result.reason}")
