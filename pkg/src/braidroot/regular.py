"""
Regular forms of braids that preserve a curve system, and conjugacy between them.

A decomposition is regular when, in every orbit of circles, all interior
braids are trivial except the one in the orbit's last tube, and the surviving
interiors of different orbits are either equal or not conjugate. Any
decomposition can be brought to this shape by two conjugations with trivial
tubular part: ``mu`` pushes each orbit's interiors into its last tube, where
their product remains, and ``nu`` replaces that product by the canonical
representative of its conjugacy class.

Two regular forms with the same tubular braid are conjugate once some braid
commuting with the tubular braid carries each orbit to an orbit holding the
same representative. When the tubular braid is periodic it can be moved to a
standard power of delta or gamma, whose orbit-exchanging centralizer elements
(sigma_i delta^s)^r and (sigma_i gamma^s)^r realise any permutation of orbits
with equal labels.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from math import gcd
from typing import Optional

from .braid import BraidError, BraidWord, delta, format_word, gamma, inverse, multiply, power
from .garside import (
    DEFAULT_BUDGET,
    Conjugate,
    ConjugacyResult,
    NotConjugate,
    SearchBudgetExceeded,
    Unknown,
    canonical_representative,
    conjugacy_test,
    equals,
    is_identity,
    make_certificate,
    normal_form,
)
from .periodic import classify_periodic, is_periodic, standard_target, standardize_periodic
from .tubular import (
    TubularDecomposition,
    conjugate_by_tubular,
    dec_product,
    embed,
    format_decomposition,
    orbits,
)

__all__ = [
    "RegularFormResult",
    "mu",
    "nu",
    "to_regular_form",
    "is_regular_form",
    "orbit_swap_element",
    "regular_conjugacy_test",
]


@dataclass(frozen=True)
class RegularFormResult:
    original: TubularDecomposition
    regular: TubularDecomposition
    conjugator: BraidWord
    kappa: tuple[BraidWord, ...]  # one per orbit, in orbits() order

    def to_text(self) -> str:
        lines = [format_decomposition(self.regular)]
        for i, k in enumerate(self.kappa, start=1):
            lines.append(f"kappa[{i}]: {format_word(k)}")
        lines.append(f"conjugator: {format_word(self.conjugator)}")
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {
            "regular": format_decomposition(self.regular),
            "kappa": [format_word(k) for k in self.kappa],
            "conjugator": format_word(self.conjugator),
        }


def _interior_only(d: TubularDecomposition, interiors: list[BraidWord]) -> TubularDecomposition:
    return TubularDecomposition(d.n, d.curves, BraidWord.identity(d.m), tuple(interiors))


def _orbit_products(d: TubularDecomposition) -> list[BraidWord]:
    return [multiply(*(d.interiors[u] for u in orb)) for orb in orbits(d).orbits]


def mu(d: TubularDecomposition) -> TubularDecomposition:
    """Trivial-tubular element whose interior at C_{i,u} is alpha_{i,u} ... alpha_{i,r_i}."""
    interiors = list(d.interiors)
    for orb in orbits(d).orbits:
        for j, u in enumerate(orb):
            interiors[u] = multiply(*(d.interiors[v] for v in orb[j:]))
    return _interior_only(d, interiors)


def _nu_and_kappa(
    d_prime: TubularDecomposition, budget: int
) -> tuple[TubularDecomposition, tuple[BraidWord, ...]]:
    interiors = list(d_prime.interiors)
    kappas = []
    for orb in orbits(d_prime).orbits:
        kappa, conj = canonical_representative(d_prime.interiors[orb[-1]], budget)
        kappas.append(kappa)
        for u in orb:
            interiors[u] = conj
    return _interior_only(d_prime, interiors), tuple(kappas)


def nu(d_prime: TubularDecomposition, budget: int = DEFAULT_BUDGET) -> TubularDecomposition:
    """Trivial-tubular element carrying each last-tube interior to its canonical representative.

    Raises SearchBudgetExceeded when a representative cannot be computed within ``budget``.
    """
    return _nu_and_kappa(d_prime, budget)[0]


def to_regular_form(d: TubularDecomposition, budget: int = DEFAULT_BUDGET) -> RegularFormResult:
    orb = orbits(d)
    m1 = mu(d)
    pushed = [BraidWord.identity(w.n) for w in d.interiors]
    for o, prod in zip(orb.orbits, _orbit_products(d)):
        pushed[o[-1]] = prod
    d_prime = replace(d, interiors=tuple(pushed))
    n1, kappa = _nu_and_kappa(d_prime, budget)
    regular_int = [BraidWord.identity(w.n) for w in d.interiors]
    for o, k in zip(orb.orbits, kappa):
        regular_int[o[-1]] = k
    regular = replace(d, interiors=tuple(regular_int))
    conj = embed(dec_product(m1, n1))
    if not equals(multiply(inverse(conj), embed(d), conj), embed(regular)):
        raise AssertionError("regular form conjugator failed verification")
    return RegularFormResult(d, regular, conj, kappa)


def is_regular_form(d: TubularDecomposition, budget: int = DEFAULT_BUDGET) -> bool:
    """Check both regularity conditions; raises SearchBudgetExceeded if undecided."""
    lasts = []
    for orb in orbits(d).orbits:
        if any(not is_identity(d.interiors[u]) for u in orb[:-1]):
            return False
        lasts.append(d.interiors[orb[-1]])
    for i in range(len(lasts)):
        for j in range(i + 1, len(lasts)):
            x, y = lasts[i], lasts[j]
            if x.n != y.n or equals(x, y):
                continue
            res = conjugacy_test(x, y, budget)
            if isinstance(res, Unknown):
                raise SearchBudgetExceeded(res.explored, budget)
            if isinstance(res, Conjugate):
                return False
    return True


def _swap_range(kind: str, s: int, m: int) -> tuple[BraidWord, int, range]:
    """Standard power, orbit length r, and the valid indices i."""
    if m < 2:
        raise BraidError(f"need at least 2 strands, got {m}")
    if kind == "delta":
        P = power(delta(m), s)
        t = gcd(m, s) if s else m
        return P, m // t, range(1, t)
    if kind == "gamma":
        P = power(gamma(m), s)
        t = 1 + (gcd(m - 1, s) if s else m - 1)
        return P, (m - 1) // (t - 1), range(2, t)
    raise BraidError(f"unknown kind {kind!r}; expected 'delta' or 'gamma'")


def orbit_swap_element(kind: str, s: int, r: int, i: int, m: int) -> BraidWord:
    """(sigma_i delta^s)^r or (sigma_i gamma^s)^r on m strands.

    Valid when r is the orbit length of delta^s (for gamma^s, of its orbits other
    than the fixed point 1) and P_i, P_{i+1} lie in distinct orbits that are not
    the fixed one, i.e. 1 <= i < t for delta and 2 <= i < t for gamma, t being
    the number of orbits.
    """
    P, r_expected, valid = _swap_range(kind, s, m)
    if r != r_expected:
        raise BraidError(f"orbit length of {kind}^{s} on {m} strands is {r_expected}, not {r}")
    if i not in valid:
        raise BraidError(
            f"index {i} is not valid for {kind}^{s} on {m} strands "
            f"(valid: {list(valid) or 'none'})"
        )
    return power(BraidWord(m, (i,)) * P, r)


# --------------------------------------------------------------------------
# conjugacy of regular forms


def _with_tubular(d: TubularDecomposition, t: BraidWord) -> TubularDecomposition:
    # only valid when t equals d.tubular as a braid; cabling respects braid equality
    return replace(d, tubular=t)


def _align(a: TubularDecomposition, b: TubularDecomposition, budget: int) -> Optional[BraidWord]:
    """For equal tubular braids over the same layout, a conjugator matching interiors orbit by orbit."""
    b = _with_tubular(b, a.tubular)
    ra = to_regular_form(a, budget)
    rb = to_regular_form(b, budget)
    if len(ra.kappa) != len(rb.kappa):
        return None
    if not all(x.n == y.n and equals(x, y) for x, y in zip(ra.kappa, rb.kappa)):
        return None
    return multiply(ra.conjugator, inverse(rb.conjugator))


def _position_labels(d: TubularDecomposition, budget: int) -> dict[int, tuple]:
    """Label of each block position (1-based): size and canonical orbit representative."""
    rf = to_regular_form(d, budget)
    blocks = d.circle_blocks()
    labels = {j + 1: (1, None) for j, s in enumerate(d.sizes) if s == 1}
    for orb, kappa in zip(orbits(d).orbits, rf.kappa):
        key = (kappa.n, normal_form(kappa).key)
        for u in orb:
            labels[blocks[u] + 1] = key
    return labels


def _swap_plan(cls_base: str, m: int, s: int):
    """Orbit reps (positions) that swaps act on, a fixed position if any, and swap builder."""
    if cls_base == "central":
        return list(range(1, m + 1)), None, lambda q: BraidWord(m, (q,))
    kind = cls_base
    _, r, valid = _swap_range(kind, s, m)
    if kind == "delta":
        reps = list(range(1, len(valid) + 2))
        return reps, None, lambda q: orbit_swap_element("delta", s, r, q, m)
    reps = list(range(2, len(valid) + 3))
    return reps, 1, lambda q: orbit_swap_element("gamma", s, r, q, m)


def _periodic_case(a: TubularDecomposition, b: TubularDecomposition, budget: int) -> ConjugacyResult:
    ca, cb = classify_periodic(a.tubular), classify_periodic(b.tubular)
    if ca != cb:
        return NotConjugate("tubular braids are not conjugate")
    P = standard_target(ca)
    m = a.m
    za = standardize_periodic(a.tubular, budget).witness
    zb = standardize_periodic(b.tubular, budget).witness
    a1, lift_a = conjugate_by_tubular(a, za)
    b1, lift_b = conjugate_by_tubular(b, zb)
    a1, b1 = _with_tubular(a1, P), _with_tubular(b1, P)
    la, lb = _position_labels(a1, budget), _position_labels(b1, budget)
    if sorted(map(repr, la.values())) != sorted(map(repr, lb.values())):
        return NotConjugate("no orbit matching with conjugate interiors")
    reps, fixed, swap = _swap_plan(ca.base, m, ca.t)
    if fixed is not None and la[fixed] != lb[fixed]:
        return NotConjugate("interiors of the fixed orbit are not conjugate")
    cur = [la[p] for p in reps]
    tgt = [lb[p] for p in reps]
    moves: list[BraidWord] = []
    for idx in range(len(reps)):
        k = next(k for k in range(idx, len(reps)) if cur[k] == tgt[idx])
        for q in range(k - 1, idx - 1, -1):
            moves.append(swap(reps[q]))
            cur[q], cur[q + 1] = cur[q + 1], cur[q]
    eta = multiply(BraidWord.identity(m), *moves)
    a2, lift_eta = conjugate_by_tubular(a1, eta)
    a2 = _with_tubular(a2, P)
    if a2.curves != b1.curves:
        raise AssertionError("orbit permutation did not align the block layouts")
    xi = _align(a2, b1, budget)
    if xi is None:
        raise AssertionError("matched orbit labels but regular forms differ")
    return _certify(a, b, multiply(lift_a, lift_eta, xi, inverse(lift_b)))


def _certify(a: TubularDecomposition, b: TubularDecomposition, xi: BraidWord) -> Conjugate:
    cert = make_certificate(embed(a), embed(b), xi)
    if not cert.verified:
        raise AssertionError("regular conjugacy witness failed verification")
    return Conjugate(cert)


def _general_case(a: TubularDecomposition, b: TubularDecomposition, budget: int) -> ConjugacyResult:
    res = conjugacy_test(a.tubular, b.tubular, budget)
    if isinstance(res, (NotConjugate, Unknown)):
        if isinstance(res, NotConjugate):
            return NotConjugate("tubular braids are not conjugate")
        return res
    eta0 = res.certificate.witness
    a1, lift = conjugate_by_tubular(a, eta0)
    if a1.curves != b.curves:
        return Unknown(0, "tubular conjugator does not match block layouts; centralizer search not attempted")
    xi = _align(_with_tubular(a1, b.tubular), b, budget)
    if xi is None:
        return Unknown(0, "orbit labels differ under the tubular conjugator found; centralizer not searched")
    return _certify(a, b, multiply(lift, xi))


def regular_conjugacy_test(
    a: RegularFormResult, b: RegularFormResult, budget: int = DEFAULT_BUDGET
) -> ConjugacyResult:
    """Decide conjugacy of the braids behind two regular forms.

    A Conjugate result certifies ``embed(a.original)`` against ``embed(b.original)``.
    NotConjugate is reported when the tubular braids are not conjugate or no orbit
    matching pairs conjugate interiors; both refutations assume the curve systems
    are the canonical reduction systems of the braids.
    """
    ra, rb = a.regular, b.regular
    if ra.n != rb.n:
        raise BraidError(f"strand count mismatch: {ra.n} vs {rb.n}")
    if sorted(ra.sizes) != sorted(rb.sizes):
        return NotConjugate("curve systems have different circle sizes")
    try:
        if is_periodic(ra.tubular) and is_periodic(rb.tubular):
            res = _periodic_case(ra, rb, budget)
        else:
            res = _general_case(ra, rb, budget)
    except SearchBudgetExceeded as exc:
        return Unknown(exc.explored)
    if not isinstance(res, Conjugate):
        return res
    xi = multiply(a.conjugator, res.certificate.witness, inverse(b.conjugator))
    cert = make_certificate(embed(a.original), embed(b.original), xi)
    if not cert.verified:
        raise AssertionError("regular conjugacy witness failed verification")
    return Conjugate(cert)
