"""
Executable check that braids with a common k-th power are conjugate.

``conjugacy_via_powers`` takes a pair with equal k-th powers and returns a
verified conjugator, following the usual case split: equal braids, periodic
braids (both conjugate to the same power of delta or gamma), braids given
together with decompositions over a common curve system, and finally a plain
super summit search. It never answers "not conjugate": under the precondition
that outcome is impossible, so any refutation met on the way is treated as a
bug and raised.

Instance families:

* ``F1`` periodic: two random conjugates of delta^t or gamma^t whose k-th power
  is central.
* ``F2`` equal: the same random word twice.
* ``F3`` reducible: a braid whose tubular braid is a standard periodic braid,
  conjugated by the cabling of an orbit-exchanging element that commutes with
  its k-th power, then both moved by a random element preserving the curves.
* ``F4`` negative: pairs whose k-th powers differ.

Trials are seeded from a master seed and the trial index, so every report line
can be reproduced on its own.
"""

from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass, field
from math import lcm
from typing import Iterator, Optional, Sequence, TextIO

from .braid import (
    BraidError,
    BraidWord,
    delta,
    format_word,
    gamma,
    half_twist,
    inverse,
    multiply,
    power,
    underlying_permutation,
)
from .curves import CurveSystem
from .garside import (
    DEFAULT_BUDGET,
    ConjugacyCertificate,
    Conjugate,
    Unknown,
    conjugacy_test,
    equals,
    make_certificate,
    normal_form,
)
from .periodic import classify_periodic, is_periodic, standardize_periodic
from .regular import _swap_range, mu, orbit_swap_element, regular_conjugacy_test, to_regular_form
from .tubular import (
    TubularDecomposition,
    curves_from_sizes,
    dec_inverse,
    dec_product,
    embed,
    orbits,
)

__all__ = [
    "CERTIFIED",
    "EQUAL",
    "UNKNOWN",
    "PRECONDITION_FAILED",
    "FAMILIES",
    "PowersResult",
    "Instance",
    "TrialReport",
    "TrialConfig",
    "conjugacy_via_powers",
    "generate_instance",
    "brute_force_root",
    "run_trials",
    "trial_seed",
]

CERTIFIED = "CertifiedConjugate"
EQUAL = "Equal"
UNKNOWN = "Unknown"
PRECONDITION_FAILED = "PreconditionFailed"

FAMILIES = ("F1", "F2", "F3", "F4")
_EXPECTED = {
    "F1": {EQUAL, CERTIFIED},
    "F2": {EQUAL},
    "F3": {EQUAL, CERTIFIED},
    "F4": {PRECONDITION_FAILED},
}


@dataclass(frozen=True)
class PowersResult:
    outcome: str
    certificate: Optional[ConjugacyCertificate] = None
    route: str = ""
    detail: str = ""

    def to_json(self) -> dict:
        out: dict = {"outcome": self.outcome, "route": self.route}
        if self.certificate is not None:
            out["certificate"] = self.certificate.to_json()
        if self.detail:
            out["detail"] = self.detail
        return out


def _certified(alpha: BraidWord, beta: BraidWord, xi: BraidWord, route: str) -> PowersResult:
    cert = make_certificate(alpha, beta, xi)
    if not cert.verified:
        raise AssertionError(f"{route}: conjugator failed verification")
    return PowersResult(CERTIFIED, cert, route)


def _contradiction(detail: str) -> AssertionError:
    return AssertionError(f"braids with equal powers reported non-conjugate: {detail}")


def conjugacy_via_powers(
    alpha: BraidWord,
    beta: BraidWord,
    k: int,
    hints: Optional[tuple[TubularDecomposition, TubularDecomposition]] = None,
    budget: int = DEFAULT_BUDGET,
) -> PowersResult:
    if alpha.n != beta.n:
        raise BraidError(f"strand count mismatch: {alpha.n} vs {beta.n}")
    if k == 0:
        raise ValueError("k must be nonzero")
    pa, pb = normal_form(alpha) ** k, normal_form(beta) ** k
    if pa != pb:
        return PowersResult(
            PRECONDITION_FAILED, route="precondition", detail=f"alpha^k = {pa}; beta^k = {pb}"
        )
    if equals(alpha, beta):
        return PowersResult(EQUAL, route="equal")
    if is_periodic(alpha) and is_periodic(beta):
        return _periodic_route(alpha, beta, budget)
    if hints is not None:
        res = _reducible_route(alpha, beta, k, hints, budget)
        if res is not None:
            return res
    return _summit_route(alpha, beta, budget)


def _periodic_route(alpha: BraidWord, beta: BraidWord, budget: int) -> PowersResult:
    if classify_periodic(alpha) != classify_periodic(beta):
        raise _contradiction("periodic classes differ")
    try:
        za = standardize_periodic(alpha, budget).witness
        zb = standardize_periodic(beta, budget).witness
    except RuntimeError as exc:
        return PowersResult(UNKNOWN, route="periodic", detail=str(exc))
    return _certified(alpha, beta, multiply(za, inverse(zb)), "periodic")


def _summit_route(alpha: BraidWord, beta: BraidWord, budget: int) -> PowersResult:
    res = conjugacy_test(alpha, beta, budget)
    if isinstance(res, Conjugate):
        return PowersResult(CERTIFIED, res.certificate, "summit")
    if isinstance(res, Unknown):
        return PowersResult(UNKNOWN, route="summit", detail=res.reason)
    raise _contradiction(res.reason)


def _reducible_route(
    alpha: BraidWord,
    beta: BraidWord,
    k: int,
    hints: tuple[TubularDecomposition, TubularDecomposition],
    budget: int,
) -> Optional[PowersResult]:
    da, db = hints
    if not equals(embed(da), alpha) or not equals(embed(db), beta):
        raise ValueError("decomposition hints do not embed to the given braids")
    if da.curves == db.curves and equals(da.tubular, db.tubular):
        return _equal_tubular(alpha, beta, k, da, db, budget)
    res = regular_conjugacy_test(to_regular_form(da, budget), to_regular_form(db, budget), budget)
    if isinstance(res, Conjugate):
        return _certified(alpha, beta, res.certificate.witness, "regular")
    # refutations there assume the curves are canonical, so fall back to the ambient search
    return None


def _equal_tubular(
    alpha: BraidWord,
    beta: BraidWord,
    k: int,
    da: TubularDecomposition,
    db: TubularDecomposition,
    budget: int,
) -> Optional[PowersResult]:
    orb = orbits(da)
    L = lcm(*orb.lengths) if orb.orbits else 1
    K = k * L
    nu_int = [BraidWord.identity(w.n) for w in da.interiors]
    for o in orb.orbits:
        xa = multiply(*(da.interiors[u] for u in o))
        xb = multiply(*(db.interiors[u] for u in o))
        sub = conjugacy_via_powers(xa, xb, K // len(o), None, budget)
        if sub.outcome == EQUAL:
            z = BraidWord.identity(xa.n)
        elif sub.outcome == CERTIFIED:
            z = sub.certificate.witness
        else:
            return None
        for u in o:
            nu_int[u] = z
    nu_d = TubularDecomposition(da.n, da.curves, BraidWord.identity(da.m), tuple(nu_int))
    xi = multiply(embed(mu(da)), embed(nu_d), inverse(embed(mu(db))))
    return _certified(alpha, beta, xi, "reducible")


# --------------------------------------------------------------------------
# instances


@dataclass(frozen=True)
class Instance:
    family: str
    alpha: BraidWord
    beta: BraidWord
    k: int
    hints: Optional[tuple[TubularDecomposition, TubularDecomposition]] = None


def _random_word(rng: random.Random, n: int, length: int) -> BraidWord:
    if n < 2:
        return BraidWord.identity(n)
    return BraidWord(n, tuple(rng.choice((1, -1)) * rng.randint(1, n - 1) for _ in range(length)))


def _f1(rng: random.Random, params: dict) -> Instance:
    max_n = params.get("max_n", 7)
    max_conj = params.get("max_conjugator", 20)
    while True:
        n = rng.randint(3, max_n)
        base = rng.choice(("delta", "gamma"))
        t = rng.choice((1, -1)) * rng.randint(1, 6)
        period = n if base == "delta" else n - 1
        ks = [k for k in range(1, 7) if (t * k) % period == 0]
        if ks:
            break
    k = rng.choice(ks) * rng.choice((1, -1))
    P = power(delta(n) if base == "delta" else gamma(n), t)
    eta = _random_word(rng, n, rng.randint(0, max_conj))
    xi = _random_word(rng, n, rng.randint(0, max_conj))
    return Instance("F1", multiply(inverse(eta), P, eta), multiply(inverse(xi), P, xi), k)


def _f2(rng: random.Random, params: dict) -> Instance:
    n = rng.randint(3, params.get("max_n", 6))
    w = _random_word(rng, n, rng.randint(1, params.get("max_length", 12)))
    return Instance("F2", w, w, rng.randint(1, 6))


# (kind, m, s, i, block size of each orbit of the standard power, listed by smallest position)
_F3_CONFIGS = (
    ("delta", 4, 2, 1, (2, 2)),
    ("delta", 4, -2, 1, (2, 2)),
    ("delta", 2, 2, 1, (3, 3)),
    ("delta", 2, 4, 1, (2, 2)),
    ("delta", 3, 3, 1, (2, 2, 1)),
    ("delta", 3, 3, 2, (1, 2, 2)),
    ("delta", 4, 4, 2, (2, 2, 2, 1)),
    ("delta", 6, 3, 1, (2, 2, 1)),
    ("gamma", 5, 2, 2, (2, 2, 2)),
    ("gamma", 5, 2, 2, (1, 2, 2)),
    ("gamma", 4, 3, 2, (2, 2, 2, 1)),
)


def _random_tubular(rng: random.Random, sizes: Sequence[int], length: int) -> BraidWord:
    """A random word on len(sizes) strands whose permutation respects block sizes."""
    m = len(sizes)
    letters: list[int] = []
    cur = list(sizes)
    for _ in range(length):
        j = rng.randint(1, m - 1)
        if cur[j - 1] == cur[j]:
            letters.append(j * rng.choice((1, -1)))
        else:
            # a full twist of two unequal blocks returns them home
            e = rng.choice((1, -1))
            letters.extend((j * e, j * e))
    return BraidWord(m, tuple(letters))


def _random_element(rng: random.Random, C: CurveSystem, tub_len: int, int_len: int) -> TubularDecomposition:
    sizes = [b - a + 1 for a, b in C.blocks()]
    return TubularDecomposition(
        C.n,
        C,
        _random_tubular(rng, sizes, tub_len),
        tuple(_random_word(rng, b - a + 1, rng.randint(0, int_len)) for a, b in C.intervals),
    )


def _f3(rng: random.Random, params: dict) -> Instance:
    for _ in range(100):
        inst = _f3_attempt(rng)
        if inst is not None:
            return inst
    raise RuntimeError("could not build an F3 instance")


def _f3_attempt(rng: random.Random) -> Optional[Instance]:
    kind, m, s, i, orbit_sizes = rng.choice(_F3_CONFIGS)
    P, r, _ = _swap_range(kind, s, m)
    S = orbit_swap_element(kind, s, r, i, m)
    perm = underlying_permutation(P)
    cycles = sorted(perm.cycles(), key=min)
    size_of = {}
    for cyc, sz in zip(cycles, orbit_sizes):
        for p in cyc:
            size_of[p] = sz
    sizes = [size_of[p] for p in range(1, m + 1)]
    C = curves_from_sizes(sizes)
    block_circle = {}
    for j, sz in enumerate(sizes, start=1):
        if sz > 1:
            block_circle[j] = len(block_circle)
    interiors = [BraidWord.identity(1)] * len(block_circle)

    def walk(start: int) -> list[int]:
        out = [start]
        while len(out) < r:
            out.append(perm(out[-1]))
        return out

    A, B = walk(i), walk(i + 1)
    sa = size_of[i]
    ys = [_random_word(rng, sa, rng.randint(1, 4)) for _ in range(r)]
    # cyclic products Y_j = y_j ... y_{j-1}; e_j commutes with Y_j
    Ys = [multiply(*(ys[(j + t) % r] for t in range(r))) for j in range(r)]
    full = power(half_twist(sa), 2)
    es = [
        multiply(power(full, rng.randint(-1, 1)), power(Ys[j], rng.randint(-1, 1)))
        for j in range(r)
    ]
    zs = [multiply(inverse(es[j]), ys[j], es[(j + 1) % r]) for j in range(r)]
    for j in range(r):
        interiors[block_circle[A[j]]] = ys[j]
        interiors[block_circle[B[j]]] = zs[j]
    done = set(A) | set(B)
    for cyc in cycles:
        if cyc[0] in done or size_of[cyc[0]] == 1:
            continue
        c = _random_word(rng, size_of[cyc[0]], rng.randint(0, 3))
        for p in cyc:
            interiors[block_circle[p]] = c
    da = TubularDecomposition(C.n, C, P, tuple(interiors))
    x = TubularDecomposition(
        C.n, C, S, tuple(BraidWord.identity(b - a + 1) for a, b in C.intervals)
    )
    db = dec_product(dec_product(dec_inverse(x), da), x)
    g = _random_element(rng, C, rng.randint(0, 4), 3)
    da = dec_product(dec_product(dec_inverse(g), da), g)
    db = dec_product(dec_product(dec_inverse(g), db), g)
    alpha, beta = embed(da), embed(db)
    p = rng.randint(1, max(1, 6 // r))
    k = p * r * rng.choice((1, -1))
    if equals(alpha, beta):
        return None
    if normal_form(alpha) ** k != normal_form(beta) ** k:
        raise AssertionError("F3 construction produced different k-th powers")
    return Instance("F3", alpha, beta, k, (da, db))


def _f4(rng: random.Random, params: dict) -> Instance:
    while True:
        n = rng.randint(3, params.get("max_n", 6))
        alpha = _random_word(rng, n, rng.randint(2, 10))
        k = rng.randint(2, 6)
        if rng.random() < 0.5:
            beta = multiply(alpha, BraidWord(n, (rng.choice((1, -1)) * rng.randint(1, n - 1),)))
        else:
            eta = _random_word(rng, n, rng.randint(1, 8))
            beta = multiply(inverse(eta), alpha, eta)
        if normal_form(alpha) ** k != normal_form(beta) ** k:
            return Instance("F4", alpha, beta, k)


_GENERATORS = {"F1": _f1, "F2": _f2, "F3": _f3, "F4": _f4}


def generate_instance(family: str, params: Optional[dict] = None, seed: int = 0) -> Instance:
    if family not in _GENERATORS:
        raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")
    return _GENERATORS[family](random.Random(seed), params or {})


# --------------------------------------------------------------------------
# brute force


def _reduced_words(n: int, max_letters: int) -> Iterator[tuple[int, ...]]:
    """Freely reduced words by increasing length."""
    gens = [g for i in range(1, n) for g in (i, -i)]
    level: list[tuple[int, ...]] = [()]
    for length in range(max_letters + 1):
        yield from level
        if length == max_letters:
            break
        level = [w + (g,) for w in level for g in gens if not w or w[-1] != -g]


def brute_force_root(rho: BraidWord, k: int, max_letters: int) -> list[BraidWord]:
    """Every braid with at most ``max_letters`` letters whose k-th power is rho, one word per element."""
    target = normal_form(rho)
    s = sum(1 if x > 0 else -1 for x in rho.letters)
    if k == 0:
        raise ValueError("k must be nonzero")
    if s % k:
        return []
    want = s // k
    found: dict[tuple, BraidWord] = {}
    for letters in _reduced_words(rho.n, max_letters):
        if sum(1 if x > 0 else -1 for x in letters) != want:
            continue
        w = BraidWord(rho.n, letters)
        nf = normal_form(w)
        if nf.key in found:
            continue
        if nf ** k == target:
            found[nf.key] = w
    return sorted(found.values(), key=lambda w: (len(w), w.letters))


# --------------------------------------------------------------------------
# trials


@dataclass(frozen=True)
class TrialReport:
    trial: int
    family: str
    seed: int
    instance: Instance
    result: PowersResult
    millis: int
    expected: bool

    def to_json(self) -> dict:
        out = {
            "trial": self.trial,
            "family": self.family,
            "seed": f"{self.seed:016x}",
            "n": self.instance.alpha.n,
            "k": self.instance.k,
            "alpha": format_word(self.instance.alpha),
            "beta": format_word(self.instance.beta),
            "outcome": self.result.outcome,
            "millis": self.millis,
        }
        if self.result.certificate is not None:
            out["witness"] = format_word(self.result.certificate.witness)
        return out


@dataclass
class TrialConfig:
    families: Sequence[str] = ("F1", "F2", "F3")
    trials: int = 200
    seed: int = 42
    budget: int = DEFAULT_BUDGET
    params: dict = field(default_factory=dict)


_MASK = (1 << 64) - 1


def trial_seed(master: int, index: int) -> int:
    """Per-trial seed derived from the master seed and the trial counter."""
    x = (master * 0x9E3779B97F4A7C15 + index * 0xBF58476D1CE4E5B9 + 1) & _MASK
    x ^= x >> 31
    return (x * 0x94D049BB133111EB) & _MASK


def run_one(index: int, family: str, seed: int, config: TrialConfig) -> TrialReport:
    inst = generate_instance(family, config.params, seed)
    start = time.perf_counter()
    result = conjugacy_via_powers(inst.alpha, inst.beta, inst.k, inst.hints, config.budget)
    millis = int((time.perf_counter() - start) * 1000)
    ok = result.outcome in _EXPECTED[family]
    if result.certificate is not None:
        ok = ok and result.certificate.verified
    return TrialReport(index, family, seed, inst, result, millis, ok)


def run_trials(config: TrialConfig, out: Optional[TextIO] = None) -> tuple[list[TrialReport], dict]:
    """Run the configured trials; writes JSON lines and a summary footer to ``out`` if given."""
    for f in config.families:
        if f not in _GENERATORS:
            raise ValueError(f"unknown family {f!r}")
    reports = []
    for index in range(config.trials):
        family = config.families[index % len(config.families)]
        reports.append(run_one(index, family, trial_seed(config.seed, index), config))
    reports.sort(key=lambda r: r.trial)
    counts: dict[str, int] = {}
    for r in reports:
        counts[r.result.outcome] = counts.get(r.result.outcome, 0) + 1
    summary = {
        "summary": True,
        "trials": len(reports),
        "seed": f"{config.seed:x}",
        "outcomes": dict(sorted(counts.items())),
        "unexpected": sum(not r.expected for r in reports),
    }
    if out is not None:
        for r in reports:
            out.write(json.dumps(r.to_json()) + "\n")
        out.write(json.dumps(summary) + "\n")
    return reports, summary
