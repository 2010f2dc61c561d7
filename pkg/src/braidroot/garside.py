"""
Left-weighted Garside normal forms, the word problem, and conjugacy search.

Every braid is written uniquely as Delta^p A_1 ... A_r where each A_j is a
permutation braid (a positive braid in which two strands cross at most once),
no A_j is trivial or equal to Delta, and every pair (A_j, A_{j+1}) is
left-weighted: no crossing at the start of A_{j+1} could be moved into A_j.

Permutation braids are handled purely through their permutations. A factor
is a 0-based tuple ``p`` with ``p[j]`` the final position of the strand that
starts at position ``j``. With the left-to-right product convention:

* sigma_i (0-based ``i``) is a prefix of B  iff  ``p_B[i] > p_B[i+1]``;
* A * sigma_i stays simple                   iff  ``inv_A[i] < inv_A[i+1]``;
* the prefix order on simples is inclusion of crossed strand pairs.

Conjugacy is decided by enumerating super summit sets: conjugates of maximal
infimum and minimal supremum. A summit element is reached by cycling and
decycling, and the whole set is explored by conjugating with minimal simple
elements, each obtained as a least fixed point of two monotone closure maps.
"""

from __future__ import annotations

import functools
from collections import deque
from dataclasses import dataclass, field
from typing import Iterator, Optional, Union

from .braid import BraidError, BraidWord, exponent_sum, inverse, multiply

__all__ = [
    "GarsideNormalForm",
    "ConjugacyCertificate",
    "Conjugate",
    "NotConjugate",
    "Unknown",
    "SearchBudgetExceeded",
    "DEFAULT_BUDGET",
    "normal_form",
    "equals",
    "is_identity",
    "full_twist_power",
    "summit_form",
    "super_summit_set",
    "conjugacy_test",
    "canonical_representative",
    "make_certificate",
]

DEFAULT_BUDGET = 10_000

Perm = tuple[int, ...]


# --------------------------------------------------------------------------
# permutation braids


@functools.lru_cache(maxsize=None)
def _identity(n: int) -> Perm:
    return tuple(range(n))


@functools.lru_cache(maxsize=None)
def _delta(n: int) -> Perm:
    return tuple(range(n - 1, -1, -1))


@functools.lru_cache(maxsize=None)
def _generator(n: int, i: int) -> Perm:
    p = list(range(n))
    p[i], p[i + 1] = p[i + 1], p[i]
    return tuple(p)


def _inv(p: Perm) -> Perm:
    out = [0] * len(p)
    for j, v in enumerate(p):
        out[v] = j
    return tuple(out)


def _tau(p: Perm) -> Perm:
    """Delta^-1 A Delta."""
    n = len(p)
    return tuple(n - 1 - p[n - 1 - j] for j in range(n))


def _tau_pow(p: Perm, k: int) -> Perm:
    return _tau(p) if k % 2 else p


def _right_complement(p: Perm) -> Perm:
    """The simple d with A d = Delta."""
    n = len(p)
    inv = _inv(p)
    return tuple(n - 1 - inv[k] for k in range(n))


def _then(p: Perm, q: Perm) -> Perm:
    """Permutation of the product A B (A first)."""
    return tuple(q[v] for v in p)


def _length(p: Perm) -> int:
    n = len(p)
    return sum(1 for j in range(n) for k in range(j + 1, n) if p[j] > p[k])


def _starting(p: Perm) -> list[int]:
    return [i for i in range(len(p) - 1) if p[i] > p[i + 1]]


def _perm_letters(p: Perm) -> list[int]:
    """A positive word (1-based letters) for the permutation braid ``p``."""
    p = list(p)
    out = []
    i = 0
    while i < len(p) - 1:
        if p[i] > p[i + 1]:
            out.append(i + 1)
            p[i], p[i + 1] = p[i + 1], p[i]
            i = max(i - 1, 0)
        else:
            i += 1
    return out


@functools.lru_cache(maxsize=1 << 18)
def _left_weight(a: Perm, b: Perm) -> tuple[Perm, Perm]:
    """Move every crossing of ``b`` that ``a`` can absorb into ``a``."""
    a = list(a)
    b = list(b)
    ia = _inv(tuple(a))
    ia = list(ia)
    n = len(a)
    moved = True
    while moved:
        moved = False
        for i in range(n - 1):
            if b[i] > b[i + 1] and ia[i] < ia[i + 1]:
                # a <- a * s_i ; b <- s_i^-1 * b
                ja, jb = ia[i], ia[i + 1]
                a[ja], a[jb] = i + 1, i
                ia[i], ia[i + 1] = jb, ja
                b[i], b[i + 1] = b[i + 1], b[i]
                moved = True
    return tuple(a), tuple(b)


def _inversions(p: Perm) -> set[tuple[int, int]]:
    n = len(p)
    return {(j, k) for j in range(n) for k in range(j + 1, n) if p[j] > p[k]}


def _from_inversions(n: int, inv: set[tuple[int, int]]) -> Perm:
    up = [0] * n
    down = [0] * n
    for j, k in inv:
        up[j] += 1
        down[k] += 1
    return tuple(j + up[j] - down[j] for j in range(n))


@functools.lru_cache(maxsize=1 << 18)
def _join(p: Perm, q: Perm) -> Perm:
    """Least common multiple of two simples in the prefix order."""
    if p == q:
        return p
    n = len(p)
    rel = [[False] * n for _ in range(n)]
    for j, k in _inversions(p) | _inversions(q):
        rel[j][k] = True
    # transitive closure on strand pairs j < k < l
    for k in range(n):
        for j in range(k):
            if rel[j][k]:
                row_k = rel[k]
                row_j = rel[j]
                for l in range(k + 1, n):
                    if row_k[l]:
                        row_j[l] = True
    inv = {(j, k) for j in range(n) for k in range(j + 1, n) if rel[j][k]}
    return _from_inversions(n, inv)


@functools.lru_cache(maxsize=1 << 18)
def _meet(p: Perm, q: Perm) -> Perm:
    """Greatest common prefix of two simples."""
    n = len(p)
    c = list(range(n))
    a, b = list(p), list(q)
    found = True
    while found:
        found = False
        for i in range(n - 1):
            if a[i] > a[i + 1] and b[i] > b[i + 1]:
                a[i], a[i + 1] = a[i + 1], a[i]
                b[i], b[i + 1] = b[i + 1], b[i]
                # c <- c * s_i
                ci = c.index(i)
                cj = c.index(i + 1)
                c[ci], c[cj] = i + 1, i
                found = True
                break
    return tuple(c)


def _prefix_of(p: Perm, q: Perm) -> bool:
    return _inversions(p) <= _inversions(q)


def _residual(a: Perm, x: Perm) -> Perm:
    """x^-1 (a v x): the least simple d with a being a prefix of x d."""
    j = _join(a, x)
    xi = _inv(x)
    return tuple(j[xi[k]] for k in range(len(x)))


# --------------------------------------------------------------------------
# normal forms


def _normalize(inf: int, factors: list[Perm], n: int) -> tuple[int, tuple[Perm, ...]]:
    """Left-weight an arbitrary sequence of simples behind Delta^inf."""
    out: list[Perm] = []
    for f in factors:
        out.append(f)
        for j in range(len(out) - 2, -1, -1):
            a, b = _left_weight(out[j], out[j + 1])
            if a == out[j]:
                break
            out[j], out[j + 1] = a, b
    d = _delta(n)
    e = _identity(n)
    lo = 0
    while lo < len(out) and out[lo] == d:
        lo += 1
    hi = len(out)
    while hi > lo and out[hi - 1] == e:
        hi -= 1
    return inf + lo, tuple(out[lo:hi])


@dataclass(frozen=True, order=False)
class GarsideNormalForm:
    n: int
    inf: int
    factors: tuple[Perm, ...] = ()

    @property
    def canonical_length(self) -> int:
        return len(self.factors)

    @property
    def sup(self) -> int:
        return self.inf + len(self.factors)

    @property
    def key(self) -> tuple:
        """Total order used for canonical choices: (inf, length, factors)."""
        return (self.inf, len(self.factors), self.factors)

    def __lt__(self, other: GarsideNormalForm) -> bool:
        return self.key < other.key

    @classmethod
    def identity(cls, n: int) -> GarsideNormalForm:
        return cls(n, 0, ())

    @classmethod
    def from_simple(cls, p: Perm) -> GarsideNormalForm:
        n = len(p)
        inf, fs = _normalize(0, [p], n)
        return cls(n, inf, fs)

    def __mul__(self, other: GarsideNormalForm) -> GarsideNormalForm:
        if self.n != other.n:
            raise BraidError(f"strand count mismatch: {self.n} vs {other.n}")
        q = other.inf
        seq = [_tau_pow(f, q) for f in self.factors]
        seq.extend(other.factors)
        inf, fs = _normalize(self.inf + q, seq, self.n)
        return GarsideNormalForm(self.n, inf, fs)

    def inverse(self) -> GarsideNormalForm:
        p, r = self.inf, len(self.factors)
        seq = [
            _tau_pow(_right_complement(self.factors[j - 1]), j + p)
            for j in range(r, 0, -1)
        ]
        inf, fs = _normalize(-p - r, seq, self.n)
        return GarsideNormalForm(self.n, inf, fs)

    def __pow__(self, k: int) -> GarsideNormalForm:
        base = self if k >= 0 else self.inverse()
        result = GarsideNormalForm.identity(self.n)
        k = abs(k)
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def conjugate(self, by: GarsideNormalForm) -> GarsideNormalForm:
        """by^-1 * self * by."""
        return by.inverse() * self * by

    def to_word(self) -> BraidWord:
        n = self.n
        letters: list[int] = []
        dw = [x for j in range(1, n) for x in range(j, 0, -1)]
        if self.inf >= 0:
            letters.extend(dw * self.inf)
        else:
            letters.extend([-x for x in reversed(dw)] * (-self.inf))
        for f in self.factors:
            letters.extend(_perm_letters(f))
        return BraidWord(n, tuple(letters))

    def __str__(self) -> str:
        parts = [f"D^{self.inf}"]
        parts.extend(" ".join(str(v + 1) for v in f) for f in self.factors)
        return " | ".join(parts)


def normal_form(w: BraidWord) -> GarsideNormalForm:
    """Left normal form of a braid word."""
    n = w.n
    inf = 0
    out: list[Perm] = []
    d = _delta(n)
    e = _identity(n)
    for x in w.letters:
        i = abs(x) - 1
        g = _generator(n, i)
        if x > 0:
            f = g
        else:
            inf -= 1
            out = [_tau(f) for f in out]
            f = _tau(_right_complement(g))
        out.append(f)
        for j in range(len(out) - 2, -1, -1):
            a, b = _left_weight(out[j], out[j + 1])
            if a == out[j]:
                break
            out[j], out[j + 1] = a, b
        lo = 0
        while lo < len(out) and out[lo] == d:
            lo += 1
        if lo:
            inf += lo
            out = out[lo:]
        while out and out[-1] == e:
            out.pop()
    return GarsideNormalForm(n, inf, tuple(out))


def as_nf(x: Union[BraidWord, GarsideNormalForm]) -> GarsideNormalForm:
    return x if isinstance(x, GarsideNormalForm) else normal_form(x)


def equals(a: BraidWord, b: BraidWord) -> bool:
    """True iff the two words represent the same braid."""
    if a.n != b.n:
        raise BraidError(f"strand count mismatch: {a.n} vs {b.n}")
    return normal_form(a) == normal_form(b)


def is_identity(w: BraidWord) -> bool:
    return normal_form(w) == GarsideNormalForm.identity(w.n)


def full_twist_power(w: Union[BraidWord, GarsideNormalForm]) -> Optional[int]:
    """m if w equals Delta^(2m), else None."""
    nf = as_nf(w)
    if nf.factors or nf.inf % 2:
        return None
    return nf.inf // 2


# --------------------------------------------------------------------------
# summit sets


def _simple_word(p: Perm) -> BraidWord:
    return BraidWord(len(p), tuple(_perm_letters(p)))


def _cycle(x: GarsideNormalForm) -> tuple[GarsideNormalForm, Perm]:
    c = _tau_pow(x.factors[0], x.inf)
    seq = list(x.factors[1:]) + [c]
    inf, fs = _normalize(x.inf, seq, x.n)
    return GarsideNormalForm(x.n, inf, fs), c


def _decycle(x: GarsideNormalForm) -> tuple[GarsideNormalForm, Perm]:
    last = x.factors[-1]
    seq = [_tau_pow(last, x.inf)] + list(x.factors[:-1])
    inf, fs = _normalize(x.inf, seq, x.n)
    return GarsideNormalForm(x.n, inf, fs), last


def _summit(x: GarsideNormalForm) -> tuple[GarsideNormalForm, list[int]]:
    """Cycle then decycle into the super summit set; returns conjugator letters."""
    n = x.n
    bound = n * (n - 1) // 2
    letters: list[int] = []
    stale = 0
    while x.factors and stale < bound:
        y, c = _cycle(x)
        letters.extend(_perm_letters(c))
        stale = 0 if y.inf > x.inf else stale + 1
        x = y
    stale = 0
    while x.factors and stale < bound:
        y, c = _decycle(x)
        letters.extend(-v for v in reversed(_perm_letters(c)))
        stale = 0 if y.sup < x.sup else stale + 1
        x = y
    return x, letters


def summit_form(w: Union[BraidWord, GarsideNormalForm]) -> tuple[GarsideNormalForm, BraidWord]:
    """A super summit element y of w's class and c with c^-1 w c = y."""
    nf = as_nf(w)
    y, letters = _summit(nf)
    return y, BraidWord(nf.n, tuple(letters))


def _min_simple(x: GarsideNormalForm, xinv: GarsideNormalForm, i: int) -> Perm:
    """Least simple c above sigma_i with c^-1 x c still in the super summit set."""
    n = x.n
    c = _generator(n, i)
    while True:
        a = _tau_pow(c, x.inf)
        for f in x.factors:
            a = _residual(a, f)
        b = _tau_pow(c, xinv.inf)
        for f in xinv.factors:
            b = _residual(b, f)
        nxt = _join(_join(c, a), b)
        if nxt == c:
            return c
        c = nxt


@dataclass
class SummitSet:
    """A super summit set explored from ``root``, with a spanning tree of conjugators."""

    root: GarsideNormalForm
    members: dict[tuple, GarsideNormalForm] = field(default_factory=dict)
    parent: dict[tuple, tuple[tuple, Perm]] = field(default_factory=dict)
    complete: bool = False

    def __contains__(self, x: GarsideNormalForm) -> bool:
        return x.key in self.members

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[GarsideNormalForm]:
        return iter(self.members.values())

    def path(self, x: GarsideNormalForm) -> BraidWord:
        """c with c^-1 root c = x."""
        chunks = []
        k = x.key
        while k != self.root.key:
            k, p = self.parent[k]
            chunks.append(_perm_letters(p))
        letters = [v for ch in reversed(chunks) for v in ch]
        return BraidWord(self.root.n, tuple(letters))

    def minimum(self) -> GarsideNormalForm:
        return min(self.members.values(), key=lambda y: y.key)


class SearchBudgetExceeded(RuntimeError):
    """A summit enumeration visited more elements than allowed."""

    def __init__(self, explored: int, budget: int):
        super().__init__(f"super summit enumeration exceeded budget ({explored} > {budget})")
        self.explored = explored
        self.budget = budget


# member key -> SummitSet; enumerations are deterministic so sharing is safe
_SSS_INDEX: dict[tuple, SummitSet] = {}
_SSS_INDEX_LIMIT = 500_000


def super_summit_set(x: GarsideNormalForm, budget: int = DEFAULT_BUDGET) -> SummitSet:
    """Enumerate the super summit set containing the summit element ``x``."""
    key = (x.n, x.key)
    hit = _SSS_INDEX.get(key)
    if hit is not None:
        return hit
    sss = SummitSet(root=x)
    sss.members[x.key] = x
    queue = deque([x])
    n = x.n
    while queue:
        y = queue.popleft()
        if not y.factors:
            continue
        yinv = y.inverse()
        seen: set[Perm] = set()
        for i in range(n - 1):
            c = _min_simple(y, yinv, i)
            if c in seen:
                continue
            seen.add(c)
            z = y.conjugate(GarsideNormalForm.from_simple(c))
            if z.key in sss.members:
                continue
            if z.inf != x.inf or z.sup != x.sup:
                raise AssertionError("minimal simple conjugation left the super summit set")
            sss.members[z.key] = z
            sss.parent[z.key] = (y.key, c)
            queue.append(z)
            if len(sss.members) > budget:
                raise SearchBudgetExceeded(len(sss.members), budget)
    sss.complete = True
    if len(_SSS_INDEX) > _SSS_INDEX_LIMIT:
        _SSS_INDEX.clear()
    for k in sss.members:
        _SSS_INDEX[(n, k)] = sss
    return sss


# --------------------------------------------------------------------------
# conjugacy


@dataclass(frozen=True)
class ConjugacyCertificate:
    """Claim ``witness^-1 alpha witness == beta`` with its verification flag."""

    alpha: BraidWord
    beta: BraidWord
    witness: BraidWord
    verified: bool

    def check(self) -> bool:
        lhs = multiply(inverse(self.witness), self.alpha, self.witness)
        return equals(lhs, self.beta)

    def to_json(self) -> dict:
        from .braid import format_word

        return {
            "n": self.alpha.n,
            "alpha": format_word(self.alpha),
            "beta": format_word(self.beta),
            "witness": format_word(self.witness),
            "verified": self.verified,
        }


def make_certificate(alpha: BraidWord, beta: BraidWord, witness: BraidWord) -> ConjugacyCertificate:
    cert = ConjugacyCertificate(alpha, beta, witness, False)
    return ConjugacyCertificate(alpha, beta, witness, cert.check())


@dataclass(frozen=True)
class Conjugate:
    certificate: ConjugacyCertificate
    status = "conjugate"


@dataclass(frozen=True)
class NotConjugate:
    reason: str
    status = "not_conjugate"


@dataclass(frozen=True)
class Unknown:
    explored: int
    reason: str = "budget exceeded"
    status = "unknown"


ConjugacyResult = Union[Conjugate, NotConjugate, Unknown]


def conjugacy_test(a: BraidWord, b: BraidWord, budget: int = DEFAULT_BUDGET) -> ConjugacyResult:
    """Decide whether ``xi^-1 a xi == b`` for some braid xi, with a certificate if so."""
    if a.n != b.n:
        raise BraidError(f"strand count mismatch: {a.n} vs {b.n}")
    if exponent_sum(a) != exponent_sum(b):
        return NotConjugate("exponent sums differ")
    na, nb = normal_form(a), normal_form(b)
    if na == nb:
        return Conjugate(make_certificate(a, b, BraidWord.identity(a.n)))
    xa, letters_a = _summit(na)
    xb, letters_b = _summit(nb)
    if (xa.inf, xa.sup) != (xb.inf, xb.sup):
        return NotConjugate("summit infimum/supremum differ")
    try:
        sss = super_summit_set(xa, budget)
    except SearchBudgetExceeded as exc:
        return Unknown(exc.explored)
    if xb not in sss:
        return NotConjugate("not in the super summit set")
    # ca^-1 a ca = xa = pa^-1 root pa ; cb^-1 b cb = xb = pb^-1 root pb
    ca = BraidWord(a.n, tuple(letters_a))
    cb = BraidWord(a.n, tuple(letters_b))
    witness = multiply(ca, inverse(sss.path(xa)), sss.path(xb), inverse(cb))
    cert = make_certificate(a, b, witness)
    if not cert.verified:
        raise AssertionError("conjugacy witness failed verification")
    return Conjugate(cert)


def canonical_representative(
    w: BraidWord, budget: int = DEFAULT_BUDGET
) -> tuple[BraidWord, BraidWord]:
    """(kappa, nu) with kappa the least super summit element of w's class and nu^-1 w nu = kappa.

    Raises SearchBudgetExceeded when the class is too large to enumerate.
    """
    nf = normal_form(w)
    x, letters = _summit(nf)
    sss = super_summit_set(x, budget)
    best = sss.minimum()
    kappa = best.to_word()
    nu = multiply(BraidWord(w.n, tuple(letters)), inverse(sss.path(x)), sss.path(best))
    return kappa, nu
