"""
Braid words over the Artin generators.

A braid on ``n`` strands is stored as a tuple of nonzero integers: ``i`` stands
for sigma_i and ``-i`` for its inverse, with 1 <= |i| <= n - 1. Words are freely
reduced on construction and otherwise left alone; deciding whether two words
name the same group element is the job of :mod:`braidroot.garside`.

Products are read left to right: in ``a * b`` the braid ``a`` happens first.
The same convention is used for strand permutations, so the permutation of
``a * b`` sends ``i`` to ``perm(b)(perm(a)(i))``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

__all__ = [
    "BraidError",
    "BraidWord",
    "Permutation",
    "parse_word",
    "format_word",
    "multiply",
    "inverse",
    "power",
    "exponent_sum",
    "underlying_permutation",
    "standard_element",
    "half_twist",
    "delta",
    "gamma",
]


class BraidError(ValueError):
    """Malformed braid input or incompatible strand counts."""


def _free_reduce(letters: Iterable[int]) -> tuple[int, ...]:
    out: list[int] = []
    for x in letters:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


@dataclass(frozen=True)
class BraidWord:
    n: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        if self.n < 1:
            raise BraidError(f"strand count must be positive, got {self.n}")
        letters = tuple(int(x) for x in self.letters)
        for x in letters:
            if x == 0 or abs(x) >= self.n:
                raise BraidError(f"generator {x} out of range for {self.n} strands")
        object.__setattr__(self, "letters", _free_reduce(letters))

    @classmethod
    def identity(cls, n: int) -> BraidWord:
        return cls(n, ())

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __mul__(self, other: BraidWord) -> BraidWord:
        return multiply(self, other)

    def __pow__(self, k: int) -> BraidWord:
        return power(self, k)

    def __invert__(self) -> BraidWord:
        return inverse(self)

    def is_identity_word(self) -> bool:
        return not self.letters

    def __str__(self) -> str:
        return format_word(self)


@dataclass(frozen=True)
class Permutation:
    """A bijection of {1..n}; ``images[i - 1]`` is the image of ``i``."""

    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(self.images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise BraidError(f"not a permutation: {images}")
        object.__setattr__(self, "images", images)

    @property
    def size(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(1, n + 1)))

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def then(self, other: Permutation) -> Permutation:
        """Apply ``self`` first, then ``other``."""
        return Permutation(tuple(other(self(i)) for i in range(1, self.size + 1)))

    def inverse(self) -> Permutation:
        inv = [0] * self.size
        for i, j in enumerate(self.images, start=1):
            inv[j - 1] = i
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images, start=1))

    def cycles(self) -> list[tuple[int, ...]]:
        """Cycles (including fixed points), each started at its smallest entry."""
        seen: set[int] = set()
        out = []
        for i in range(1, self.size + 1):
            if i in seen:
                continue
            cyc = [i]
            seen.add(i)
            j = self(i)
            while j != i:
                cyc.append(j)
                seen.add(j)
                j = self(j)
            out.append(tuple(cyc))
        return out

    def order(self) -> int:
        from math import lcm

        return lcm(*(len(c) for c in self.cycles())) if self.size else 1


_TOKEN = re.compile(r"^(s?)([+-]?\d+)(?:\^([+-]?\d+))?$")


def parse_word(text: str, n: int) -> BraidWord:
    """Parse whitespace separated tokens like ``1 -2``, ``s1 s2^-1`` or ``s1^3``.

    The token ``e`` (the identity, as printed by :func:`format_word`) is skipped.
    """
    letters: list[int] = []
    for tok in text.replace(",", " ").split():
        if tok == "e":
            continue
        m = _TOKEN.match(tok)
        if m is None:
            raise BraidError(f"cannot parse token {tok!r}")
        gen = int(m.group(2))
        exp = int(m.group(3)) if m.group(3) is not None else 1
        if gen == 0:
            raise BraidError(f"generator index 0 in token {tok!r}")
        letter = gen if exp >= 0 else -gen
        letters.extend([letter] * abs(exp))
    return BraidWord(n, tuple(letters))


def format_word(w: BraidWord) -> str:
    """Format as ``s<i>^<e>`` tokens, grouping repeated letters; ``e`` for the identity."""
    if not w.letters:
        return "e"
    parts = []
    i = 0
    letters = w.letters
    while i < len(letters):
        j = i
        while j < len(letters) and letters[j] == letters[i]:
            j += 1
        gen = abs(letters[i])
        e = (j - i) * (1 if letters[i] > 0 else -1)
        parts.append(f"s{gen}" if e == 1 else f"s{gen}^{e}")
        i = j
    return " ".join(parts)


def _check_same(a: BraidWord, b: BraidWord) -> None:
    if a.n != b.n:
        raise BraidError(f"strand count mismatch: {a.n} vs {b.n}")


def multiply(*words: BraidWord) -> BraidWord:
    if not words:
        raise BraidError("multiply needs at least one word")
    for w in words[1:]:
        _check_same(words[0], w)
    return BraidWord(words[0].n, tuple(x for w in words for x in w.letters))


def inverse(w: BraidWord) -> BraidWord:
    return BraidWord(w.n, tuple(-x for x in reversed(w.letters)))


def power(w: BraidWord, k: int) -> BraidWord:
    base = w if k >= 0 else inverse(w)
    return BraidWord(w.n, base.letters * abs(k))


def conjugate(w: BraidWord, by: BraidWord) -> BraidWord:
    """``by^-1 * w * by``."""
    return multiply(inverse(by), w, by)


def exponent_sum(w: BraidWord) -> int:
    return sum(1 if x > 0 else -1 for x in w.letters)


def underlying_permutation(w: BraidWord) -> Permutation:
    pos = list(range(w.n))  # pos[strand] = current position
    at = list(range(w.n))  # at[position] = strand
    for x in w.letters:
        i = abs(x) - 1
        s, t = at[i], at[i + 1]
        at[i], at[i + 1] = t, s
        pos[s], pos[t] = i + 1, i
    return Permutation(tuple(p + 1 for p in pos))


def half_twist(n: int) -> BraidWord:
    """Garside's Delta = s1 (s2 s1) (s3 s2 s1) ... (s_{n-1} ... s1)."""
    _check_n(n)
    letters: list[int] = []
    for j in range(1, n):
        letters.extend(range(j, 0, -1))
    return BraidWord(n, tuple(letters))


def delta(n: int) -> BraidWord:
    """s1 s2 ... s_{n-1}; its n-th power is the full twist."""
    _check_n(n)
    return BraidWord(n, tuple(range(1, n)))


def gamma(n: int) -> BraidWord:
    """s1^2 s2 ... s_{n-1}; its (n-1)-th power is the full twist."""
    _check_n(n)
    return BraidWord(n, (1,) + tuple(range(1, n)))


def _check_n(n: int) -> None:
    if n < 2:
        raise BraidError(f"need at least 2 strands, got {n}")


_STANDARD = {
    "half_twist": half_twist,
    "Delta": half_twist,
    "delta": delta,
    "gamma": gamma,
}


def standard_element(kind: str, n: int) -> BraidWord:
    try:
        return _STANDARD[kind](n)
    except KeyError:
        raise BraidError(f"unknown standard element {kind!r}") from None


def shift(w: BraidWord, offset: int, n: int) -> BraidWord:
    """Re-index ``w`` onto strands offset+1 .. offset+w.n of an n-strand braid."""
    return BraidWord(n, tuple(x + offset if x > 0 else x - offset for x in w.letters))


def word_from_letters(n: int, letters: Sequence[int]) -> BraidWord:
    return BraidWord(n, tuple(letters))
