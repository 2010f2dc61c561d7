"""
Round curve systems on the n-punctured disc and the braid action on them.

A curve system is a family of pairwise disjoint round circles, each enclosing
a block [a..b] of consecutive punctures with 2 <= b - a + 1 <= n - 1. Only one
nesting level is represented; deeper structure belongs to interior braids.

Multicurves are encoded by Dynnikov coordinates, a vector of 2n - 4 integers
stored as (a_1, ..., a_{n-2}, b_1, ..., b_{n-2}). They come from intersection
numbers with a fixed set of arcs, so they add over disjoint components and
determine a multicurve up to isotopy. Round circles are symmetric about the
real axis, which makes every a_i vanish; circle [a..b] then contributes -1 to
b_{a-1} (when a >= 2) and +1 to b_{b-1} (when b <= n-1).

Generators act by the usual piecewise-linear update rules, applied letter by
letter from left to right so that ``apply_braid(x * y, v)`` equals
``apply_braid(y, apply_braid(x, v))``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

from .braid import BraidError, BraidWord

__all__ = [
    "CurveError",
    "CurveSystem",
    "make_curves",
    "parse_curves",
    "lamination_coords",
    "decode_coords",
    "apply_braid",
    "preserves",
]


class CurveError(ValueError):
    pass


Interval = tuple[int, int]


@dataclass(frozen=True)
class CurveSystem:
    n: int
    intervals: tuple[Interval, ...] = ()

    def __post_init__(self):
        if self.n < 1:
            raise CurveError(f"puncture count must be positive, got {self.n}")
        ivs = tuple(sorted((int(a), int(b)) for a, b in self.intervals))
        for a, b in ivs:
            if not 1 <= a < b <= self.n:
                raise CurveError(f"circle [{a}-{b}] out of range for {self.n} punctures")
            if b - a + 1 > self.n - 1:
                raise CurveError(f"circle [{a}-{b}] encloses every puncture")
        for (_, b1), (a2, _) in zip(ivs, ivs[1:]):
            if a2 <= b1:
                raise CurveError(f"circles overlap at puncture {a2}")
        object.__setattr__(self, "intervals", ivs)

    def __len__(self) -> int:
        return len(self.intervals)

    def __str__(self) -> str:
        body = ",".join(f"[{a}-{b}]" for a, b in self.intervals)
        return f"n={self.n}; {body}"

    def blocks(self) -> list[Interval]:
        """Circles and free punctures as intervals, left to right."""
        out: list[Interval] = []
        p = 1
        for a, b in self.intervals:
            out.extend((q, q) for q in range(p, a))
            out.append((a, b))
            p = b + 1
        out.extend((q, q) for q in range(p, self.n + 1))
        return out


def make_curves(n: int, intervals: Sequence[Sequence[int]]) -> CurveSystem:
    return CurveSystem(n, tuple((a, b) for a, b in intervals))


_HEADER = re.compile(r"^\s*n\s*=\s*(\d+)\s*;?(.*)$", re.S)
_IV = re.compile(r"\[\s*(\d+)\s*(?:-|\.\.)\s*(\d+)\s*\]")


def parse_curves(text: str) -> CurveSystem:
    """Parse ``"n=6; [1-2],[3-4]"``; an empty circle list is allowed."""
    m = _HEADER.match(text)
    if m is None:
        raise CurveError(f"cannot parse curve system {text!r}")
    rest = m.group(2)
    ivs = [(int(a), int(b)) for a, b in _IV.findall(rest)]
    leftover = _IV.sub("", rest).replace(",", "").strip()
    if leftover:
        raise CurveError(f"unexpected text in curve system: {leftover!r}")
    return CurveSystem(int(m.group(1)), tuple(ivs))


def lamination_coords(C: CurveSystem) -> tuple[int, ...]:
    n = C.n
    if n < 3:
        return ()
    a = [0] * (n - 2)
    b = [0] * (n - 2)
    for lo, hi in C.intervals:
        if lo >= 2:
            b[lo - 2] -= 1
        if hi <= n - 1:
            b[hi - 2] += 1
    return tuple(a + b)


def decode_coords(n: int, coords: Sequence[int]) -> CurveSystem:
    """Inverse of :func:`lamination_coords` on round systems.

    Raises CurveError for vectors that do not describe a round curve system.
    """
    coords = tuple(coords)
    if len(coords) != max(2 * n - 4, 0):
        raise CurveError(f"expected {2 * n - 4} coordinates, got {len(coords)}")
    if n < 3:
        return CurveSystem(n, ())
    a, b = coords[: n - 2], coords[n - 2 :]
    if any(a):
        raise CurveError("not a round curve system (nonzero a-coordinates)")
    # beta[j] = crossings with the vertical line between punctures j+1 and j+2
    beta = [0]
    for x in b:
        beta.append(beta[-1] - 2 * x)
    lo = min(beta)
    beta = [v - lo for v in beta]
    if any(v not in (0, 2) for v in beta):
        raise CurveError("not a round curve system")
    intervals = []
    j = 0
    while j < len(beta):
        if beta[j] == 2:
            k = j
            while k + 1 < len(beta) and beta[k + 1] == 2:
                k += 1
            intervals.append((j + 1, k + 2))
            j = k + 1
        else:
            j += 1
    return CurveSystem(n, tuple(intervals))


def _pos(x: int) -> int:
    return x if x > 0 else 0


def _neg(x: int) -> int:
    return x if x < 0 else 0


def _first(eps: int, a: int, b: int) -> tuple[int, int]:
    # eps = -1 is sigma_1, eps = +1 its inverse
    if eps > 0:
        nb = a + _pos(b)
        return -b + _pos(nb), nb
    nb = -a + _pos(b)
    return b - _pos(nb), nb


def _middle(eps: int, aL: int, bL: int, aR: int, bR: int) -> tuple[int, int, int, int]:
    if eps > 0:
        c = aL - _neg(bL) - aR + _pos(bR)
        return (
            aL + _pos(bL) + _pos(_pos(bR) - c),
            bR - _pos(c),
            aR + _neg(bR) + _neg(_neg(bL) + c),
            bL + _pos(c),
        )
    d = aL + _neg(bL) - aR - _pos(bR)
    return (
        aL - _pos(bL) - _pos(_pos(bR) + d),
        bR + _neg(d),
        aR - _neg(bR) - _neg(_neg(bL) - d),
        bL - _neg(d),
    )


def _act(letter: int, a: list[int], b: list[int], n: int) -> None:
    i = abs(letter)
    eps = 1 if letter > 0 else -1
    if i == 1:
        a[0], b[0] = _first(-eps, a[0], b[0])
    elif i == n - 1:
        # mirror the disc left to right, which negates and reverses coordinates
        ra, rb = _first(-eps, -a[-1], -b[-1])
        a[-1], b[-1] = -ra, -rb
    else:
        j = i - 2
        a[j], b[j], a[j + 1], b[j + 1] = _middle(eps, a[j], b[j], a[j + 1], b[j + 1])


def apply_braid(w: BraidWord, coords: Sequence[int]) -> tuple[int, ...]:
    n = w.n
    coords = tuple(coords)
    if len(coords) != max(2 * n - 4, 0):
        raise BraidError(f"expected {2 * n - 4} coordinates for {n} strands, got {len(coords)}")
    if n < 3:
        return coords
    a = list(coords[: n - 2])
    b = list(coords[n - 2 :])
    for x in w.letters:
        _act(x, a, b, n)
    return tuple(a + b)


def preserves(w: BraidWord, C: CurveSystem) -> bool:
    if w.n != C.n:
        raise BraidError(f"strand count mismatch: braid {w.n}, curves {C.n}")
    v = lamination_coords(C)
    return apply_braid(w, v) == v
