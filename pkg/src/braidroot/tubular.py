"""
Braids that preserve a round curve system, split into a tubular braid and
interior braids.

Collapsing every circle of a curve system C to a single fat puncture turns the
n-punctured disc into an m-punctured one, where m counts circles plus free
punctures. Blocks are numbered left to right, so tubular strand j is the j-th
block of ``C.blocks()``. A braid preserving C is then a tubular braid on m
strands together with one interior braid per circle: the interior at circle u
is what happens inside the tube that starts at u, whatever circle it ends at.

``embed`` rebuilds the n-strand braid by playing every interior braid at its
starting position and then cabling the tubular braid, each fat crossing
becoming the positive (or negative) permutation braid that moves one block of
parallel strands across the next. Blocks move rigidly, so interior braids
slide along their tubes unchanged and ``embed`` is a homomorphism.

Circle indices are 0-based in the Python API and 1-based in the text form.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

from .braid import BraidError, BraidWord, format_word, inverse, multiply, parse_word, shift, underlying_permutation
from .curves import CurveSystem, parse_curves

__all__ = [
    "DecompositionError",
    "ExtractionError",
    "TubularDecomposition",
    "OrbitStructure",
    "make_decomposition",
    "identity_decomposition",
    "curves_from_sizes",
    "fat_crossing",
    "cable",
    "embed",
    "dec_product",
    "dec_inverse",
    "dec_power",
    "orbits",
    "conjugate_by_tubular",
    "extract",
    "format_decomposition",
    "parse_decomposition",
]


class DecompositionError(ValueError):
    pass


class ExtractionError(DecompositionError):
    """``index`` is the 1-based position of the offending letter, when there is one."""

    def __init__(self, message: str, index: int | None = None):
        super().__init__(message)
        self.index = index


@dataclass(frozen=True)
class TubularDecomposition:
    n: int
    curves: CurveSystem
    tubular: BraidWord
    interiors: tuple[BraidWord, ...]

    def __post_init__(self):
        object.__setattr__(self, "interiors", tuple(self.interiors))
        C = self.curves
        if C.n != self.n:
            raise DecompositionError(f"curve system has {C.n} punctures, expected {self.n}")
        sizes = self.sizes
        if self.tubular.n != len(sizes):
            raise DecompositionError(
                f"tubular braid has {self.tubular.n} strands, expected {len(sizes)}"
            )
        if len(self.interiors) != len(C.intervals):
            raise DecompositionError(
                f"{len(self.interiors)} interior braids for {len(C.intervals)} circles"
            )
        for u, ((a, b), w) in enumerate(zip(C.intervals, self.interiors)):
            if w.n != b - a + 1:
                raise DecompositionError(
                    f"interior {u + 1} has {w.n} strands, circle [{a}-{b}] holds {b - a + 1}"
                )
        perm = underlying_permutation(self.tubular)
        for j, size in enumerate(sizes, start=1):
            if sizes[perm(j) - 1] != size:
                raise DecompositionError(
                    f"tubular braid sends block {j} (size {size}) to block {perm(j)} "
                    f"(size {sizes[perm(j) - 1]})"
                )

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(b - a + 1 for a, b in self.curves.blocks())

    @property
    def m(self) -> int:
        return len(self.sizes)

    def circle_blocks(self) -> list[int]:
        """Block index (0-based) of each circle, in circle order."""
        return [j for j, s in enumerate(self.sizes) if s > 1]

    def __str__(self) -> str:
        return format_decomposition(self)


@dataclass(frozen=True)
class OrbitStructure:
    """Cycles of circles under the tubular permutation, as 0-based circle indices.

    Each cycle starts at its smallest circle and lists circles in the order the
    braid carries them; the final entry is the orbit's last tube.
    """

    orbits: tuple[tuple[int, ...], ...]

    @property
    def lengths(self) -> tuple[int, ...]:
        return tuple(len(o) for o in self.orbits)

    def last(self, i: int) -> int:
        return self.orbits[i][-1]

    def orbit_of(self, u: int) -> int:
        for i, o in enumerate(self.orbits):
            if u in o:
                return i
        raise KeyError(u)


def make_decomposition(
    n: int, curves: CurveSystem, tubular: BraidWord, interiors: Sequence[BraidWord]
) -> TubularDecomposition:
    return TubularDecomposition(n, curves, tubular, tuple(interiors))


def identity_decomposition(curves: CurveSystem) -> TubularDecomposition:
    blocks = curves.blocks()
    return TubularDecomposition(
        curves.n,
        curves,
        BraidWord.identity(len(blocks)),
        tuple(BraidWord.identity(b - a + 1) for a, b in curves.intervals),
    )


def curves_from_sizes(sizes: Sequence[int]) -> CurveSystem:
    intervals = []
    p = 1
    for s in sizes:
        if s > 1:
            intervals.append((p, p + s - 1))
        p += s
    return CurveSystem(p - 1, tuple(intervals))


def fat_crossing(p: int, q: int, offset: int, sign: int) -> list[int]:
    """Letters moving a block of p strands across the q strands to its right.

    ``sign=+1`` gives the positive permutation braid, ``sign=-1`` the inverse of
    the positive crossing with the roles of the blocks exchanged, so that in both
    cases the blocks start as (p, q) and finish as (q, p).
    """
    if sign > 0:
        return [offset + i + j for i in range(p, 0, -1) for j in range(q)]
    forward = fat_crossing(q, p, offset, 1)
    return [-x for x in reversed(forward)]


def cable(tubular: BraidWord, sizes: Sequence[int]) -> tuple[BraidWord, tuple[int, ...]]:
    """Cable ``tubular`` with the given block sizes; returns the word and final sizes."""
    sizes = list(sizes)
    if tubular.n != len(sizes):
        raise BraidError(f"tubular braid has {tubular.n} strands, layout has {len(sizes)} blocks")
    n = sum(sizes)
    letters: list[int] = []
    for x in tubular.letters:
        j = abs(x) - 1
        offset = sum(sizes[:j])
        letters.extend(fat_crossing(sizes[j], sizes[j + 1], offset, 1 if x > 0 else -1))
        sizes[j], sizes[j + 1] = sizes[j + 1], sizes[j]
    return BraidWord(n, tuple(letters)), tuple(sizes)


def embed(d: TubularDecomposition) -> BraidWord:
    letters: list[int] = []
    for (a, _), w in zip(d.curves.intervals, d.interiors):
        letters.extend(shift(w, a - 1, d.n).letters)
    cabled, _ = cable(d.tubular, d.sizes)
    return BraidWord(d.n, tuple(letters) + cabled.letters)


def _circle_map(d: TubularDecomposition) -> list[int]:
    """Circle index u -> circle index its tube ends at."""
    blocks = d.circle_blocks()
    index = {j: u for u, j in enumerate(blocks)}
    perm = underlying_permutation(d.tubular)
    return [index[perm(j + 1) - 1] for j in blocks]


def _check_compatible(d1: TubularDecomposition, d2: TubularDecomposition) -> None:
    if d1.curves != d2.curves:
        raise DecompositionError(f"curve systems differ: {d1.curves} vs {d2.curves}")


def dec_product(d1: TubularDecomposition, d2: TubularDecomposition) -> TubularDecomposition:
    _check_compatible(d1, d2)
    step = _circle_map(d1)
    interiors = tuple(d1.interiors[u] * d2.interiors[step[u]] for u in range(len(step)))
    return TubularDecomposition(d1.n, d1.curves, d1.tubular * d2.tubular, interiors)


def dec_inverse(d: TubularDecomposition) -> TubularDecomposition:
    step = _circle_map(d)
    interiors: list[BraidWord] = [None] * len(step)  # type: ignore[list-item]
    for u, v in enumerate(step):
        interiors[v] = inverse(d.interiors[u])
    return TubularDecomposition(d.n, d.curves, inverse(d.tubular), tuple(interiors))


def dec_power(d: TubularDecomposition, k: int) -> TubularDecomposition:
    base = d if k >= 0 else dec_inverse(d)
    result = identity_decomposition(d.curves)
    for _ in range(abs(k)):
        result = dec_product(result, base)
    return result


def orbits(d: TubularDecomposition) -> OrbitStructure:
    step = _circle_map(d)
    seen: set[int] = set()
    out = []
    for u in range(len(step)):
        if u in seen:
            continue
        cyc = [u]
        seen.add(u)
        v = step[u]
        while v != u:
            cyc.append(v)
            seen.add(v)
            v = step[v]
        out.append(tuple(cyc))
    return OrbitStructure(tuple(out))


def conjugate_by_tubular(
    d: TubularDecomposition, z: BraidWord
) -> tuple[TubularDecomposition, BraidWord]:
    """Conjugate by the cabling of ``z`` with trivial interiors.

    Returns ``(d2, lift)`` with ``lift^-1 * embed(d) * lift == embed(d2)``. The
    curve system of ``d2`` is the layout ``z`` carries C to, which can differ
    from C when ``z`` permutes blocks of different sizes.
    """
    lift, final = cable(z, d.sizes)
    target = curves_from_sizes(final)
    perm = underlying_permutation(z)
    new_blocks = [j for j, s in enumerate(final) if s > 1]
    index = {j: u for u, j in enumerate(new_blocks)}
    interiors: list[BraidWord] = [None] * len(new_blocks)  # type: ignore[list-item]
    for u, j in enumerate(d.circle_blocks()):
        interiors[index[perm(j + 1) - 1]] = d.interiors[u]
    tub = multiply(inverse(z), d.tubular, z)
    return TubularDecomposition(d.n, target, tub, tuple(interiors)), lift


def _contiguous(at: list[tuple[int, int]], sizes: list[int]) -> bool:
    # at[pos] = (source block, index inside block)
    pos = 0
    while pos < len(at):
        blk, k = at[pos]
        if k != 0:
            return False
        for t in range(1, sizes[blk]):
            if pos + t >= len(at) or at[pos + t] != (blk, t):
                return False
        pos += sizes[blk]
    return True


def _layout(at: list[tuple[int, int]], sizes: list[int]) -> list[int]:
    """Source blocks in left-to-right order, assuming the layout is contiguous."""
    out = []
    pos = 0
    while pos < len(at):
        blk = at[pos][0]
        out.append(blk)
        pos += sizes[blk]
    return out


def extract(w: BraidWord, C: CurveSystem) -> TubularDecomposition:
    """Recover the decomposition of a tube-respecting word over C.

    Letters inside a tube are credited to the circle the tube started at. A
    letter crossing a block boundary opens a segment that runs until every tube
    is contiguous again; that segment must swap two adjacent blocks and equal
    the matching positive or negative fat crossing.
    """
    from .garside import equals

    if w.n != C.n:
        raise BraidError(f"strand count mismatch: braid {w.n}, curves {C.n}")
    blocks = C.blocks()
    sizes = [b - a + 1 for a, b in blocks]
    circle_of = {}
    for j, s in enumerate(sizes):
        if s > 1:
            circle_of[j] = len(circle_of)
    at = [(j, t) for j, s in enumerate(sizes) for t in range(s)]
    interiors: list[list[int]] = [[] for _ in circle_of]
    tubular: list[int] = []
    letters = w.letters
    k = 0
    while k < len(letters):
        x = letters[k]
        i = abs(x) - 1
        left, right = at[i], at[i + 1]
        if left[0] == right[0]:
            # labels track positions inside a tube, so an interior letter moves nothing
            interiors[circle_of[left[0]]].append(left[1] + 1 if x > 0 else -(left[1] + 1))
            k += 1
            continue
        before = _layout(at, sizes)
        start = k
        while True:
            y = letters[k]
            iy = abs(y) - 1
            at[iy], at[iy + 1] = at[iy + 1], at[iy]
            k += 1
            if _contiguous(at, sizes):
                break
            if k == len(letters):
                raise ExtractionError(
                    f"letter {start + 1} crosses a tube boundary and the crossing never closes",
                    start + 1,
                )
        after = _layout(at, sizes)
        diff = [j for j in range(len(before)) if before[j] != after[j]]
        if len(diff) != 2 or diff[1] != diff[0] + 1:
            raise ExtractionError(f"letter {start + 1} crosses a tube boundary", start + 1)
        j = diff[0]
        p, q = sizes[before[j]], sizes[before[j + 1]]
        offset = sum(sizes[b] for b in before[:j])
        segment = BraidWord(w.n, letters[start:k])
        for sign in (1, -1):
            if equals(segment, BraidWord(w.n, tuple(fat_crossing(p, q, offset, sign)))):
                tubular.append(sign * (j + 1))
                break
        else:
            raise ExtractionError(f"letter {start + 1} crosses a tube boundary", start + 1)
    final = [sizes[b] for b in _layout(at, sizes)]
    if final != sizes:
        raise ExtractionError("braid does not preserve the curve system")
    m = len(sizes)
    return TubularDecomposition(
        w.n,
        C,
        BraidWord(m, tuple(tubular)),
        tuple(BraidWord(sizes[j], tuple(interiors[u])) for j, u in circle_of.items()),
    )


def format_decomposition(d: TubularDecomposition) -> str:
    circles = ",".join(f"[{a}-{b}]" for a, b in d.curves.intervals)
    lines = [f"n={d.n}; C={circles};", f"tubular: {format_word(d.tubular)}"]
    for u, w in enumerate(d.interiors, start=1):
        lines.append(f"interior[{u}]: {format_word(w)}")
    return "\n".join(lines)


_INTERIOR = re.compile(r"^interior\[(\d+)\]\s*:\s*(.*)$")


def parse_decomposition(text: str) -> TubularDecomposition:
    """Inverse of :func:`format_decomposition`; missing interiors default to trivial."""
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    if not lines:
        raise DecompositionError("empty decomposition text")
    header = lines[0].replace("C=", "").rstrip(";")
    C = parse_curves(header)
    sizes = [b - a + 1 for a, b in C.blocks()]
    circle_sizes = [s for s in sizes if s > 1]
    tubular = BraidWord.identity(len(sizes))
    interiors = [BraidWord.identity(s) for s in circle_sizes]
    for ln in lines[1:]:
        if ln.startswith("tubular:"):
            tubular = parse_word(ln[len("tubular:") :], len(sizes))
            continue
        m = _INTERIOR.match(ln)
        if m is None:
            raise DecompositionError(f"cannot parse line {ln!r}")
        u = int(m.group(1))
        if not 1 <= u <= len(circle_sizes):
            raise DecompositionError(f"interior index {u} out of range")
        interiors[u - 1] = parse_word(m.group(2), circle_sizes[u - 1])
    return TubularDecomposition(C.n, C, tubular, tuple(interiors))
