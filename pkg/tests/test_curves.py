from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from braidroot.braid import BraidError, BraidWord, inverse, multiply, parse_word
from braidroot.curves import (
    CurveError,
    CurveSystem,
    apply_braid,
    decode_coords,
    lamination_coords,
    make_curves,
    parse_curves,
    preserves,
)

from oracles import random_word, strand_images


def W(text, n):
    return parse_word(text, n)


def round_systems(n_min=3, n_max=9):
    """Random valid round curve systems."""

    def build(n, cuts):
        intervals, p = [], 1
        for size in cuts:
            if p + size - 1 > n:
                break
            if size >= 2:
                intervals.append((p, p + size - 1))
            p += size
        intervals = [iv for iv in intervals if iv[1] - iv[0] + 1 <= n - 1]
        return CurveSystem(n, tuple(intervals))

    return st.integers(n_min, n_max).flatmap(
        lambda n: st.lists(st.integers(1, n - 1), max_size=n).map(lambda cuts: build(n, cuts))
    )


def coord_vectors(n_min=3, n_max=7, bound=30):
    return st.integers(n_min, n_max).flatmap(
        lambda n: st.tuples(st.just(n), st.lists(st.integers(-bound, bound), min_size=2 * n - 4, max_size=2 * n - 4))
    )


# -- construction and text form


def test_make_curves_examples():
    C = make_curves(4, [[1, 2]])
    assert C.intervals == ((1, 2),) and len(C) == 1
    assert len(make_curves(6, [[1, 2], [3, 4]])) == 2
    with pytest.raises(CurveError):
        make_curves(3, [[1, 3]])


@pytest.mark.parametrize(
    "n, intervals",
    [(4, [[1, 1]]), (4, [[0, 2]]), (4, [[3, 5]]), (6, [[1, 3], [3, 4]]), (5, [[2, 1]])],
)
def test_make_curves_rejects(n, intervals):
    with pytest.raises(CurveError):
        make_curves(n, intervals)


def test_text_form():
    C = parse_curves("n=6; [3-4],[1-2]")
    assert C.intervals == ((1, 2), (3, 4))
    assert str(C) == "n=6; [1-2],[3-4]"
    assert parse_curves("n=6; [1..2]") == make_curves(6, [[1, 2]])
    assert parse_curves("n=5;") == CurveSystem(5, ())
    with pytest.raises(CurveError):
        parse_curves("six; [1-2]")
    with pytest.raises(CurveError):
        parse_curves("n=6; [1-2] junk")


@given(round_systems())
def test_text_roundtrip(C):
    assert parse_curves(str(C)) == C


def test_blocks_include_free_punctures():
    assert make_curves(6, [[2, 3], [5, 6]]).blocks() == [(1, 1), (2, 3), (4, 4), (5, 6)]


# -- coordinates


def test_coordinate_examples():
    assert lamination_coords(CurveSystem(5, ())) == (0,) * 6
    C = make_curves(3, [[1, 2]])
    assert decode_coords(3, lamination_coords(C)) == C
    assert apply_braid(W("1", 3), lamination_coords(C)) == lamination_coords(C)


@given(round_systems())
def test_decode_inverts_encode(C):
    assert decode_coords(C.n, lamination_coords(C)) == C


@given(round_systems(), round_systems())
def test_encoding_is_injective(C, D):
    if C.n == D.n and C != D:
        assert lamination_coords(C) != lamination_coords(D)


def test_decode_rejects_non_round_vectors():
    with pytest.raises(CurveError):
        decode_coords(4, (1, 0, 0, 0))
    with pytest.raises(CurveError):
        decode_coords(4, (0, 0))


@given(round_systems())
def test_coordinates_add_over_components(C):
    total = [0] * max(2 * C.n - 4, 0)
    for iv in C.intervals:
        total = [x + y for x, y in zip(total, lamination_coords(CurveSystem(C.n, (iv,))))]
    assert tuple(total) == lamination_coords(C)


# -- action


@pytest.mark.parametrize("n", range(3, 9))
def test_generators_fix_a_round_curve_unless_crossing_its_boundary(n):
    # sigma_i moves circle [a..b] exactly when it swaps a puncture inside with one outside
    for a in range(1, n + 1):
        for b in range(a + 1, n + 1):
            if b - a + 1 > n - 1:
                continue
            v = lamination_coords(make_curves(n, [[a, b]]))
            for i in range(1, n):
                for e in (1, -1):
                    fixed = apply_braid(BraidWord(n, (i * e,)), v) == v
                    assert fixed == (i not in (a - 1, b))


@settings(max_examples=300)
@given(coord_vectors(), st.integers(0, 2**32))
def test_action_is_compatible_with_products(nv, seed):
    n, v = nv
    rng = random.Random(seed)
    x, y = random_word(rng, n, rng.randint(0, 6)), random_word(rng, n, rng.randint(0, 6))
    assert apply_braid(multiply(x, y), v) == apply_braid(y, apply_braid(x, v))
    assert apply_braid(multiply(x, inverse(x)), v) == tuple(v)
    assert apply_braid(inverse(x), apply_braid(x, v)) == tuple(v)


@settings(max_examples=200)
@given(coord_vectors())
def test_action_respects_braid_relations(nv):
    n, v = nv
    v = tuple(v)
    for i in range(1, n - 1):
        lhs = apply_braid(BraidWord(n, (i, i + 1, i)), v)
        assert lhs == apply_braid(BraidWord(n, (i + 1, i, i + 1)), v)
    for i in range(1, n):
        for j in range(i + 2, n):
            assert apply_braid(BraidWord(n, (i, j)), v) == apply_braid(BraidWord(n, (j, i)), v)


def test_identity_action_and_length_check():
    v = (1, -2, 3, 0)
    assert apply_braid(BraidWord.identity(4), v) == v
    with pytest.raises(BraidError):
        apply_braid(BraidWord.identity(4), (1, 2))


def test_preserves_examples():
    C = make_curves(3, [[1, 2]])
    assert preserves(BraidWord.identity(3), C)
    assert preserves(W("1", 3), C)
    assert not preserves(W("2", 3), C)
    with pytest.raises(BraidError):
        preserves(W("1", 4), C)


def test_preserves_block_swaps():
    C = make_curves(4, [[1, 2], [3, 4]])
    # s2 s1 s3 s2 exchanges the two pairs rigidly
    assert preserves(W("2 1 3 2", 4), C)
    assert not preserves(W("2 1 3", 4), C)


@settings(max_examples=300)
@given(round_systems(n_min=3, n_max=7), st.integers(0, 2**32))
def test_preserved_systems_have_block_permuting_strands(C, seed):
    rng = random.Random(seed)
    w = random_word(rng, C.n, rng.randint(0, 5))
    if not preserves(w, C):
        return
    images = strand_images(w)
    targets = {frozenset(range(a, b + 1)) for a, b in C.intervals}
    for a, b in C.intervals:
        assert frozenset(images[p - 1] for p in range(a, b + 1)) in targets
    assert preserves(inverse(w), C)
