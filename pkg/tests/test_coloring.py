"""Colorings, integer sets, and the run-length codec."""

from __future__ import annotations

import random

import pytest

from diam_ramsey import (
    Coloring,
    ColoringParseError,
    IntSet,
    NotEnoughElementsError,
    diam,
    first_range,
    format_run_string,
    last_range,
    nth_first,
    nth_last,
    parse_run_string,
    precedes,
)


# ======================================================================
# Coloring basics
# ======================================================================

def test_coloring_basics() -> None:
    c = Coloring([0, 1, 1, 0, 2], 3)
    assert c.length == 5
    assert len(c) == 5
    assert c.num_colors == 3
    assert c.digits == (0, 1, 1, 0, 2)
    assert [c.color_at(p) for p in range(1, 6)] == [0, 1, 1, 0, 2]
    assert list(c) == [0, 1, 1, 0, 2]


def test_coloring_validation() -> None:
    with pytest.raises(ValueError):
        Coloring([0, 1, 2], 2)  # digit out of range
    with pytest.raises(ValueError):
        Coloring([0, 1], 1)
    with pytest.raises(ValueError):
        Coloring([], 2)
    c = Coloring([0], 2)
    with pytest.raises(IndexError):
        c.color_at(0)  # positions are 1-based
    with pytest.raises(IndexError):
        c.color_at(2)


def test_positions_and_counts() -> None:
    c = parse_run_string("0^210^3", 2)  # 001000
    assert c.positions_of(0) == (1, 2, 4, 5, 6)
    assert c.positions_of(1) == (3,)
    assert c.count_in(0, 1, 6) == 5
    assert c.count_in(1, 1, 2) == 0
    assert c.count_in(0, 4, 4) == 1


def test_extended_is_a_new_coloring() -> None:
    c = Coloring([0, 1], 2)
    d = c.extended(0)
    assert d.digits == (0, 1, 0)
    assert c.digits == (0, 1)
    assert d.num_colors == 2


def test_coloring_equality_and_hash() -> None:
    a = Coloring([0, 1, 0], 2)
    b = parse_run_string("010", 2)
    assert a == b
    assert hash(a) == hash(b)
    assert a != Coloring([0, 1, 0], 3)  # same digits, different palette
    assert len({a, b}) == 1


def test_coloring_repr_uses_run_string() -> None:
    assert "0^210^3" in repr(parse_run_string("0^210^3", 2))


# ======================================================================
# IntSet, diam, precedes
# ======================================================================

def test_intset_invariants() -> None:
    s = IntSet([4, 1, 2])
    assert s.elements == (1, 2, 4)
    assert s.min == 1 and s.max == 4
    assert 2 in s and 3 not in s
    assert len(s) == 3
    with pytest.raises(ValueError):
        IntSet([])
    with pytest.raises(ValueError):
        IntSet([0, 1])  # positions start at 1
    with pytest.raises(ValueError):
        IntSet([2, 2])


def test_diam_and_precedes() -> None:
    assert diam(IntSet([3, 7, 5])) == 4
    assert diam([10]) == 0
    assert precedes(IntSet([1, 2]), IntSet([3, 9]))
    assert not precedes([1, 5], [4, 9])
    assert not precedes([1, 3], [3, 5])


# ======================================================================
# run-length codec
# ======================================================================

def test_parse_glossary_example() -> None:
    # 0^210^3 denotes 001000: the exponent stops at the color digit 1.
    assert parse_run_string("0^210^3", 2).digits == (0, 0, 1, 0, 0, 0)
    assert parse_run_string("0^210^3").digits == (0, 0, 1, 0, 0, 0)


def test_parse_bare_exponent_swallows_non_colors() -> None:
    # With two colors the digit 2 cannot start a run, so 0^12 is twelve 0s.
    assert parse_run_string("0^12", 2).digits == (0,) * 12
    # Without a declared palette the 2 reads as a color.
    c = parse_run_string("0^12")
    assert c.digits == (0, 2) and c.num_colors == 3


def test_parse_braced_exponent() -> None:
    assert parse_run_string("0^{21}", 2).digits == (0,) * 21
    assert parse_run_string("1^{2}0", 2).digits == (1, 1, 0)


def test_parse_whitespace_and_inference() -> None:
    assert parse_run_string(" 0^2 1 0^3 ", 2).digits == (0, 0, 1, 0, 0, 0)
    assert parse_run_string("01").num_colors == 2
    assert parse_run_string("012").num_colors == 3


def test_parse_errors_carry_token_and_offset() -> None:
    with pytest.raises(ColoringParseError) as exc:
        parse_run_string("0^0", 2)
    assert exc.value.token == "0^0"
    assert exc.value.offset == 0

    with pytest.raises(ColoringParseError) as exc:
        parse_run_string("01x", 2)
    assert exc.value.token == "x"
    assert exc.value.offset == 2

    with pytest.raises(ColoringParseError):
        parse_run_string("", 2)
    with pytest.raises(ColoringParseError):
        parse_run_string("0^", 2)
    with pytest.raises(ColoringParseError):
        parse_run_string("0^{", 2)
    with pytest.raises(ColoringParseError):
        parse_run_string("0^{}", 2)
    with pytest.raises(ColoringParseError):
        parse_run_string("3", 2)  # digit out of declared range
    with pytest.raises(ColoringParseError):
        parse_run_string("01", 12)  # codec palette cap


def test_format_maximal_runs() -> None:
    assert format_run_string(Coloring([0, 0, 1, 0, 0, 0], 2)) == "0^210^3"
    assert format_run_string(Coloring([0, 1, 0], 2)) == "010"
    assert format_run_string(Coloring([1] * 13, 2)) == "1^{13}"


def test_codec_roundtrip_random() -> None:
    rng = random.Random(1734)
    for _ in range(300):
        r = rng.choice([2, 2, 3, 4, 10])
        n = rng.randrange(1, 60)
        c = Coloring([rng.randrange(r) for _ in range(n)], r)
        s = format_run_string(c)
        assert parse_run_string(s, r) == c
        # inference agrees whenever every color is actually used
        if len(set(c.digits)) == r or (r == 2 and max(c.digits, default=0) <= 1):
            assert parse_run_string(s) == c


# ======================================================================
# element selection inside intervals
# ======================================================================

def test_nth_first_and_last() -> None:
    c = parse_run_string("0^210^3", 2)  # 001000
    assert nth_first(c, 0, (1, 6), 1) == 1
    assert nth_first(c, 0, (1, 6), 3) == 4
    assert nth_first(c, 1, (1, 6), 1) == 3
    assert nth_last(c, 0, (1, 6), 1) == 6
    assert nth_last(c, 0, (2, 5), 2) == 4


def test_first_and_last_range() -> None:
    c = parse_run_string("0^210^3", 2)
    assert first_range(c, 0, (1, 6), 1, 2) == IntSet([1, 2])
    assert first_range(c, 0, (1, 6), 2, 4) == IntSet([2, 4, 5])
    assert last_range(c, 0, (1, 6), 1, 3) == IntSet([4, 5, 6])


def test_selection_errors_report_available() -> None:
    c = parse_run_string("0^210^3", 2)
    with pytest.raises(NotEnoughElementsError) as exc:
        nth_first(c, 1, (1, 6), 2)
    assert exc.value.available == 1
    with pytest.raises(NotEnoughElementsError) as exc:
        first_range(c, 0, (1, 6), 1, 6)
    assert exc.value.available == 5
    with pytest.raises(ValueError):
        nth_first(c, 0, (0, 6), 1)  # interval leaves [1, N]
    with pytest.raises(ValueError):
        nth_first(c, 2, (1, 6), 1)  # color out of range


def test_selection_against_bruteforce() -> None:
    rng = random.Random(99)
    for _ in range(200):
        n = rng.randrange(1, 25)
        c = Coloring([rng.randrange(2) for _ in range(n)], 2)
        lo = rng.randrange(1, n + 1)
        hi = rng.randrange(lo, n + 1)
        color = rng.randrange(2)
        ref = [p for p in range(lo, hi + 1) if c.color_at(p) == color]
        i = rng.randrange(1, 5)
        if i <= len(ref):
            assert nth_first(c, color, (lo, hi), i) == ref[i - 1]
            assert nth_last(c, color, (lo, hi), i) == ref[-i]
        else:
            with pytest.raises(NotEnoughElementsError):
                nth_first(c, color, (lo, hi), i)
