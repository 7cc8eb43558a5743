from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import FULL_MASK, S, from_mask, interval_sets, ref_encode, ref_member, to_mask
from forcingext.dyadic import Dyadic, decode, encode
from forcingext.errors import ParseError
from forcingext.intervals import (
    EMPTY,
    FULL,
    IntervalSet,
    complement,
    contains_point,
    format_set,
    intersect,
    is_empty,
    is_subset,
    parse_set,
    symdiff,
    union,
    union_all,
)


@pytest.mark.parametrize("n, value", [(0, Fraction(0)), (5, Fraction(3, 8)), (8, Fraction(1, 16))])
def test_encode_examples(n, value):
    assert encode(n).to_fraction() == value


def test_encode_matches_enumeration():
    for n in range(5000):
        d = encode(n)
        assert d.to_fraction() == ref_encode(n)
        assert decode(d) == n


def test_decode_rejects_one():
    with pytest.raises(ValueError):
        decode(Dyadic(1, 0))


def test_dyadic_is_reduced():
    assert Dyadic.of(4, 3) == Dyadic(1, 1)
    with pytest.raises(ValueError):
        Dyadic(2, 2)


def test_operation_examples():
    assert union(S("[0,1/2)"), S("[1/2,1)")) == FULL
    assert complement(S("[1/4,3/4)")) == S("[0,1/4)u[3/4,1)")
    assert intersect(S("[0,1/2)"), S("[1/4,3/4)")) == S("[1/4,1/2)")
    assert is_subset(S("[1/4,1/2)"), S("[0,1/2)"))
    assert is_empty(intersect(S("[0,1/4)"), S("[1/2,1)")))
    # enc(2) = 1/4 sits on the open end
    assert not contains_point(S("[0,1/4)"), 2)
    assert symdiff(S("[0,1/2)"), S("[1/4,3/4)")) == S("[0,1/4)u[1/2,3/4)")


def test_equal_sets_share_representation():
    a = IntervalSet.from_intervals([(Fraction(1, 4), Fraction(1, 2)), (Fraction(0), Fraction(1, 4))])
    assert a == S("[0,1/2)")
    assert (a.exp, a.bounds) == (1, (0, 1))
    assert hash(a) == hash(S("[0/1,2/4)"))


def test_checked_constructor_rejects_bad_bounds():
    with pytest.raises(ValueError):
        IntervalSet(2, (3, 1))
    with pytest.raises(ValueError):
        IntervalSet(2, (0, 2))  # reducible
    with pytest.raises(ValueError):
        IntervalSet(1, (0, 3))
    with pytest.raises(ValueError):
        IntervalSet.cell(4, 2)


@settings(max_examples=300, deadline=None)
@given(interval_sets(), interval_sets())
def test_operations_match_bitmask_model(a, b):
    ma, mb = to_mask(a), to_mask(b)
    assert to_mask(a | b) == ma | mb
    assert to_mask(a & b) == ma & mb
    assert to_mask(a - b) == ma & ~mb
    assert to_mask(a ^ b) == ma ^ mb
    assert to_mask(~a) == FULL_MASK & ~ma
    assert (a <= b) == (ma & ~mb == 0)
    assert from_mask(ma) == a


@settings(max_examples=200, deadline=None)
@given(interval_sets(), interval_sets(), interval_sets())
def test_boolean_algebra_laws(a, b, c):
    assert a | (b & c) == (a | b) & (a | c)
    assert a & (b | c) == (a & b) | (a & c)
    assert ~(a | b) == ~a & ~b
    assert ~~a == a
    assert a | ~a == FULL and not (a & ~a)
    assert (a - b) == a & ~b


@settings(max_examples=200, deadline=None)
@given(interval_sets(max_exp=8))
def test_point_membership_agrees_with_real_intervals(a):
    for n in range(0, 2049, 7):
        assert (n in a) == ref_member(a, ref_encode(n))


@settings(max_examples=200, deadline=None)
@given(interval_sets())
def test_first_point_is_least_member(a):
    n = a.first_point()
    if not a:
        assert n is None
        return
    assert n in a
    assert not any(m in a for m in range(n))


@settings(max_examples=300, deadline=None)
@given(interval_sets(max_exp=10, max_intervals=6))
def test_print_parse_round_trip(a):
    assert parse_set(format_set(a)) == a


def test_parse_accepts_noncanonical_unions():
    assert parse_set("[1/2,1)u[0,1/2)") == FULL
    assert parse_set("[0/1,1/4)u[1/8,3/8)") == S("[0,3/8)")
    assert parse_set("{}") == EMPTY
    assert format_set(EMPTY) == "{}"


@pytest.mark.parametrize(
    "text, offset",
    [("[0,1/3)", 3), ("[0,1/2", 6), ("(0,1/2)", 0), ("[1/2,1/4)", 1), ("[0,1/2)v", 7), ("[3/2,1)", 1)],
)
def test_parse_errors_report_byte_offset(text, offset):
    with pytest.raises(ParseError) as info:
        parse_set(text)
    assert info.value.offset == offset


def test_parse_offset_counts_bytes():
    with pytest.raises(ParseError) as info:
        parse_set("[0,1/2)∪[1/2,1)")
    assert info.value.offset == 7
    with pytest.raises(ParseError) as info:
        parse_set("[0,1/2)ué")
    assert info.value.offset == 8


def test_components_and_fractions():
    a = S("[0,1/4)u[1/2,3/4)")
    assert a.component(Fraction(5, 8)) == S("[1/2,3/4)")
    assert a.contains_fraction(Fraction(1, 5))
    assert not a.contains_fraction(Fraction(1, 3))
    assert a.component_of_point(1) == S("[1/2,3/4)")
    with pytest.raises(ValueError):
        a.component(Fraction(1, 3))


def test_union_all_and_points():
    cells = [IntervalSet.cell(i, 3) for i in range(0, 8, 2)]
    u = union_all(cells)
    assert len(u) == 4
    assert list(u.points(8)) == [0, 1, 2, 3, 8]


@given(st.integers(0, 10**6))
def test_encode_decode_round_trip_large(n):
    assert decode(encode(n)) == n
