import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ordgraph.ordinal import (OMEGA, ONE, ZERO, Ordinal, OrdinalError, OrdinalParseError, add, cmp,
                              divmod_omega, format, left_sub, mul, omega_pow, parse)

from oracles import flat, flat_add, flat_cmp, flat_mul_nat
from strategies import ordinals, small_ordinals

W = OMEGA


def test_golden_sum():
    a = parse("w^w*2+w*3+2")
    b = parse("w^w+w^3")
    assert format(add(a, b)) == "w^w*3+w^3"


@pytest.mark.parametrize("text,expected", [
    ("0", "0"), ("1+w", "w"), ("w+1", "w+1"), ("w^w*2+w*3+2", "w^w*2+w*3+2"),
    ("w^(w+1)*2", "w^(w+1)*2"), ("w^(w^w)", "w^(w^w)"), (" w ^ 2 * 3 ", "w^2*3"),
    ("2+3", "5"), ("w*2+w^2", "w^2"), ("w^1*1", "w"),
])
def test_parse_format(text, expected):
    assert format(parse(text)) == expected


@pytest.mark.parametrize("text,pos", [("w*0", 2), ("w+", 2), ("", 0), ("w^", 2), ("x", 0), ("w^(1", 4)])
def test_parse_errors(text, pos):
    with pytest.raises(OrdinalParseError) as info:
        parse(text)
    assert info.value.pos == pos


def test_noncommutative():
    assert add(ONE, W) == W
    assert add(W, ONE) == parse("w+1")


def test_cmp_examples():
    assert cmp(W, W) == "equal"
    assert cmp(parse("w*3+2"), parse("w^w")) == "less"
    assert cmp(parse("w+1"), W) == "greater"


def test_left_sub_examples():
    assert left_sub(W, parse("w*2")) == W
    assert left_sub(2, W) == W
    a = parse("w^2+3")
    assert left_sub(a, a) == ZERO
    with pytest.raises(OrdinalError):
        left_sub(parse("w+1"), W)


def test_mul_examples():
    assert mul(parse("w+1"), 2) == parse("w*2+1")
    assert mul(W, W) == parse("w^2")
    a = parse("w^3+w")
    assert mul(a, 0) == ZERO and mul(a, 1) == a
    assert mul(2, W) == W


def test_omega_pow_and_divmod():
    assert omega_pow(0) == ONE and omega_pow(1) == W and format(omega_pow(W)) == "w^w"
    assert divmod_omega(parse("w*3+2"), 1) == (3, Ordinal.nat(2))
    assert divmod_omega(5, 0) == (5, ZERO)
    assert divmod_omega(parse("w^2"), 1)[0] is None


# oracle cross-checks on ordinals below w^w

@given(small_ordinals(), small_ordinals())
def test_add_matches_flat_oracle(a, b):
    assert flat(add(a, b)) == flat_add(flat(a), flat(b))


@given(small_ordinals(), small_ordinals())
def test_cmp_matches_flat_oracle(a, b):
    assert cmp(a, b) == flat_cmp(flat(a), flat(b))


@given(small_ordinals(), st.integers(0, 6))
def test_mul_by_natural_is_repeated_addition(a, n):
    assert flat(mul(a, n)) == flat_mul_nat(flat(a), n)


# algebraic properties on hereditary ordinals

@given(ordinals())
def test_round_trip(a):
    assert parse(format(a)) == a


@given(ordinals(), ordinals(), ordinals())
def test_add_associative(a, b, c):
    assert add(add(a, b), c) == add(a, add(b, c))


@given(ordinals(), ordinals(), ordinals())
def test_add_left_cancellative_and_monotone(a, b, c):
    if add(a, b) == add(a, c):
        assert b == c
    if b < c:
        assert add(a, b) < add(a, c)


@given(ordinals())
def test_zero_identity(a):
    assert add(a, ZERO) == a == add(ZERO, a)


@given(ordinals(depth=1), ordinals(depth=1))
def test_absorption(a, b):
    if a < b:
        assert add(omega_pow(a), omega_pow(b)) == omega_pow(b)


@given(ordinals(), ordinals())
def test_left_sub_inverts_add(a, b):
    lo, hi = (a, b) if a <= b else (b, a)
    assert add(lo, left_sub(lo, hi)) == hi


@given(ordinals(), st.integers(0, 3))
def test_divmod_reconstruction(a, k):
    n, r = divmod_omega(a, k)
    if n is None:
        assert a >= omega_pow(k + 1)
    else:
        assert add(mul(omega_pow(k), n), r) == a and r < omega_pow(k)


@settings(max_examples=50)
@given(ordinals(depth=1), ordinals(depth=1), ordinals(depth=1))
def test_mul_distributes_left(a, b, c):
    assert mul(a, add(b, c)) == add(mul(a, b), mul(a, c))


@settings(max_examples=50)
@given(ordinals(depth=1), ordinals(depth=1), ordinals(depth=1))
def test_mul_associative(a, b, c):
    assert mul(mul(a, b), c) == mul(a, mul(b, c))


def test_ordinals_are_immutable():
    with pytest.raises(AttributeError):
        W.terms = ()
    with pytest.raises(OrdinalError):
        Ordinal([(ZERO, 1), (ONE, 1)])
