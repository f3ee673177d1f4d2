import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from certoset.dyadic import Dyadic, Interval, pow2

dyadics = st.builds(Dyadic, st.integers(-(2**40), 2**40), st.integers(-30, 30))


def test_canonical_form():
    d = Dyadic(12, 3)
    assert d.m == 3 and d.e == 5
    z = Dyadic(0, 17)
    assert z.m == 0 and z.e == 0


@given(dyadics, dyadics)
def test_arith_matches_fractions(a, b):
    fa, fb = a.as_fraction(), b.as_fraction()
    assert (a + b).as_fraction() == fa + fb
    assert (a - b).as_fraction() == fa - fb
    assert (a * b).as_fraction() == fa * fb
    assert (-a).as_fraction() == -fa
    assert abs(a).as_fraction() == abs(fa)
    assert (a < b) == (fa < fb)
    assert (a == b) == (fa == fb)


@given(dyadics)
def test_half_and_shift(a):
    assert a.half().as_fraction() == a.as_fraction() / 2
    assert a.shifted(4).as_fraction() == a.as_fraction() * 16


@given(dyadics, st.integers(-20, 20))
def test_directed_rounding(a, g):
    fa = a.as_fraction()
    grid = Fraction(2) ** g
    lo = a.floor_to_exp(g).as_fraction()
    hi = a.ceil_to_exp(g).as_fraction()
    assert lo <= fa <= hi
    assert lo % grid == 0 and hi % grid == 0
    assert hi - lo < 2 * grid
    mid = a.round_to_exp(g).as_fraction()
    assert abs(mid - fa) <= grid / 2


@given(dyadics)
def test_string_round_trips(a):
    assert Dyadic.parse(a.compact_str()) == a
    assert Dyadic.from_fraction(Fraction(a.decimal_str())) == a


def test_parse_forms():
    assert Dyadic.parse("3/4") == Dyadic(3, -2)
    assert Dyadic.parse("0.75") == Dyadic(3, -2)
    assert Dyadic.parse("-5*2^-3") == Dyadic(-5, -3)
    assert Dyadic.parse("12") == Dyadic(12)
    with pytest.raises(ValueError):
        Dyadic.parse("1/3")
    with pytest.raises(ValueError):
        Dyadic.parse("0.1")


def test_mag_exp():
    assert Dyadic(1).mag_exp() == 0
    assert Dyadic(3).mag_exp() == 2
    assert Dyadic(4).mag_exp() == 2
    assert Dyadic(1, -1).mag_exp() == -1
    assert Dyadic(3, -2).mag_exp() == 0


def test_scaled_int():
    assert Dyadic(3, -2).round_scaled_int(-4) == 12
    assert Dyadic(3, -2).scaled_int(-2) == 3
    with pytest.raises(ValueError):
        Dyadic(3, -2).scaled_int(-1)


@given(dyadics, dyadics, dyadics, dyadics)
def test_interval_mul_contains_products(a, b, c, d):
    lo1, hi1 = min(a, b), max(a, b)
    lo2, hi2 = min(c, d), max(c, d)
    iv = Interval(lo1, hi1) * Interval(lo2, hi2)
    rng = random.Random(0)
    for _ in range(8):
        t = Fraction(rng.randint(0, 16), 16)
        u = Fraction(rng.randint(0, 16), 16)
        x = lo1.as_fraction() + t * (hi1 - lo1).as_fraction()
        y = lo2.as_fraction() + u * (hi2 - lo2).as_fraction()
        assert iv.lo.as_fraction() <= x * y <= iv.hi.as_fraction()


def test_interval_trim_is_outward():
    iv = Interval(Dyadic(5, -4), Dyadic(7, -4))
    t = iv.trim(-2)
    assert t.lo <= iv.lo and t.hi >= iv.hi
    assert t.lo.e >= -2 and t.hi.e >= -2


def test_interval_intersect_refines():
    a = Interval(Dyadic(0), Dyadic(2))
    b = Interval(Dyadic(1), Dyadic(3))
    c = a.intersect(b)
    assert c.lo == Dyadic(1) and c.hi == Dyadic(2)
    with pytest.raises(RuntimeError):
        Interval(Dyadic(0), Dyadic(1)).intersect(Interval(Dyadic(2), Dyadic(3)))


def test_pow2():
    assert pow2(-3).as_fraction() == Fraction(1, 8)
    assert pow2(4).as_fraction() == 16
