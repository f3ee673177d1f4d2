import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from certoset.dyadic import Dyadic, pow2
from certoset.real import creal_from_dyadic, creal_from_fraction, limit, sub, abs_
from certoset.space import (
    Point,
    cantor_pair,
    cantor_unpair,
    dense_index,
    dense_index_near,
    dense_point,
    euclidean_space,
    max_norm_dist,
    point_from_dyadics,
    point_limit,
    point_mid_ints,
    unzigzag,
    zigzag,
)

from helpers import assert_creal_near, frac


def pt(*vals):
    return point_from_dyadics([Dyadic.parse(str(v)) for v in vals])


def test_max_norm_examples():
    assert_creal_near(max_norm_dist(pt(0, 0), pt(1, 0)), Fraction(1), 12)
    assert_creal_near(max_norm_dist(pt(0, 0), pt(2, 0)), Fraction(2), 12)
    assert_creal_near(max_norm_dist(pt(2, 0), pt(1, 1)), Fraction(1), 12)


def test_dimension_mismatch():
    with pytest.raises(ValueError):
        max_norm_dist(pt(0, 0), pt(1, 2, 3))


def test_metric_axioms_on_dyadic_samples():
    rng = random.Random(3)
    for _ in range(40):
        coords = [Dyadic(rng.randint(-32, 32), rng.randint(-4, 0)) for _ in range(6)]
        x, y, z = (point_from_dyadics(coords[i : i + 2]) for i in (0, 2, 4))
        dxy = max_norm_dist(x, y)
        dyx = max_norm_dist(y, x)
        exact = max(abs(frac(a) - frac(b)) for a, b in zip(coords[0:2], coords[2:4]))
        # d(x,y) = d(y,x) as identical intervals; exact on dyadic inputs
        ivx, ivy = dxy.approx(10), dyx.approx(10)
        assert ivx.lo == ivy.lo and ivx.hi == ivy.hi
        assert ivx.lo.as_fraction() == exact  # width zero on exact inputs
        # identity: d(x,x) = 0 exactly
        assert max_norm_dist(x, x).approx(8).hi.is_zero()
        # triangle inequality via interval bounds
        dxz = max_norm_dist(x, z).approx(12)
        dzy = max_norm_dist(z, y).approx(12)
        assert ivx.lo.as_fraction() <= (dxz.hi + dzy.hi).as_fraction()


@given(st.integers(0, 10**6))
def test_cantor_pair_round_trip(z):
    a, b = cantor_unpair(z)
    assert cantor_pair(a, b) == z


@given(st.integers(-(10**6), 10**6))
def test_zigzag_round_trip(n):
    assert unzigzag(zigzag(n)) == n


@given(st.integers(0, 10**5), st.integers(1, 3))
def test_dense_enumeration_invertible(i, dim):
    p = dense_point(i, dim)
    coords = tuple(c.exact for c in p.coords)
    grid = max(0, max(-d.e for d in coords))
    ints = [d.scaled_int(-grid) for d in coords]
    assert dense_index(grid, ints) <= cantor_pair(grid, 0) + 10**30  # sanity: computable
    # round trip through the inverse at that grid
    j = dense_index(grid, ints)
    q = dense_point(j, dim)
    assert all(a.exact == b for a, b in zip(q.coords, coords))


def test_enumeration_hits_origin_and_half_half():
    i0 = dense_index(0, [0, 0])
    p = dense_point(i0, 2)
    assert all(c.exact.is_zero() for c in p.coords)
    i_half = dense_index(1, [1, 1])
    q = dense_point(i_half, 2)
    assert all(c.exact == Dyadic(1, -1) for c in q.coords)


def test_density_witness_by_grid_inversion():
    rng = random.Random(5)
    for _ in range(20):
        target = tuple(Dyadic(rng.randint(-64, 64), rng.randint(-6, 0)) for _ in range(2))
        for p in range(0, 13):
            i = dense_index_near(target, p)
            d = dense_point(i, 2)
            err = max(abs(frac(c.exact) - frac(t)) for c, t in zip(d.coords, target))
            assert err <= Fraction(1, 2**p)


def test_first_indices_cover_unit_cell():
    # enumeration order sanity: the first 1000 indices land at least two
    # distinct points in [-1, 1]^2 at grid exponent 1
    inside = set()
    for i in range(1000):
        p = dense_point(i, 2)
        coords = [c.exact for c in p.coords]
        if all(abs(c) <= Dyadic(1) for c in coords):
            inside.add(tuple(coords))
    assert len(inside) >= 2


def test_euclidean_space_record():
    space = euclidean_space(2)
    assert space.dimension == 2
    d = space.distance(space.dense(0), space.dense(0))
    assert d.approx(6).hi.is_zero()
    with pytest.raises(ValueError):
        euclidean_space(0)


def test_point_limit_constant():
    p = pt("1/2", "-3/4")
    q = point_limit(lambda n: p, 2)
    assert_creal_near(q.coords[0], Fraction(1, 2), 14)
    assert_creal_near(q.coords[1], Fraction(-3, 4), 14)


def test_point_limit_geometric():
    def seq(n):
        return point_from_dyadics([Dyadic(1) - pow2(-n), Dyadic(0)])

    q = point_limit(seq, 2)
    assert_creal_near(q.coords[0], Fraction(1), 16)
    assert_creal_near(q.coords[1], Fraction(0), 16)
    # d(limit, f(n)) <= 2^-n at sampled n
    for n in (1, 4, 8):
        gap = max_norm_dist(q, seq(n))
        assert gap.approx(n + 6).lo.as_fraction() <= Fraction(1, 2**n)


def test_point_limit_rational_target():
    # interpolate toward (1/3, 2/3) at rate 2^-n
    tx, ty = creal_from_fraction(Fraction(1, 3)), creal_from_fraction(Fraction(2, 3))

    def seq(n):
        off = creal_from_dyadic(pow2(-n))
        return Point([sub(tx, off), sub(ty, off)])

    q = point_limit(seq, 2)
    assert_creal_near(q.coords[0], Fraction(1, 3), 14)
    assert_creal_near(q.coords[1], Fraction(2, 3), 14)


def test_point_mid_ints_exactness():
    p = pt("3/4", "-1/2")
    mids, err = point_mid_ints(p, 4)
    assert mids == (12, -8)
    assert err.is_zero()
    q = Point([creal_from_fraction(Fraction(1, 3)), creal_from_dyadic(Dyadic(0))])
    mids, err = point_mid_ints(q, 6)
    assert abs(Fraction(mids[0], 64) - Fraction(1, 3)) <= err.as_fraction()
