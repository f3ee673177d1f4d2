"""A small corpus of semi-decidable maps with base points.

Used by the documentation and the verification suite to exercise the
spying modulus of continuity on realistic membership tests.  Every map
fires on each of its base points within a modest effort.
"""

from __future__ import annotations

from typing import Callable

from .dyadic import Dyadic
from .kleenean import Sierpinski, sierpinski_and
from .opensets import Ball, OpenSet
from .real import creal_from_dyadic, lt_semidec
from .space import Point, max_norm_dist, point_from_dyadics


def _grid(k: int, spread: int, offset: Dyadic, step_exp: int) -> Dyadic:
    return Dyadic(2 * k - spread, step_exp) + offset


def _halfplane_map(bound: Dyadic) -> Callable[[Point], Sierpinski]:
    limit = creal_from_dyadic(bound)

    def f(y: Point) -> Sierpinski:
        return lt_semidec(y.coords[0], limit)

    return f


def _ball_map(center: Point, level: int) -> Callable[[Point], Sierpinski]:
    radius = creal_from_dyadic(Dyadic(1, -level))

    def f(y: Point) -> Sierpinski:
        return lt_semidec(max_norm_dist(y, center), radius)

    return f


def _union_map(u: OpenSet) -> Callable[[Point], Sierpinski]:
    def f(y: Point) -> Sierpinski:
        return u.member(y)

    return f


def _band_map(lo: Dyadic, hi: Dyadic) -> Callable[[Point], Sierpinski]:
    lo_r = creal_from_dyadic(lo)
    hi_r = creal_from_dyadic(hi)

    def f(y: Point) -> Sierpinski:
        return sierpinski_and(lt_semidec(lo_r, y.coords[0]), lt_semidec(y.coords[0], hi_r))

    return f


def corpus() -> list[tuple[str, Callable[[Point], Sierpinski], list[Point]]]:
    """Five maps, twenty base points each; every base point is accepted."""
    origin = point_from_dyadics([Dyadic(0), Dyadic(0)])
    half_half = point_from_dyadics([Dyadic(1, -1), Dyadic(1, -1)])
    right = point_from_dyadics([Dyadic(1), Dyadic(0)])
    up = point_from_dyadics([Dyadic(0), Dyadic(1)])

    entries = []

    pts = [
        point_from_dyadics([_grid(k, 19, Dyadic(0), -5), _grid((7 * k) % 13, 12, Dyadic(0), -4)])
        for k in range(20)
    ]
    entries.append(("halfplane-x-below-1", _halfplane_map(Dyadic(1)), pts))

    pts = [
        point_from_dyadics([_grid(k, 19, Dyadic(0), -6), _grid((5 * k) % 17, 16, Dyadic(0), -6)])
        for k in range(20)
    ]
    entries.append(("unit-ball", _ball_map(origin, 0), pts))

    two_balls = OpenSet.from_balls([Ball(right, 1), Ball(up, 1)])
    pts = []
    for k in range(20):
        wiggle = _grid(k, 19, Dyadic(0), -7)
        if k % 2 == 0:
            pts.append(point_from_dyadics([Dyadic(1) + wiggle, wiggle]))
        else:
            pts.append(point_from_dyadics([wiggle, Dyadic(1) + wiggle]))
    entries.append(("two-ball-union", _union_map(two_balls), pts))

    pts = [
        point_from_dyadics(
            [Dyadic(1, -1) + _grid(k, 19, Dyadic(0), -7), Dyadic(1, -1) - _grid(k, 19, Dyadic(0), -8)]
        )
        for k in range(20)
    ]
    entries.append(("near-center-ball", _ball_map(half_half, 1), pts))

    pts = [
        point_from_dyadics([_grid(k, 19, Dyadic(0), -5), _grid(k, 10, Dyadic(0), -3)])
        for k in range(20)
    ]
    entries.append(("open-band", _band_map(Dyadic(-1), Dyadic(1)), pts))

    return entries
