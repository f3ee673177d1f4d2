"""Open and closed sets, compactness and overtness testers, and the
spying modulus of continuity.

Open sets are carried natively in ball-enumeration form: a countable list
of open balls (with an explicit empty marker), membership semi-decided by
folding the per-ball tests with a countable disjunction.  Closed sets are
their complement's characteristic map.  The compact and overt testers take
a totally bounded witness (:class:`~certoset.covers.TBSet`) and an open
set, and semi-decide inclusion and overlap.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Callable, Optional

from .covers import TBSet, set_distance
from .dyadic import Interval, pow2
from .effort import EffortCeilingExceeded, check_effort
from .kleenean import (
    Kleenean,
    Sierpinski,
    countable_select,
    sierpinski_and,
    sierpinski_countable_or,
)
from .real import CReal, creal_from_dyadic, lt_semidec
from .space import MetricSpace, Point, cantor_unpair, max_norm_dist


@dataclass(frozen=True)
class Ball:
    """Open max-norm ball of radius ``2**-level`` (negative levels give
    coarse balls of radius 2, 4, ...)."""

    center: Point
    level: int

    def radius(self):
        return pow2(-self.level)

    def member(self, x: Point) -> Sierpinski:
        return lt_semidec(max_norm_dist(x, self.center), creal_from_dyadic(self.radius()))


class OpenSet:
    """Countable union of balls, as an enumeration with empty markers."""

    def __init__(self, ball_at: Callable[[int], Optional[Ball]], dimension: int):
        self._ball_at = ball_at
        self._cache: dict[int, Optional[Ball]] = {}
        self._cache_lock = threading.Lock()
        self.dimension = dimension

    @staticmethod
    def from_balls(balls, dimension: int | None = None) -> "OpenSet":
        balls = list(balls)
        if dimension is None:
            if not balls:
                raise ValueError("dimension required for the empty open set")
            dimension = balls[0].center.dimension
        return OpenSet(lambda i: balls[i] if i < len(balls) else None, dimension)

    @staticmethod
    def empty(dimension: int) -> "OpenSet":
        return OpenSet(lambda _i: None, dimension)

    def ball(self, i: int) -> Optional[Ball]:
        with self._cache_lock:
            if i in self._cache:
                return self._cache[i]
        b = self._ball_at(i)
        with self._cache_lock:
            return self._cache.setdefault(i, b)

    def member(self, x: Point) -> Sierpinski:
        """Semi-decision of membership: fires iff some ball contains x."""

        def per_ball(i: int) -> Sierpinski:
            b = self.ball(i)
            if b is None:
                return Sierpinski.undefined()
            return b.member(x)

        return sierpinski_countable_or(per_ball)

    @staticmethod
    def countable_union(sets: Callable[[int], "OpenSet"], dimension: int) -> "OpenSet":
        """Diagonal interleaving of the constituent ball enumerations."""
        cache: dict[int, OpenSet] = {}

        def get(n: int) -> OpenSet:
            u = cache.get(n)
            if u is None:
                u = sets(n)
                cache[n] = u
            return u

        def ball_at(i: int) -> Optional[Ball]:
            n, j = cantor_unpair(i)
            return get(n).ball(j)

        return OpenSet(ball_at, dimension)


def intersection_member(u1: OpenSet, u2: OpenSet) -> Callable[[Point], Sierpinski]:
    """Characteristic map of the intersection.  A ball enumeration for the
    intersection is not produced (none exists constructively here)."""

    def member(x: Point) -> Sierpinski:
        return sierpinski_and(u1.member(x), u2.member(x))

    return member


def choose_from_open(space: MetricSpace, u: OpenSet, max_effort: int | None = None) -> int:
    """Index into the dense enumeration of a point inside a nonempty open
    set.  Realized by countable selection over the doubly indexed tests
    "dense(i) lies in the half-radius core of ball j" (the strict margin
    keeps each test semi-decidable).  Diverges on empty input.
    """

    def test(pair_index: int) -> Kleenean:
        i, j = cantor_unpair(pair_index)
        b = u.ball(j)
        if b is None:
            return Kleenean.const(None)
        d = space.distance(space.dense(i), b.center)
        core = creal_from_dyadic(pow2(-(b.level + 1)))
        return lt_semidec(d, core).as_kleenean()

    winner = countable_select(test, max_effort=max_effort)
    i, _j = cantor_unpair(winner)
    return i


class ClosedSet:
    """Closed set carried as the semi-decision of its complement."""

    def __init__(self, complement_member: Callable[[Point], Sierpinski], dimension: int):
        self.complement_member = complement_member
        self.dimension = dimension

    @staticmethod
    def union(a: "ClosedSet", b: "ClosedSet") -> "ClosedSet":
        def comp(x: Point) -> Sierpinski:
            return sierpinski_and(a.complement_member(x), b.complement_member(x))

        return ClosedSet(comp, a.dimension)

    @staticmethod
    def countable_intersection(seq: Callable[[int], "ClosedSet"], dimension: int) -> "ClosedSet":
        cache: dict[int, ClosedSet] = {}

        def get(n: int) -> ClosedSet:
            c = cache.get(n)
            if c is None:
                c = seq(n)
                cache[n] = c
            return c

        def comp(x: Point) -> Sierpinski:
            return sierpinski_countable_or(lambda n: get(n).complement_member(x))

        return ClosedSet(comp, dimension)


# -- compactness / overtness testers -----------------------------------------


def subset_test(K: TBSet, u: OpenSet) -> Sierpinski:
    """Semi-decides ``K`` (totally bounded) is included in the open set.

    Fires at effort ``e`` if for some covering fineness ``k <= e`` every
    center of the level-``k`` centered covering sits strictly inside one of
    the first ``e+1`` balls with margin ``2**-k``: certified
    ``d(center, ball c) < ball radius - 2**-k`` by interval arithmetic at
    effort ``e``.  The margin makes the ball of radius ``2**-k`` around the
    center land inside, so the coverage of the whole set follows.
    """

    empty = K.is_empty()

    def fn(e: int):
        if empty:
            return True  # the empty set is included in every open set
        margin_balls = []
        for i in range(e + 1):
            b = u.ball(i)
            if b is not None:
                margin_balls.append(b)
        if not margin_balls:
            return None
        for k in range(e + 1):
            if _covered_at(K, margin_balls, k, e):
                return True
        return None

    return Sierpinski(Kleenean(fn))


def _covered_at(K: TBSet, balls: list[Ball], k: int, effort: int) -> bool:
    from .covers import _raw_to_point

    gap = pow2(-k)
    for raw in K.iter_centered_raw(k):
        center = _raw_to_point(raw)
        inside_some = False
        for b in balls:
            bound = b.radius() - gap
            if bound.sign() <= 0:
                continue
            iv: Interval = max_norm_dist(center, b.center).approx(effort)
            if iv.hi < bound:
                inside_some = True
                break
        if not inside_some:
            return False  # first uncovered center short-circuits the level
    return True


def meets_test(V: TBSet, u: OpenSet) -> Sierpinski:
    """Semi-decides that a nonempty totally bounded set meets the open set:
    fires iff ``d(V, c) < 2**-n`` for some enumerated ball ``B(c, n)``."""
    if V.is_empty():
        raise ValueError("overlap test requires a nonempty set")

    def per_ball(i: int) -> Sierpinski:
        b = u.ball(i)
        if b is None:
            return Sierpinski.undefined()
        return lt_semidec(set_distance(V, b.center), creal_from_dyadic(b.radius()))

    return sierpinski_countable_or(per_ball)


# -- modulus of continuity by spying ------------------------------------------


class SpyPoint:
    """Wraps a point so the largest effort consulted on any coordinate is
    recorded.  Answers are bit-identical to the underlying point's.  Owns
    per-call state: do not share one spy across concurrent evaluations."""

    def __init__(self, base: Point):
        self._high_water = 0
        self._lock = threading.Lock()

        def wrap(c: CReal) -> CReal:
            def fn(n: int):
                self._note(n)
                return c.approx(n)

            return CReal(fn)

        self.point = Point(wrap(c) for c in base.coords)

    def _note(self, n: int) -> None:
        with self._lock:
            if n > self._high_water:
                self._high_water = n

    @property
    def high_water(self) -> int:
        return self._high_water


def continuity_modulus(
    f: Callable[[Point], Sierpinski], x: Point, max_effort: int | None = None
) -> int:
    """Radius exponent ``m`` such that ``f`` fires on all of ``B(x, m)``.

    Realization: evaluate ``f`` on a spied copy of ``x`` at increasing
    efforts until it fires, then return the recorded high-water effort plus
    a safety margin of one.  Valid for maps that consult their argument
    only through effort-indexed interval queries (every operator shipped in
    this package qualifies; the comparison margin in ``lt_semidec`` is what
    funds the +1).  Diverges if ``f`` never fires on ``x``.
    """
    spy = SpyPoint(x)
    s = f(spy.point)
    e = 0
    while True:
        if max_effort is not None and e > max_effort:
            raise EffortCeilingExceeded(e)
        check_effort(e)
        if s.query(e) is True:
            return spy.high_water + 1
        e += 1
