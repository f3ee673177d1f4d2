"""Totally bounded sets: per-level finite ball coverings with a set calculus.

A :class:`TBSet` represents a compact set by giving, for every level ``n``,
a finite list of centers whose open balls of radius ``2**-n`` cover the
set, each ball meeting the set.  Emptiness is coherent across levels, so
``covering(0) == []`` decides it.

Centers are carried in a raw form: either a tuple of exact dyadics (the
common case; kept exact end to end) or a :class:`~certoset.space.Point`
when a center is a genuine real.  On top of the public covering contract
every set supports localized covering queries (:meth:`TBSet.near_mids`):
these let the located-distance and choice operators descend the levels with
certified pruning instead of materializing exponentially large coverings.
The defaults fall back to filtering the full covering, so subclasses only
override where scale demands it.

Error budgets are stated inline where constants are chosen; the sampled
covering/intersection property tests exercise them.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Optional, Sequence, Union

from . import _kernels as kernel
from .dyadic import Dyadic, Interval, ZERO, pow2
from .real import CReal, creal_from_dyadic, limit
from .space import (
    Point,
    approx_point,
    point_add,
    point_from_dyadics,
    point_limit,
    point_mid_ints,
    point_scale_dyadic,
    point_translate_dyadic,
)

RawCenter = Union[tuple, Point]  # tuple of Dyadic, or a Point


def _raw_to_point(raw: RawCenter) -> Point:
    return raw if isinstance(raw, Point) else point_from_dyadics(raw)


def _raw_mid(raw: RawCenter, scale: int) -> tuple[tuple[int, ...], Dyadic]:
    if isinstance(raw, Point):
        return point_mid_ints(raw, scale)
    err = ZERO
    mids = []
    for d in raw:
        if d.e >= -scale:
            mids.append(d.scaled_int(-scale))
        else:
            mids.append(d.round_scaled_int(-scale))
            err = pow2(-(scale + 1))
    return tuple(mids), err


def _dedup_raws(raws: Iterable[RawCenter]) -> list[RawCenter]:
    # duplicate pruning by exact dyadic equality only; real-valued centers
    # are never merged (their equality is undecidable)
    seen: set = set()
    out: list[RawCenter] = []
    for r in raws:
        if isinstance(r, Point):
            out.append(r)
            continue
        if r not in seen:
            seen.add(r)
            out.append(r)
    return out


def _ceil_int(value: Dyadic, scale: int) -> int:
    """Smallest integer >= ``value * 2**scale``; value must be >= 0."""
    k = value.e + scale
    if k >= 0:
        return value.m << k
    return -((-value.m) >> -k)


class TBSet:
    """Base class; subclasses provide ``_raw_covering_uncached``."""

    def __init__(self, dimension: int):
        if dimension < 1:
            raise ValueError("dimension must be >= 1")
        self.dimension = dimension
        self._lock = threading.Lock()
        self._raw_cache: dict[int, list[RawCenter]] = {}
        self._point_cache: dict[int, list[Point]] = {}
        self._mids_cache: dict[tuple[int, int], tuple[list, Dyadic]] = {}

    # -- covering contract --------------------------------------------------

    def _raw_covering_uncached(self, level: int) -> list[RawCenter]:
        raise NotImplementedError

    def raw_covering(self, level: int) -> list[RawCenter]:
        if level < 0:
            raise ValueError("levels are nonnegative")
        with self._lock:
            cached = self._raw_cache.get(level)
        if cached is not None:
            return cached
        raws = _dedup_raws(self._raw_covering_uncached(level))
        with self._lock:
            return self._raw_cache.setdefault(level, raws)

    def iter_raw_covering(self, level: int) -> Iterator[RawCenter]:
        """Lazy variant; overridden where materializing a level is costly."""
        return iter(self.raw_covering(level))

    def covering(self, level: int) -> list[Point]:
        """Centers of the level-``n`` covering (balls of radius ``2**-n``)."""
        with self._lock:
            cached = self._point_cache.get(level)
        if cached is not None:
            return cached
        pts = [_raw_to_point(r) for r in self.raw_covering(level)]
        with self._lock:
            return self._point_cache.setdefault(level, pts)

    def is_empty(self) -> bool:
        return not self.raw_covering(0)

    # -- numeric plane -------------------------------------------------------

    def covering_mids(self, level: int, scale: int) -> tuple[list[tuple[int, ...]], Dyadic]:
        """All level-``n`` centers as integer midpoints at grid ``2**-scale``
        plus a bound on the midpoint-to-center distance.  Memoized: repeated
        queries (and both sides of a Hausdorff evaluation on one set) share
        the same list object."""
        key = (level, scale)
        with self._lock:
            hit = self._mids_cache.get(key)
        if hit is not None:
            return hit
        result = self._covering_mids_impl(level, scale)
        with self._lock:
            return self._mids_cache.setdefault(key, result)

    def _covering_mids_impl(self, level: int, scale: int) -> tuple[list[tuple[int, ...]], Dyadic]:
        err = ZERO
        mids = []
        for raw in self.raw_covering(level):
            m, e = _raw_mid(raw, scale)
            mids.append(m)
            if e > err:
                err = e
        return mids, err

    def near_mids(
        self, level: int, scale: int, q: tuple[int, ...], radius: int
    ) -> tuple[list[tuple[int, ...]], Dyadic]:
        """Superset of the level-``n`` center midpoints within ``radius``
        (grid units) of ``q``.  Completeness is the contract; extras are
        allowed.  Default: filter the full covering."""
        mids, err = self.covering_mids(level, scale)
        keep = [m for m in mids if kernel.chebyshev(m, q) <= radius]
        return keep, err

    def box_witness(
        self, level: int, scale: int, lo: tuple[int, ...], hi: tuple[int, ...]
    ) -> tuple[Optional[tuple[int, ...]], Dyadic]:
        """Some level-``n`` center midpoint near the box ``[lo, hi]`` (grid
        units), or ``None``.

        Contract: a ``None`` answer certifies that no center lies within
        ``2**-level`` of the box, hence the set misses the box entirely; a
        returned midpoint is within the accompanying error of a genuine
        center.  Default: scan the full covering.
        """
        mids, err = self.covering_mids(level, scale)
        slack = (1 << max(0, scale - level)) + _ceil_int(err, scale) + 2
        for m in mids:
            if all(l - slack <= v <= h + slack for v, l, h in zip(m, lo, hi)):
                return m, err
        return None, err

    # -- centered coverings ---------------------------------------------------

    def centered_raw(self, level: int) -> list[RawCenter]:
        return list(self.iter_centered_raw(level))

    def iter_centered_raw(self, level: int) -> Iterator[RawCenter]:
        """Level-``n`` covering whose centers are certified within
        ``2**-(n+2)`` of the set.

        Default realization: take the level-``(n+2)`` covering and pull each
        center toward the set by two refinement steps.  The total movement
        is below ``3 * 2**-(n+2)``, so the reissued level-``n`` balls still
        cover, and the walked points end within ``(1+2**-3) * 2**-(n+4)`` of
        the set.
        """
        if self.is_empty():
            raise ValueError("centered covering of the empty set")
        scale = level + 8
        for raw in self.iter_raw_covering(level + 2):
            mid, _ = _raw_mid(raw, scale)
            mid = _approach_step(self, mid, level + 2, scale)
            mid = _approach_step(self, mid, level + 3, scale)
            yield tuple(Dyadic(v, -scale) for v in mid)

    def centered(self, level: int) -> list[Point]:
        return [_raw_to_point(r) for r in self.centered_raw(level)]


def _approach_step(A: TBSet, q: tuple[int, ...], j: int, scale: int) -> tuple[int, ...]:
    """One refinement step of the approach walk.

    Precondition: ``d(q, A) < (1 + 2**-3) * 2**-j`` with ``q`` read at grid
    ``2**-scale``.  Returns a level-``(j+1)`` center midpoint with
    ``d(., A) < (1 + 2**-3) * 2**-(j+1)``, moving at most
    ``(1 + 2**-3)*2**-j + 2**-(j+1)`` plus two midpoint errors.  Requires
    ``scale >= j + 4`` so the midpoint error fits inside the ``2**-3``
    slack of the invariant.
    """
    if scale < j + 4:
        raise ValueError("scale too coarse for the approach walk")
    # ((1 + 2^-3)*2^-j + 2^-(j+1)) in grid units, plus midpoint slack
    radius = (9 << (scale - j - 3)) + (1 << (scale - j - 1)) + 4
    cands, _err = A.near_mids(j + 1, scale, q, radius)
    if not cands:
        raise RuntimeError("approach walk found no candidate (covering invariant violated?)")
    best = None
    best_d = None
    for c in cands:
        d = kernel.chebyshev(c, q)
        if best_d is None or d < best_d:
            best, best_d = c, d
    return best


# -- located distance ----------------------------------------------------------


class _BnbNode:
    __slots__ = ("lo", "hi", "lower", "upper", "depth")

    def __init__(self, lo, hi, lower, upper, depth):
        self.lo = lo
        self.hi = hi
        self.lower = lower
        self.upper = upper
        self.depth = depth


def _witness_level(scale: int, side: int, cap: int) -> int:
    # covering level with balls about a quarter of the box side
    level = scale - max(0, side.bit_length() - 1) + 2
    return min(max(level, 0), cap)


def _distance_bounds(
    A: TBSet,
    q: tuple[int, ...],
    scale: int,
    tol: int,
    cap_level: int,
    split_axes: tuple[int, ...],
    floor: int = 0,
):
    """Certified integer bounds ``[lower, upper]`` with
    ``upper - max(lower, floor) <= tol`` (grid units) around
    ``min over A of cheb(q, .)``.

    Branch and bound over boxes, subdividing only along ``split_axes``: a
    box is dropped when no covering center sits near it (then it misses the
    set); surviving boxes bound the distance below via exact point-to-box
    geometry and above through a covering-center witness.  Each round
    refines the current minimal-lower and minimal-upper boxes.  Restricted
    to a single axis this certifies the distance to that coordinate
    projection of the set, which is the piece the full-dimensional search
    cannot do efficiently (boxes stacked behind an axis-perpendicular face
    all tie at the same geometric bound).
    """
    mids0, _err0 = A.covering_mids(0, scale)
    if not mids0:
        raise ValueError("distance to the empty set")
    dim = len(q)
    unit = 1 << scale
    root_lo = tuple(min(m[i] for m in mids0) - unit - 4 for i in range(dim))
    root_hi = tuple(max(m[i] for m in mids0) + unit + 4 for i in range(dim))

    def make_node(lo, hi, depth):
        side = max(hi[i] - lo[i] for i in split_axes)
        level = _witness_level(scale, max(side, 1), cap_level)
        witness, werr = A.box_witness(level, scale, lo, hi)
        if witness is None:
            return None
        slack = (1 << max(0, scale - level)) + _ceil_int(werr, scale) + 2
        # both bounds restricted to the split axes: the search then bounds
        # the distance to the projection onto those axes
        upper = max(abs(witness[i] - q[i]) for i in split_axes) + slack
        lower = 0
        for i in split_axes:
            d = lo[i] - q[i] if q[i] < lo[i] else (q[i] - hi[i] if q[i] > hi[i] else 0)
            if d > lower:
                lower = d
        return _BnbNode(lo, hi, lower, upper, depth)

    root = make_node(root_lo, root_hi, 0)
    if root is None:
        raise RuntimeError("covering invariant violated: root box lost the set")
    active = [root]

    max_rounds = 64 * (scale + 8)
    for _ in range(max_rounds):
        min_lower = max(min(n.lower for n in active), floor)
        min_upper = min(n.upper for n in active)
        if min_upper - min_lower <= tol:
            return min_lower, min_upper
        candidates = [
            n for n in active if max(n.hi[i] - n.lo[i] for i in split_axes) > 1
        ]
        if not candidates:
            return min_lower, min_upper  # grid exhausted
        targets = []
        for key in ("lower", "upper"):
            pick = None
            for n in candidates:
                v = getattr(n, key)
                if pick is None or v < getattr(pick, key):
                    pick = n
            if pick not in targets:
                targets.append(pick)
        for node in targets:
            active.remove(node)
            boxes = [(node.lo, node.hi)]
            for axis in split_axes:
                mid = (node.lo[axis] + node.hi[axis]) >> 1
                out = []
                for blo, bhi in boxes:
                    out.append((blo, bhi[:axis] + (mid,) + bhi[axis + 1 :]))
                    out.append((blo[:axis] + (mid,) + blo[axis + 1 :], bhi))
                boxes = out
            for blo, bhi in boxes:
                child = make_node(blo, bhi, node.depth + 1)
                if child is not None:
                    active.append(child)
        if not active:
            raise RuntimeError("covering invariant violated: set vanished")
    raise RuntimeError("distance search failed to converge")


def set_distance(A: TBSet, x: Point) -> CReal:
    """The located distance ``d(x, A)`` as an exact real.

    The effort-``n`` interval brackets the distance within ``2**-(n+3)``
    plus the point precision.  Two certified searches combine: per-axis
    slab subdivision bounds the distance to each coordinate projection
    (their maximum is a lower bound for the max-norm distance, and a tight
    one behind axis-perpendicular faces), and a full box subdivision closes
    the remaining gap.  Each covering center is within ``2**-level`` of the
    set, so witness brackets transfer to ``d(x, A)``.
    """
    if A.is_empty():
        raise ValueError("distance to the empty set")
    if x.dimension != A.dimension:
        raise ValueError("dimension mismatch")

    def fn(n: int) -> Interval:
        scale = n + 8
        q, qerr = point_mid_ints(x, scale)
        # 1.5 * 2^-(n+3): headroom over the witness slack constants, still
        # comfortably inside the 2^(1-n) width contract after padding
        tol = 3 << (scale - (n + 4))
        cap = n + 6
        floor = 0
        for axis in range(len(q)):
            # bounds the distance to the axis projection: a lower bound of
            # the max-norm distance (its upper side bounds only the
            # projection distance and is not used)
            al, _au = _distance_bounds(A, q, scale, tol, cap, (axis,))
            if al > floor:
                floor = al
        axes = tuple(range(len(q)))
        lower, upper = _distance_bounds(A, q, scale, tol, cap, axes, floor=floor)
        lower = max(lower, floor)
        pad = qerr + pow2(-(n + 6))
        return Interval(
            Dyadic(lower, -scale) - pad, Dyadic(upper, -scale) + pad
        ).clamp_nonnegative()

    return CReal(fn)


def centered_covering(A: TBSet, level: int) -> list[Point]:
    """Level-``n`` covering with centers certified within ``2**-(n+2)`` of
    the set; errors on the empty set."""
    return A.centered(level)


def choose_point(A: TBSet) -> Point:
    """Some point of the set: the limit of the approach walk through
    ever-tighter located neighbourhoods.  Deterministic for a fixed set."""
    if A.is_empty():
        raise ValueError("choice from the empty set")
    state: list[tuple[int, ...]] = []  # state[j]: level-j point at grid 2^-(j+8)
    lock = threading.Lock()

    def walk_to(j: int) -> tuple[int, ...]:
        with lock:
            if not state:
                mid, _ = _raw_mid(A.raw_covering(0)[0], 8)
                state.append(mid)
            while len(state) <= j:
                i = len(state) - 1
                q = tuple(v << 1 for v in state[-1])  # rescale i+8 -> i+9
                state.append(_approach_step(A, q, i, i + 9))
            return state[j]

    def term(n: int) -> Point:
        # tail movement from level j is below 2*2^-j; j = n+2 makes the
        # term sequence fast Cauchy
        j = n + 2
        mid = walk_to(j)
        return point_from_dyadics(Dyadic(v, -(j + 8)) for v in mid)

    return point_limit(term, A.dimension)


# -- Hausdorff metric -----------------------------------------------------------


def _points_mids(points: Sequence[Point], scale: int) -> tuple[list[tuple[int, ...]], Dyadic]:
    err = ZERO
    mids = []
    for p in points:
        m, e = point_mid_ints(p, scale)
        mids.append(m)
        if e > err:
            err = e
    return mids, err


def hausdorff_finite(S: Sequence[Point], T: Sequence[Point]) -> CReal:
    """Hausdorff distance of nonempty finite point sets.

    The max-of-min recurrences run exactly on scaled integer midpoints.
    Moving each point by at most ``e`` perturbs the distance by at most
    ``e`` per side, which is the interval padding; exact dyadic inputs on
    the evaluation grid therefore give width-zero intervals.
    """
    S = list(S)
    T = list(T)
    if not S or not T:
        raise ValueError("Hausdorff distance needs nonempty sets")
    dim = S[0].dimension
    if any(p.dimension != dim for p in S) or any(p.dimension != dim for p in T):
        raise ValueError("dimension mismatch")

    def fn(n: int) -> Interval:
        scale = n + 5
        smids, serr = _points_mids(S, scale)
        tmids, terr = _points_mids(T, scale)
        v = kernel.hausdorff(smids, tmids)
        pad = serr + terr
        base = Dyadic(v, -scale)
        return Interval(base - pad, base + pad).clamp_nonnegative()

    return CReal(fn)


def hausdorff_distance(A: TBSet, B: TBSet) -> CReal:
    """Hausdorff distance of nonempty totally bounded sets.

    The ``i``-th approximant is the finite Hausdorff distance of the two
    level-``(i+2)`` center sets; centers are within ``2**-(i+2)`` of their
    sets, so the approximant is within ``2**-(i+1)`` of the true distance
    and the approximant sequence is fast Cauchy.
    """
    if A.is_empty() or B.is_empty():
        raise ValueError("Hausdorff distance needs nonempty sets")
    if A.dimension != B.dimension:
        raise ValueError("dimension mismatch")
    if A is B:
        # exact identity; skips materializing any covering
        return creal_from_dyadic(ZERO)

    def approximant(i: int) -> CReal:
        def fn(n: int) -> Interval:
            scale = n + 5
            amids, aerr = A.covering_mids(i + 2, scale)
            bmids, berr = B.covering_mids(i + 2, scale)
            v = kernel.hausdorff(amids, bmids)
            pad = aerr + berr
            base = Dyadic(v, -scale)
            return Interval(base - pad, base + pad).clamp_nonnegative()

        return CReal(fn)

    return limit(approximant)


# -- constructions ----------------------------------------------------------------


class _FinitePointsSet(TBSet):
    """Totally bounded set of finitely many (exact real) points."""

    def __init__(self, points: Sequence[Point]):
        points = list(points)
        if not points:
            raise ValueError("finite point sets are nonempty")
        super().__init__(points[0].dimension)
        if any(p.dimension != self.dimension for p in points):
            raise ValueError("dimension mismatch")
        self.points = points

    def _raw_covering_uncached(self, level):
        return [approx_point(p, level + 1) for p in self.points]

    def iter_centered_raw(self, level):
        seen = set()
        for p in self.points:
            raw = approx_point(p, level + 2)
            if raw not in seen:
                seen.add(raw)
                yield raw


def finite_point_set(points: Sequence[Point]) -> TBSet:
    return _FinitePointsSet(points)


def singleton(x: Point) -> TBSet:
    """The singleton set: each covering is one ball containing the point."""
    return _FinitePointsSet([x])


class _EmptySet(TBSet):
    def _raw_covering_uncached(self, level):
        return []


def empty_set(dimension: int) -> TBSet:
    return _EmptySet(dimension)


class _UnionSet(TBSet):
    def __init__(self, a: TBSet, b: TBSet):
        if a.dimension != b.dimension:
            raise ValueError("dimension mismatch")
        super().__init__(a.dimension)
        self.a = a
        self.b = b

    def _raw_covering_uncached(self, level):
        return self.a.raw_covering(level) + self.b.raw_covering(level)

    def iter_raw_covering(self, level):
        yield from self.a.iter_raw_covering(level)
        yield from self.b.iter_raw_covering(level)

    def near_mids(self, level, scale, q, radius):
        ca, ea = self.a.near_mids(level, scale, q, radius)
        cb, eb = self.b.near_mids(level, scale, q, radius)
        return ca + cb, max(ea, eb)

    def box_witness(self, level, scale, lo, hi):
        if not self.a.is_empty():
            w, ea = self.a.box_witness(level, scale, lo, hi)
            if w is not None:
                return w, ea
        if not self.b.is_empty():
            w, eb = self.b.box_witness(level, scale, lo, hi)
            if w is not None:
                return w, eb
        return None, ZERO

    def _covering_mids_impl(self, level, scale):
        ca, ea = self.a.covering_mids(level, scale)
        cb, eb = self.b.covering_mids(level, scale)
        return ca + cb, max(ea, eb)

    def iter_centered_raw(self, level):
        if self.a.is_empty() and self.b.is_empty():
            raise ValueError("centered covering of the empty set")
        if not self.a.is_empty():
            yield from self.a.iter_centered_raw(level)
        if not self.b.is_empty():
            yield from self.b.iter_centered_raw(level)


def set_union(A: TBSet, B: TBSet) -> TBSet:
    """Union: coverings concatenate level by level."""
    return _UnionSet(A, B)


class _AffineSet(TBSet):
    """``c*A + t`` for dyadic ``c > 0``; ``t`` dyadic or an exact-real point
    (the latter is used internally by the fractal limit construction)."""

    def __init__(self, A: TBSet, c: Dyadic, t):
        super().__init__(A.dimension)
        if c.sign() <= 0:
            raise ValueError("scale factor must be positive")
        self.base = A
        self.c = c
        self.mag = c.mag_exp()  # minimal with c <= 2**mag
        if isinstance(t, Point):
            self.t_point: Optional[Point] = t
            self.t_dyadic: Optional[tuple] = None
        else:
            self.t_point = None
            self.t_dyadic = tuple(t)
            if len(self.t_dyadic) != A.dimension:
                raise ValueError("translation dimension mismatch")

    def _base_level(self, level: int) -> int:
        # least m >= 0 with c * 2**-m <= 2**-level
        return max(0, level + self.mag)

    def _transform_raw(self, raw: RawCenter) -> RawCenter:
        if isinstance(raw, Point) or self.t_point is not None:
            pt = point_scale_dyadic(_raw_to_point(raw), self.c)
            if self.t_point is not None:
                return point_add(pt, self.t_point)
            return point_translate_dyadic(pt, self.t_dyadic)
        return tuple(d * self.c + tv for d, tv in zip(raw, self.t_dyadic))

    def _raw_covering_uncached(self, level):
        return [self._transform_raw(r) for r in self.base.raw_covering(self._base_level(level))]

    def iter_raw_covering(self, level):
        for r in self.base.iter_raw_covering(self._base_level(level)):
            yield self._transform_raw(r)

    def _covering_mids_impl(self, level, scale):
        # integer-linear transform of the base midpoints: with the base read
        # at scale + e_c the scaling by c = m_c * 2**e_c is exact, leaving
        # only the translation rounding
        base_scale = scale + self.c.e
        if base_scale < 0:
            return super()._covering_mids_impl(level, scale)
        mids, berr = self.base.covering_mids(self._base_level(level), base_scale)
        mc = self.c.m
        if self.t_dyadic is not None:
            terr = ZERO
            t_ints = []
            for d in self.t_dyadic:
                if d.e >= -scale:
                    t_ints.append(d.scaled_int(-scale))
                else:
                    t_ints.append(d.round_scaled_int(-scale))
                    terr = pow2(-(scale + 1))
        else:
            t_ints, terr = point_mid_ints(self.t_point, scale)
        out = [tuple(mc * v + t for v, t in zip(m, t_ints)) for m in mids]
        return out, self.c * berr + terr

    def near_mids(self, level, scale, q, radius):
        # pull the query back through the affine map with outward rounding,
        # then push the returned midpoints forward
        m = self._base_level(level)
        base_scale = scale + self.mag
        if self.t_dyadic is not None:
            t_frac = [d.as_fraction() for d in self.t_dyadic]
            terr = ZERO
        else:
            t_mids, terr = point_mid_ints(self.t_point, scale)
            t_frac = [Fraction(v, 1 << scale) for v in t_mids]
        c_frac = self.c.as_fraction()
        q_back = []
        for qi, ti in zip(q, t_frac):
            exact = (Fraction(qi, 1 << scale) - ti) / c_frac
            q_back.append(round(exact * (1 << base_scale)))
        slack = _ceil_int(terr, scale) + 4
        r_back = int(Fraction(radius + slack, 1 << scale) / c_frac * (1 << base_scale)) + 4
        cands, cerr = self.base.near_mids(m, base_scale, tuple(q_back), r_back)
        out = []
        for cand in cands:
            mid = []
            for v, ti in zip(cand, t_frac):
                val = c_frac * Fraction(v, 1 << base_scale) + ti
                mid.append(round(val * (1 << scale)))
            out.append(tuple(mid))
        err = self.c * cerr + pow2(-(scale + 1)) + terr
        return out, err

    def box_witness(self, level, scale, lo, hi):
        m = self._base_level(level)
        # base grid fine enough that one base unit is worth at most one
        # output unit under the forward map (c * 2^(scale - base_scale) <= 1),
        # so conversion slop stays within a few output units for any factor
        base_scale = scale + max(0, self.mag, -self.c.e)
        if self.t_dyadic is not None:
            t_frac = [d.as_fraction() for d in self.t_dyadic]
            terr = ZERO
        else:
            t_mids, terr = point_mid_ints(self.t_point, scale)
            t_frac = [Fraction(v, 1 << scale) for v in t_mids]
        c_frac = self.c.as_fraction()
        slack = _ceil_int(terr, scale) + 2
        # c may be as small as 2**(mag-1), so a center within 2**-level of
        # the box pulls back to within 2 * 2**-m of the back-box: inflate by
        # one extra base ball beyond the base query's own slack
        margin = (1 << max(0, base_scale - m)) + 2
        blo, bhi = [], []
        for l, h, ti in zip(lo, hi, t_frac):
            lo_back = (Fraction(l - slack, 1 << scale) - ti) / c_frac
            hi_back = (Fraction(h + slack, 1 << scale) - ti) / c_frac
            blo.append(int(lo_back * (1 << base_scale)) - margin)
            bhi.append(int(hi_back * (1 << base_scale)) + margin)
        w, werr = self.base.box_witness(m, base_scale, tuple(blo), tuple(bhi))
        if w is None:
            return None, ZERO
        mid = []
        for v, ti in zip(w, t_frac):
            val = c_frac * Fraction(v, 1 << base_scale) + ti
            mid.append(round(val * (1 << scale)))
        return tuple(mid), self.c * werr + pow2(-(scale + 1)) + terr

    def iter_centered_raw(self, level):
        for raw in self.base.iter_centered_raw(self._base_level(level)):
            yield self._transform_raw(raw)


def scale_translate(A: TBSet, c: Dyadic, t: Sequence[Dyadic]) -> TBSet:
    """``c*A + t`` with dyadic data: covering transforms are exact."""
    return _AffineSet(A, c, tuple(t))


class _ImageSet(TBSet):
    """Image of a set under a uniformly continuous map.

    ``omega`` certifies the modulus: ``d(x,y) < 2**-omega(n)`` implies
    ``d(f x, f y) < 2**-n``.  The level-``n`` covering applies ``f`` to the
    level-``omega(n+1)`` centers; one level of slack absorbs the
    displacement between a center image and the image set.
    """

    def __init__(self, f: Callable[[Point], Point], omega: Callable[[int], int], A: TBSet):
        self.f = f
        self.omega = omega
        self.base = A
        base_raws = A.raw_covering(0)
        dim = self.f(_raw_to_point(base_raws[0])).dimension if base_raws else A.dimension
        super().__init__(dim)

    def _raw_covering_uncached(self, level):
        raws = self.base.raw_covering(self.omega(level + 1))
        return [self.f(_raw_to_point(r)) for r in raws]


def map_image(f: Callable[[Point], Point], omega: Callable[[int], int], A: TBSet) -> TBSet:
    return _ImageSet(f, omega, A)


class _LimitSet(TBSet):
    """Limit of a fast-Cauchy (in Hausdorff distance) sequence of sets.

    The level-``n`` covering reissues the level-``(n+1)`` covering of the
    ``(n+1)``-st set at radius ``2**-n``; the radius inflation absorbs the
    ``2**-(n+1)`` Hausdorff gap to the limit.  The Cauchy precondition is
    not validated (it is semi-decidable at best); :func:`limit_diagnostics`
    reports pairwise estimates for audit.
    """

    def __init__(self, seq: Callable[[int], TBSet]):
        self._seq_raw = seq
        self._seq_cache: dict[int, TBSet] = {}
        self._seq_lock = threading.Lock()
        super().__init__(self.seq(0).dimension)

    def seq(self, i: int) -> TBSet:
        with self._seq_lock:
            s = self._seq_cache.get(i)
            if s is None:
                s = self._seq_raw(i)
                self._seq_cache[i] = s
            return s

    def _raw_covering_uncached(self, level):
        return self.seq(level + 1).raw_covering(level + 1)

    def iter_raw_covering(self, level):
        return self.seq(level + 1).iter_raw_covering(level + 1)

    def near_mids(self, level, scale, q, radius):
        return self.seq(level + 1).near_mids(level + 1, scale, q, radius)

    def box_witness(self, level, scale, lo, hi):
        # the delegate certifies only a 2^-(level+1) margin; inflate the box
        # by the difference so a None still rules out the full 2^-level band
        pad = 1 << max(0, scale - level - 1)
        lo = tuple(v - pad for v in lo)
        hi = tuple(v + pad for v in hi)
        return self.seq(level + 1).box_witness(level + 1, scale, lo, hi)

    def _covering_mids_impl(self, level, scale):
        return self.seq(level + 1).covering_mids(level + 1, scale)

    def iter_centered_raw(self, level):
        # centers of the (n+3)-rd set's level-(n+3) centered covering sit
        # within 2^-(n+3) + 2^-(n+5) <= 2^-(n+2) of the limit set, and the
        # reissued level-n balls still cover it
        return self.seq(level + 3).iter_centered_raw(level + 3)


def set_limit(seq: Callable[[int], TBSet]) -> TBSet:
    return _LimitSet(seq)


def limit_diagnostics(seq: Callable[[int], TBSet], upto: int, effort: int = 12) -> list[Dyadic]:
    """Audit helper for :func:`set_limit` inputs: midpoints of the pairwise
    Hausdorff estimates ``d_H(seq(i), seq(i+1))`` for ``i < upto``."""
    out = []
    for i in range(upto):
        d = hausdorff_distance(seq(i), seq(i + 1))
        out.append(d.approx(effort).midpoint())
    return out
