"""Concrete totally bounded sets: the standard triangle, axis cubes, and
midpoint iterated-function-system attractors.

The IFS model is rotation-free: a finite anchor list ``D`` inside the cube
``[-1, 1]^m``, attractor the least set containing ``D`` closed under
``x -> (x + d) / 2``.  Coverings come from the recurrence "halve the
previous covering toward each anchor", starting from the single unit ball;
level-``n`` centers are the depth-``n`` words over the anchors.  The same
attractor is also built through the set-limit operator for comparison;
the direct encoding is tighter by about one radius.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence, Union

from .covers import TBSet, _AffineSet, set_limit, set_union
from .dyadic import Dyadic, ZERO, pow2
from .real import CReal, creal_from_fraction, sqrt_int, translate_by_dyadic
from .space import Point, point_add, point_from_dyadics, point_scale_dyadic

_HALF = Dyadic(1, -1)

RawAnchor = Union[tuple, Point]


def sqrt3() -> CReal:
    """Certified ``sqrt(3)``; shared across call sites."""
    global _SQRT3
    with _SQRT3_LOCK:
        if _SQRT3 is None:
            _SQRT3 = sqrt_int(3)
        return _SQRT3


_SQRT3: CReal | None = None
_SQRT3_LOCK = threading.Lock()


def _scaled_center(v: int, sh: int) -> int:
    """``v * 2**sh`` rounded to the nearest integer; exact for ``sh >= 0``."""
    if sh >= 0:
        return v << sh
    k = -sh
    return (v + (1 << (k - 1))) >> k


def _odd_window(lo_c: int, hi_c: int, pad: int, sh: int) -> tuple[int, int]:
    """Index bounds (conservative) for odd ``v = 2i + 1`` with ``v * 2**sh``
    inside ``[lo_c - pad, hi_c + pad]``; works for either sign of ``sh``."""
    if sh >= 0:
        a = (((lo_c - pad) >> sh) - 1) // 2 - 1
        b = (((hi_c + pad) >> sh) + 1) // 2 + 1
    else:
        k = -sh
        a = (((lo_c - pad) << k) - 1) // 2 - 1
        b = (((hi_c + pad) << k) + 1) // 2 + 1
    return a, b


class TriangleSet(TBSet):
    """The closed triangle ``x >= 0, y >= 0, x + y <= 1``.

    The level-``n`` covering is the grid of balls centered at
    ``((2i+1)/2^(n+1), (2j+1)/2^(n+1))`` for ``i + j < 2^n``: the centers
    lie in the triangle (so every ball meets it) and the radius-``2**-n``
    balls cover the unit cells of the ``2**-n`` grid under the diagonal.
    """

    def __init__(self):
        super().__init__(2)

    def _raw_covering_uncached(self, level):
        return list(self.iter_raw_covering(level))

    def iter_raw_covering(self, level) -> Iterator[tuple]:
        side = 1 << level
        e = -(level + 1)
        for i in range(side):
            xi = Dyadic(2 * i + 1, e)
            for j in range(side - i):
                yield (xi, Dyadic(2 * j + 1, e))

    def _covering_mids_impl(self, level, scale):
        sh = scale - level - 1
        side = 1 << level
        err = ZERO if sh >= 0 else pow2(-(scale + 1))
        mids = []
        for i in range(side):
            x = _scaled_center(2 * i + 1, sh)
            for j in range(side - i):
                mids.append((x, _scaled_center(2 * j + 1, sh)))
        return mids, err

    def near_mids(self, level, scale, q, radius):
        sh = scale - level - 1
        side = 1 << level
        err = ZERO if sh >= 0 else pow2(-(scale + 1))

        def index_window(qc):
            a, b = _odd_window(qc - radius, qc + radius, 2, sh)
            return max(0, a), min(side - 1, b)

        ilo, ihi = index_window(q[0])
        jlo, jhi = index_window(q[1])
        mids = []
        for i in range(ilo, ihi + 1):
            x = _scaled_center(2 * i + 1, sh)
            for j in range(jlo, min(jhi, side - 1 - i) + 1):
                mids.append((x, _scaled_center(2 * j + 1, sh)))
        return mids, err

    def box_witness(self, level, scale, lo, hi):
        sh = scale - level - 1
        side = 1 << level
        slack = (1 << max(0, scale - level)) + 2
        err = ZERO if sh >= 0 else pow2(-(scale + 1))

        def window(lo_c, hi_c):
            a, b = _odd_window(lo_c, hi_c, slack, sh)
            return max(0, a), min(side - 1, b)

        ilo, ihi = window(lo[0], hi[0])
        jlo, jhi = window(lo[1], hi[1])
        # the index region i + j <= side - 1 is downward closed, so the
        # minimal corner of the window is feasible iff anything is
        if ilo <= min(ihi, side - 1 - jlo) and jlo <= jhi:
            return (
                (_scaled_center(2 * ilo + 1, sh), _scaled_center(2 * jlo + 1, sh)),
                err,
            )
        return None, err

    def iter_centered_raw(self, level):
        # covering centers already lie inside the triangle
        return self.iter_raw_covering(level + 2)


def triangle() -> TBSet:
    return TriangleSet()


class CubeSet(TBSet):
    """The cube ``[-1, 1]^m``: level-``n`` covering by the centers of the
    ``2**-n``-pitch grid cells (half-pitch offsets keep every point strictly
    inside some open ball)."""

    def __init__(self, dimension: int):
        super().__init__(dimension)

    def _axis_centers(self, level) -> list[Dyadic]:
        e = -(level + 1)
        span = 1 << (level + 1)
        return [Dyadic(2 * i + 1 - span, e) for i in range(span)]

    def _raw_covering_uncached(self, level):
        axes = self._axis_centers(level)
        raws = [()]
        for _ in range(self.dimension):
            raws = [r + (c,) for r in raws for c in axes]
        return raws

    def _covering_mids_impl(self, level, scale):
        sh = scale - level - 1
        span = 1 << (level + 1)
        unit = 1 << scale
        err = ZERO if sh >= 0 else pow2(-(scale + 1))
        axis = [_scaled_center(2 * i + 1, sh) - unit for i in range(span)]
        mids = [()]
        for _ in range(self.dimension):
            mids = [m + (c,) for m in mids for c in axis]
        return mids, err

    def near_mids(self, level, scale, q, radius):
        # axis centers are (2i+1)*2^-(level+1) - 1: work in the shifted
        # coordinate u = value + 1, where u is an odd multiple of the grid
        sh = scale - level - 1
        span = 1 << (level + 1)
        unit = 1 << scale
        err = ZERO if sh >= 0 else pow2(-(scale + 1))
        windows = []
        for qc in q:
            a, b = _odd_window(qc + unit - radius, qc + unit + radius, 2, sh)
            windows.append(range(max(0, a), min(span - 1, b) + 1))
        mids = [()]
        for w in windows:
            mids = [
                m + (_scaled_center(2 * i + 1, sh) - unit,) for m in mids for i in w
            ]
        return mids, err

    def box_witness(self, level, scale, lo, hi):
        sh = scale - level - 1
        span = 1 << (level + 1)
        unit = 1 << scale
        slack = (1 << max(0, scale - level)) + 2
        err = ZERO if sh >= 0 else pow2(-(scale + 1))
        mid = []
        for lo_c, hi_c in zip(lo, hi):
            a, b = _odd_window(lo_c + unit, hi_c + unit, slack, sh)
            a, b = max(0, a), min(span - 1, b)
            if a > b:
                return None, err
            mid.append(_scaled_center(2 * a + 1, sh) - unit)
        return tuple(mid), err

    def iter_centered_raw(self, level):
        return self.iter_raw_covering(level + 2)


def cube(dimension: int) -> TBSet:
    return CubeSet(dimension)


@dataclass(frozen=True)
class IFS:
    """Rotation-free midpoint system: anchors inside ``[-1, 1]^m``."""

    anchors: tuple[RawAnchor, ...]
    dimension: int


def make_ifs(anchors: Sequence[RawAnchor]) -> IFS:
    """Validate anchors (nonempty, consistent dimension, inside the cube;
    real-valued coordinates are interval-checked at effort 10)."""
    anchors = tuple(anchors)
    if not anchors:
        raise ValueError("an IFS needs at least one anchor")
    dims = [a.dimension if isinstance(a, Point) else len(a) for a in anchors]
    if len(set(dims)) != 1:
        raise ValueError("anchor dimensions differ")
    one = Dyadic(1)
    for a in anchors:
        if isinstance(a, Point):
            for c in a.coords:
                iv = c.approx(10)
                if iv.lo < -one or iv.hi > one:
                    raise ValueError("anchor not verifiably inside [-1, 1]^m")
        else:
            for d in a:
                if abs(d) > one:
                    raise ValueError("anchor outside [-1, 1]^m")
    return IFS(anchors=anchors, dimension=dims[0])


def _halfsum(c: RawAnchor, d: RawAnchor) -> RawAnchor:
    if isinstance(c, Point) or isinstance(d, Point):
        cp = c if isinstance(c, Point) else point_from_dyadics(c)
        dp = d if isinstance(d, Point) else point_from_dyadics(d)
        return point_scale_dyadic(point_add(cp, dp), _HALF)
    return tuple((ci + di).half() for ci, di in zip(c, d))


class IFSSet(TBSet):
    """Attractor of a midpoint IFS as a totally bounded set.

    ``covering(0)`` is the unit ball at the origin; ``covering(n+1)`` moves
    each previous center halfway toward each anchor, halving the radius.
    With all-dyadic anchors every center stays an exact dyadic.  Localized
    queries walk the word tree outermost-map first: fixing the last ``j``
    maps confines a center to a cube of radius ``2**-j``, so subtrees
    outside the query box are pruned exactly.
    """

    def __init__(self, ifs: IFS):
        super().__init__(ifs.dimension)
        self.ifs = ifs
        self._anchor_mid_cache: dict[int, tuple[list[tuple[Dyadic, ...]], Dyadic]] = {}
        self._centered_cache: dict[int, list[RawAnchor]] = {}
        self._aux_lock = threading.Lock()

    def _raw_covering_uncached(self, level):
        if level == 0:
            return [tuple(ZERO for _ in range(self.dimension))]
        prev = self.raw_covering(level - 1)
        return [_halfsum(c, d) for d in self.ifs.anchors for c in prev]

    # -- word-tree machinery --------------------------------------------------

    def _anchor_mids(self, scale):
        with self._aux_lock:
            hit = self._anchor_mid_cache.get(scale)
        if hit is not None:
            return hit
        mids = []
        alpha = ZERO
        bound = pow2(-(scale + 5))
        for a in self.ifs.anchors:
            if isinstance(a, Point):
                coords = []
                for c in a.coords:
                    iv = c.approx(scale + 6)
                    coords.append(iv.midpoint())
                mids.append(tuple(coords))
                alpha = bound  # half-width at effort scale+6
            else:
                mids.append(a)
        result = (mids, alpha)
        with self._aux_lock:
            return self._anchor_mid_cache.setdefault(scale, result)

    def _descend(self, level, scale, q=None, radius=None):
        """Midpoints of all depth-``level`` word centers, optionally pruned
        to a query box.  Returns (mids, err)."""
        anchor_mids, alpha = self._anchor_mids(scale)
        if q is not None:
            q_dy = tuple(Dyadic(v, -scale) for v in q)
            r_dy = Dyadic(radius, -scale) + alpha + pow2(-scale)
        out = []
        rounded = False
        stack = [(0, tuple(ZERO for _ in range(self.dimension)))]
        while stack:
            depth, center = stack.pop()
            if depth == level:
                mid = []
                for d in center:
                    if d.e >= -scale:
                        mid.append(d.scaled_int(-scale))
                    else:
                        mid.append(d.round_scaled_int(-scale))
                        rounded = True
                out.append(tuple(mid))
                continue
            shift = -(depth + 1)
            region = pow2(shift)  # children confined to radius 2^-(depth+1)
            for a in anchor_mids:
                child = tuple(c + ai.shifted(shift) for c, ai in zip(center, a))
                if q is not None:
                    limit = r_dy + region
                    if any(abs(ci - qi) > limit for ci, qi in zip(child, q_dy)):
                        continue
                stack.append((depth + 1, child))
        err = alpha + (pow2(-(scale + 1)) if rounded else ZERO)
        return out, err

    def _covering_mids_impl(self, level, scale):
        return self._descend(level, scale)

    def near_mids(self, level, scale, q, radius):
        return self._descend(level, scale, q, radius)

    def box_witness(self, level, scale, lo, hi):
        anchor_mids, alpha = self._anchor_mids(scale)
        slack = Dyadic(1, -level) + alpha + pow2(-scale) + pow2(-scale)
        lo_dy = tuple(Dyadic(v, -scale) - slack for v in lo)
        hi_dy = tuple(Dyadic(v, -scale) + slack for v in hi)
        stack = [(0, tuple(ZERO for _ in range(self.dimension)))]
        while stack:
            depth, center = stack.pop()
            if depth == level:
                mid = tuple(d.round_scaled_int(-scale) for d in center)
                return mid, alpha + pow2(-(scale + 1))
            shift = -(depth + 1)
            region = pow2(shift)
            for a in anchor_mids:
                child = tuple(c + ai.shifted(shift) for c, ai in zip(center, a))
                if any(
                    ci + region < l or ci - region > h
                    for ci, l, h in zip(child, lo_dy, hi_dy)
                ):
                    continue
                stack.append((depth + 1, child))
        return None, alpha + pow2(-(scale + 1))

    def iter_centered_raw(self, level):
        # words applied to the first anchor (a fixed point of its own map,
        # hence in the attractor): distance to the plain covering center is
        # at most 2^-(level+2), well inside the reissue budget
        depth = level + 2
        with self._aux_lock:
            hit = self._centered_cache.get(depth)
        if hit is None:
            seed = self.ifs.anchors[0]
            layer: list[RawAnchor] = [seed]
            for _ in range(depth):
                layer = [_halfsum(c, d) for d in self.ifs.anchors for c in layer]
            with self._aux_lock:
                hit = self._centered_cache.setdefault(depth, layer)
        return iter(hit)


def ifs_attractor(ifs: IFS) -> TBSet:
    """Direct covering construction of the attractor."""
    return IFSSet(ifs)


def sierpinski_ifs() -> IFS:
    """Anchors ``(-1,-1), (1,-1), (0, sqrt(3)-1)``."""
    top = Point([creal_from_fraction(Fraction(0)), translate_by_dyadic(sqrt3(), Dyadic(-1))])
    return make_ifs(
        [
            (Dyadic(-1), Dyadic(-1)),
            (Dyadic(1), Dyadic(-1)),
            top,
        ]
    )


def sierpinski_triangle() -> TBSet:
    return IFSSet(sierpinski_ifs())


def _half_anchor(a: RawAnchor) -> RawAnchor:
    if isinstance(a, Point):
        return point_scale_dyadic(a, _HALF)
    return tuple(d.half() for d in a)


def attractor_via_limit(ifs: IFS) -> TBSet:
    """Attractor through the set-limit operator.

    Iterate ``T_0 = unit ball``, ``T_{i+1} = union of (T_i + d) / 2``; each
    step halves the Hausdorff gap to the attractor, starting from at most 2
    (the cube diameter), so ``d_H(T_i, attractor) <= 2**(1-i)``.  Feeding
    the one-step-shifted sequence to the limit meets its fast-Cauchy
    precondition.  Slightly less efficient than the direct encoding: the
    limit reads level ``n+1`` of ``T_{n+1}`` and inflates the radius.
    """
    cache: dict[int, TBSet] = {}
    lock = threading.Lock()

    def iterate(i: int) -> TBSet:
        with lock:
            hit = cache.get(i)
        if hit is not None:
            return hit
        if i == 0:
            t: TBSet = CubeSet(ifs.dimension)
        else:
            prev = iterate(i - 1)
            parts = [_AffineSet(prev, _HALF, _half_anchor(d)) for d in ifs.anchors]
            t = parts[0]
            for p in parts[1:]:
                t = set_union(t, p)
        with lock:
            return cache.setdefault(i, t)

    return set_limit(lambda n: iterate(n + 1))


# -- IFS configuration files ---------------------------------------------------


def parse_anchor_coord(text: str, allow_nondyadic: bool):
    """Dyadic when exact; otherwise an exact rational real (if allowed)."""
    try:
        return Dyadic.parse(text)
    except ValueError:
        if not allow_nondyadic:
            raise ValueError(
                f"anchor coordinate {text!r} is not a dyadic rational "
                "(pass the non-dyadic opt-in to accept exact rationals)"
            ) from None
        return creal_from_fraction(Fraction(text))


def load_ifs(path, allow_nondyadic: bool = False) -> IFS:
    """Read ``{"dimension": m, "anchors": [[coord strings]]}``."""
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    dimension = data["dimension"]
    anchors = []
    for row in data["anchors"]:
        if len(row) != dimension:
            raise ValueError("anchor row length differs from dimension")
        coords = [parse_anchor_coord(str(c), allow_nondyadic) for c in row]
        if all(isinstance(c, Dyadic) for c in coords):
            anchors.append(tuple(coords))
        else:
            anchors.append(
                Point(
                    c if isinstance(c, CReal) else _dyadic_as_real(c)
                    for c in coords
                )
            )
    return make_ifs(anchors)


def _dyadic_as_real(d: Dyadic) -> CReal:
    from .real import creal_from_dyadic

    return creal_from_dyadic(d)
