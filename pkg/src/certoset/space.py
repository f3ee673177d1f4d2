"""Points, the max-norm Euclidean space, and its dense dyadic enumeration.

The metric-space abstraction is a value (a record of functions) so several
spaces can coexist in one process; the max-norm Euclidean space built by
:func:`euclidean_space` is the only instantiation shipped.

The dense enumeration interleaves (grid exponent, integer grid coordinates)
through Cantor pairing.  The pairing is invertible, which the covering
machinery and tests rely on: an index hitting any prescribed dyadic grid
point can be computed directly instead of searched for.  The enumeration
order is part of the package's observable behaviour and must stay stable.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt
from typing import Callable

from .dyadic import Dyadic, Interval, pow2
from .real import (
    CReal,
    abs_,
    add,
    approx_dyadic,
    creal_from_dyadic,
    creal_max_list,
    limit,
    scale_by_dyadic,
    sub,
    translate_by_dyadic,
)


class Point:
    """Fixed-dimension vector of reals."""

    __slots__ = ("coords",)

    def __init__(self, coords):
        coords = tuple(coords)
        if not coords:
            raise ValueError("points must have dimension >= 1")
        self.coords = coords

    @property
    def dimension(self) -> int:
        return len(self.coords)

    def __repr__(self):
        return f"Point({', '.join(repr(c) for c in self.coords)})"


def point_from_dyadics(ds) -> Point:
    return Point(creal_from_dyadic(d) for d in ds)


def point_from_ints(ns) -> Point:
    return Point(creal_from_dyadic(Dyadic(n)) for n in ns)


def point_add(x: Point, y: Point) -> Point:
    _same_dimension(x, y)
    return Point(add(a, b) for a, b in zip(x.coords, y.coords))


def point_scale_dyadic(x: Point, c: Dyadic) -> Point:
    return Point(scale_by_dyadic(a, c) for a in x.coords)


def point_translate_dyadic(x: Point, t) -> Point:
    return Point(translate_by_dyadic(a, d) for a, d in zip(x.coords, t))


def _same_dimension(x: Point, y: Point) -> None:
    if x.dimension != y.dimension:
        raise ValueError(f"dimension mismatch: {x.dimension} vs {y.dimension}")


def max_norm_dist(x: Point, y: Point) -> CReal:
    """Chebyshev distance: max over coordinates of ``|x_i - y_i|``."""
    _same_dimension(x, y)
    return creal_max_list([abs_(sub(a, b)) for a, b in zip(x.coords, y.coords)])


def approx_point(x: Point, p: int) -> tuple[Dyadic, ...]:
    """Componentwise dyadic approximation: within ``2**-p`` in max norm."""
    return tuple(approx_dyadic(c, p) for c in x.coords)


def point_mid_ints(x: Point, scale: int) -> tuple[tuple[int, ...], Dyadic]:
    """Rounded integer coordinates at grid ``2**-scale`` plus a radius bound.

    Exact dyadic coordinates that sit on the grid contribute no error.
    """
    mids = []
    err = Dyadic(0)
    per_coord_err = pow2(-(scale + 1)) + pow2(-(scale + 2))
    for c in x.coords:
        if c.exact is not None and c.exact.e >= -scale:
            mids.append(c.exact.scaled_int(-scale))
            continue
        iv: Interval = c.approx(scale + 2)
        mids.append(iv.midpoint().round_scaled_int(-scale))
        # half-width <= 2^-(scale+2), grid rounding <= 2^-(scale+1)
        if per_coord_err > err:
            err = per_coord_err
    return tuple(mids), err


# -- pairing-based dense enumeration ------------------------------------------


def cantor_pair(a: int, b: int) -> int:
    return (a + b) * (a + b + 1) // 2 + b


def cantor_unpair(z: int) -> tuple[int, int]:
    w = (isqrt(8 * z + 1) - 1) // 2
    b = z - w * (w + 1) // 2
    return w - b, b


def zigzag(n: int) -> int:
    """Signed integer -> natural: 0, -1, 1, -2, 2, ... -> 0, 1, 2, 3, 4."""
    return 2 * n if n >= 0 else -2 * n - 1


def unzigzag(z: int) -> int:
    return z // 2 if z % 2 == 0 else -(z + 1) // 2


def _encode_ints(vals: list[int]) -> int:
    acc = vals[0]
    for v in vals[1:]:
        acc = cantor_pair(acc, v)
    return acc


def _decode_ints(code: int, m: int) -> list[int]:
    out = []
    for _ in range(m - 1):
        code, v = cantor_unpair(code)
        out.append(v)
    out.append(code)
    out.reverse()
    return out


def dense_point(index: int, dimension: int) -> Point:
    """The ``index``-th point of the dense enumeration of dyadic vectors."""
    if index < 0:
        raise ValueError("index must be nonnegative")
    grid_exp, code = cantor_unpair(index)
    ints = [unzigzag(z) for z in _decode_ints(code, dimension)]
    return point_from_dyadics(Dyadic(v, -grid_exp) for v in ints)


def dense_index(grid_exp: int, ints) -> int:
    """Inverse of :func:`dense_point` on the ``2**-grid_exp`` grid."""
    if grid_exp < 0:
        raise ValueError("grid exponent must be nonnegative")
    return cantor_pair(grid_exp, _encode_ints([zigzag(v) for v in ints]))


def dense_index_near(target: tuple[Dyadic, ...], p: int) -> int:
    """Index of a dense point within ``2**-p`` (max norm) of a dyadic target,
    found by grid inversion."""
    ints = [d.round_scaled_int(-p) for d in target]
    return dense_index(p, ints)


@dataclass(frozen=True)
class MetricSpace:
    """A metric with a dense enumeration; carried around as a plain value."""

    dimension: int
    distance: Callable[[Point, Point], CReal]
    dense: Callable[[int], Point]


def euclidean_space(dimension: int) -> MetricSpace:
    if dimension < 1:
        raise ValueError("dimension must be >= 1")
    return MetricSpace(
        dimension=dimension,
        distance=max_norm_dist,
        dense=lambda i: dense_point(i, dimension),
    )


def point_limit(seq: Callable[[int], Point], dimension: int) -> Point:
    """Coordinatewise limit of a fast Cauchy sequence of points.

    Max-norm fast Cauchy implies each coordinate sequence is fast Cauchy, so
    the coordinatewise construction meets ``d(lim, f(n)) <= 2**-n``.
    """
    cache: dict[int, Point] = {}

    def get(n: int) -> Point:
        pt = cache.get(n)
        if pt is None:
            pt = seq(n)
            if pt.dimension != dimension:
                raise ValueError("sequence dimension mismatch")
            cache[n] = pt
        return pt

    return Point(limit(lambda n, _j=j: get(n).coords[_j]) for j in range(dimension))
