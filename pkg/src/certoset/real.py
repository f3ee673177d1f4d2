"""Exact real numbers as effort-indexed dyadic interval sequences.

A :class:`CReal` produces, for each effort ``n``, a dyadic interval of width
at most ``2**(1-n)`` containing the represented real.  Any two produced
intervals intersect.  Intervals returned over time are nested: each query
merges with the best interval seen so far, so information is never
retracted (this is what makes the comparison operators monotone).

Arithmetic evaluates operands at internally boosted efforts so results meet
the width contract; the per-operation boosts are small constants documented
inline.  Endpoints stay exact dyadics; only multiplication grows mantissas,
and they are trimmed back with outward rounding.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from typing import Callable, Optional

from .dyadic import Dyadic, Interval, ZERO, pow2
from .effort import check_effort
from .kleenean import Kleenean, Side, Sierpinski, select_binary


class CReal:
    """Real number handle; query with :meth:`approx`."""

    __slots__ = ("_fn", "_lock", "_best_effort", "_best", "exact")

    def __init__(self, fn: Callable[[int], Interval], exact: Optional[Dyadic] = None):
        self._fn = fn
        self._lock = threading.Lock()
        self._best_effort = -1
        self._best: Optional[Interval] = None
        self.exact = exact  # set when the value is a known dyadic constant

    def approx(self, effort: int) -> Interval:
        """Interval of width <= 2**(1-effort) containing the value."""
        check_effort(effort)
        with self._lock:
            if self._best_effort >= effort:
                return self._best
        iv = self._fn(effort)
        assert iv.width() <= pow2(1 - effort), (
            f"width contract violated at effort {effort}: {iv!r}"
        )
        with self._lock:
            if self._best is not None:
                iv = iv.intersect(self._best)
            self._best = iv
            if effort > self._best_effort:
                self._best_effort = effort
            return iv

    def __repr__(self):
        if self.exact is not None:
            return f"CReal({self.exact.compact_str()})"
        if self._best is not None:
            return f"CReal(~{self._best.midpoint().decimal_str()})"
        return "CReal(<unevaluated>)"


# -- constructors -----------------------------------------------------------


def creal_from_dyadic(d: Dyadic) -> CReal:
    iv = Interval.point(d)
    return CReal(lambda _n: iv, exact=d)


def creal_from_int(n: int) -> CReal:
    return creal_from_dyadic(Dyadic(n))


def creal_from_fraction(fr: Fraction) -> CReal:
    """Exact rational constant (used for non-dyadic inputs)."""
    den = fr.denominator
    if den & (den - 1) == 0:
        return creal_from_dyadic(Dyadic.from_fraction(fr))
    num = fr.numerator

    def fn(n):
        g = n + 2
        lo = (num << g) // den  # floor
        return Interval(Dyadic(lo, -g), Dyadic(lo + 1, -g))

    return CReal(fn)


def creal_from_function(fn: Callable[[int], Interval]) -> CReal:
    """Wrap a raw interval sequence.  The caller guarantees the width and
    consistency contracts; widths are asserted at query time."""
    return CReal(fn)


# -- arithmetic --------------------------------------------------------------

_TRIM_GUARD = 4  # trim grid 2^-(n+4): adds at most 2^-(n+3) width


def _trim(iv: Interval, n: int) -> Interval:
    return iv.trim(-(n + _TRIM_GUARD))


def add(x: CReal, y: CReal) -> CReal:
    if x.exact is not None and y.exact is not None:
        return creal_from_dyadic(x.exact + y.exact)
    # operands at n+2: width <= 2*2^-(n+1) = 2^-n, plus trim slack
    return CReal(lambda n: _trim(x.approx(n + 2) + y.approx(n + 2), n))


def sub(x: CReal, y: CReal) -> CReal:
    if x.exact is not None and y.exact is not None:
        return creal_from_dyadic(x.exact - y.exact)
    return CReal(lambda n: _trim(x.approx(n + 2) - y.approx(n + 2), n))


def neg(x: CReal) -> CReal:
    if x.exact is not None:
        return creal_from_dyadic(-x.exact)
    return CReal(lambda n: -x.approx(n))


def abs_(x: CReal) -> CReal:
    if x.exact is not None:
        return creal_from_dyadic(abs(x.exact))
    return CReal(lambda n: x.approx(n).abs_())


def max_(x: CReal, y: CReal) -> CReal:
    if x.exact is not None and y.exact is not None:
        return creal_from_dyadic(max(x.exact, y.exact))
    return CReal(lambda n: x.approx(n).max_(y.approx(n)))


def min_(x: CReal, y: CReal) -> CReal:
    if x.exact is not None and y.exact is not None:
        return creal_from_dyadic(min(x.exact, y.exact))
    return CReal(lambda n: x.approx(n).min_(y.approx(n)))


def mul(x: CReal, y: CReal) -> CReal:
    if x.exact is not None and y.exact is not None:
        return creal_from_dyadic(x.exact * y.exact)

    def fn(n):
        # magnitude bounds from a coarse pass size the effort boost:
        # w(xy) <= Mx*wy + My*wx + wx*wy <= 2^(1-e) * (Mx + My + 1)
        a = x.approx(n + 2)
        b = y.approx(n + 2)
        bound = max(abs(a.lo), abs(a.hi)) + max(abs(b.lo), abs(b.hi)) + Dyadic(1)
        e = n + 3 + max(0, bound.mag_exp())
        return _trim(x.approx(e) * y.approx(e), n)

    return CReal(fn)


def scale_by_dyadic(x: CReal, c: Dyadic) -> CReal:
    """Exact scaling by a dyadic constant."""
    if c.is_zero():
        return creal_from_dyadic(ZERO)
    if x.exact is not None:
        return creal_from_dyadic(x.exact * c)
    boost = max(0, c.mag_exp())
    return CReal(lambda n: x.approx(n + boost).scale(c))


def translate_by_dyadic(x: CReal, d: Dyadic) -> CReal:
    """Exact translation by a dyadic constant."""
    if x.exact is not None:
        return creal_from_dyadic(x.exact + d)
    return CReal(lambda n: x.approx(n).translate(d))


ARITH_OPS = {
    "add": add,
    "sub": sub,
    "mul": mul,
    "neg": neg,
    "abs": abs_,
    "max": max_,
    "min": min_,
}


def arith(op: str, x: CReal, y: CReal | None = None) -> CReal:
    """Dispatch-style entry point over the arithmetic table."""
    fn = ARITH_OPS[op]
    if op in ("neg", "abs"):
        if y is not None:
            raise ValueError(f"{op} is unary")
        return fn(x)
    if y is None:
        raise ValueError(f"{op} is binary")
    return fn(x, y)


def creal_max_list(items: list[CReal]) -> CReal:
    """Balanced max-reduction (keeps evaluation depth logarithmic)."""
    if not items:
        raise ValueError("empty max")
    while len(items) > 1:
        items = [
            max_(items[i], items[i + 1]) if i + 1 < len(items) else items[i]
            for i in range(0, len(items), 2)
        ]
    return items[0]


# -- comparisons --------------------------------------------------------------


def lt_semidec(x: CReal, y: CReal) -> Sierpinski:
    """Semi-decision of ``x < y``; never fires when ``x >= y``.

    Commits only with a ``2**-(e+1)`` safety margin between the intervals.
    The margin costs at most one extra effort level and guarantees that a
    commitment survives perturbing the inputs by one quantum of the
    information actually consumed (which is what makes the spied modulus of
    continuity in :mod:`certoset.opensets` sound for the operators shipped
    here).
    """

    def fn(e):
        a = x.approx(e)
        b = y.approx(e)
        if a.hi + pow2(-(e + 1)) < b.lo:
            return True
        return None

    return Sierpinski(Kleenean(fn))


def soft_compare(x: CReal, y: CReal, n: int, max_effort: int | None = None) -> bool:
    """Total comparison with a ``2**-n`` indifference band.

    ``True`` whenever ``x <= y - 2**-n``, ``False`` whenever
    ``y <= x - 2**-n``; either answer is acceptable in between.  Realized by
    racing the two semi-decisions ``x < y + 2**-n`` and ``y < x + 2**-n``
    (left probed first at each effort).
    """
    eps = pow2(-n)
    a = lt_semidec(x, translate_by_dyadic(y, eps))
    b = lt_semidec(y, translate_by_dyadic(x, eps))
    side = select_binary(a.as_kleenean(), b.as_kleenean(), max_effort=max_effort)
    return side is Side.LEFT


def approx_dyadic(x: CReal, p: int) -> Dyadic:
    """Dyadic within ``2**-p`` of ``x``: the midpoint of the effort-``(p+1)``
    interval rounded onto the ``2**-(p+1)`` grid."""
    check_effort(p)
    return x.approx(p + 1).midpoint().round_to_exp(-(p + 1))


# -- limits -------------------------------------------------------------------


def _memo_creal_seq(seq: Callable[[int], CReal]) -> Callable[[int], CReal]:
    cache: dict[int, CReal] = {}
    lock = threading.Lock()

    def get(i: int) -> CReal:
        with lock:
            r = cache.get(i)
            if r is None:
                r = seq(i)
                cache[i] = r
            return r

    return get


def limit(seq: Callable[[int], CReal]) -> CReal:
    """Limit of a fast Cauchy sequence (``|f(n) - f(m)| <= 2^-n + 2^-m``).

    The result ``r`` satisfies ``|r - f(n)| <= 2**-n``.  The contract on the
    input is the caller's obligation; garbage in, garbage out.
    """
    get = _memo_creal_seq(seq)
    # approx(n) = interval of f(n+1) at effort n+1, widened by 2^-(n+1):
    # width <= 2^-n + 2*2^-(n+1) = 2^(1-n), and the limit lies inside.
    return CReal(lambda n: get(n + 1).approx(n + 1).widen(pow2(-(n + 1))))


def extended_limit(seq: Callable[[int], CReal]) -> CReal:
    """Total extension of :func:`limit`.

    On fast Cauchy input it returns the limit; on arbitrary input it returns
    some real.  The sequence is sped up by three indices and then walked one
    step at a time, racing the semi-decisions
    ``|f'(n) - f'(n+1)| < 2**-(n+1)`` against ``... > 2**-(n+2)``; at the
    first step where the "too far apart" branch wins the walk freezes and
    repeats the current value forever.
    """
    get = _memo_creal_seq(seq)
    fast = lambda n: get(n + 3)
    walk: list[CReal] = []
    frozen = [False]
    lock = threading.Lock()

    def extend_to(idx: int) -> None:
        with lock:
            if not walk:
                walk.append(fast(0))
            while len(walk) <= idx:
                n = len(walk) - 1
                if frozen[0]:
                    walk.append(walk[-1])
                    continue
                gap = abs_(sub(fast(n), fast(n + 1)))
                close = lt_semidec(gap, creal_from_dyadic(pow2(-(n + 1))))
                apart = lt_semidec(creal_from_dyadic(pow2(-(n + 2))), gap)
                side = select_binary(close.as_kleenean(), apart.as_kleenean())
                if side is Side.LEFT:
                    walk.append(fast(n + 1))
                else:
                    frozen[0] = True
                    walk.append(walk[-1])

    def g(n: int) -> CReal:
        extend_to(n)
        return walk[n]

    # the walk satisfies |g(n) - g(n+1)| <= 2^-(n+1), hence is fast Cauchy
    return limit(g)


# -- certified square roots ---------------------------------------------------


def _newton_isqrt(n: int) -> int:
    """Exact integer square root by Newton iteration (seed: the power of two
    just above the root), with a final certified adjustment."""
    if n < 0:
        raise ValueError("negative radicand")
    if n == 0:
        return 0
    x = 1 << ((n.bit_length() + 1) // 2)
    while True:
        y = (x + n // x) // 2
        if y >= x:
            break
        x = y
    while x * x > n:
        x -= 1
    while (x + 1) * (x + 1) <= n:
        x += 1
    return x


def sqrt_int(a: int) -> CReal:
    """``sqrt(a)`` for an integer ``a >= 0``, as the limit of certified
    dyadic Newton brackets: the ``n``-th term is within ``2**-(n+1)`` of the
    root, so the sequence is fast Cauchy by construction."""
    if a < 0:
        raise ValueError("negative radicand")

    def approximant(n: int) -> CReal:
        g = n + 1
        r = _newton_isqrt(a << (2 * g))
        return creal_from_dyadic(Dyadic(r, -g))

    return limit(approximant)
