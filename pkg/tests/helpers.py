"""Shared test oracles, kept independent of the library's computation paths.

Everything here works over :class:`fractions.Fraction` (or plain ints) so
expected values come from routes the package itself never takes.
"""

from __future__ import annotations

from fractions import Fraction

from certoset.dyadic import Dyadic, Interval


def frac(x) -> Fraction:
    if isinstance(x, Dyadic):
        return x.as_fraction()
    return Fraction(x)


def cheb_frac(p, q) -> Fraction:
    return max(abs(frac(a) - frac(b)) for a, b in zip(p, q))


def brute_oriented_hausdorff(src, dst) -> Fraction:
    return max(min(cheb_frac(s, t) for t in dst) for s in src)


def brute_hausdorff(a, b) -> Fraction:
    return max(brute_oriented_hausdorff(a, b), brute_oriented_hausdorff(b, a))


def triangle_cheb_distance(p: Fraction, q: Fraction) -> Fraction:
    """Chebyshev distance from (p, q) to the simplex x,y >= 0, x+y <= 1.

    The box [p-t, p+t] x [q-t, q+t] meets the simplex iff p+t >= 0,
    q+t >= 0 and max(0, p-t) + max(0, q-t) <= 1; the minimal such t is the
    distance.  The overlap boundary is linear in each regime, so the minimal
    t is the smallest valid candidate among the regime solutions.
    """
    p, q = Fraction(p), Fraction(q)

    def overlap(t: Fraction) -> bool:
        return max(Fraction(0), p - t) + max(Fraction(0), q - t) <= 1

    candidates = [t for t in (Fraction(0), p - 1, q - 1, (p + q - 1) / 2) if t >= 0 and overlap(t)]
    t_over = min(candidates)
    return max(Fraction(0), -p, -q, t_over)


def interval_contains_fraction(iv: Interval, value: Fraction) -> bool:
    return iv.lo.as_fraction() <= value <= iv.hi.as_fraction()


def assert_creal_near(x, value: Fraction, p: int) -> None:
    """The effort-(p+2) interval certifies |x - value| <= 2**-p."""
    iv = x.approx(p + 2)
    lo, hi = iv.lo.as_fraction(), iv.hi.as_fraction()
    eps = Fraction(1, 2**p)
    assert lo - eps <= value <= hi + eps, (
        f"value {value} not within 2^-{p} of [{lo}, {hi}]"
    )


def creal_certified_below(x, bound: Fraction, effort: int) -> bool:
    return x.approx(effort).hi.as_fraction() < bound


def fire_by(s, max_effort: int):
    """First effort at which a semi-decision fires, or None."""
    for e in range(max_effort + 1):
        if s.query(e) is True:
            return e
    return None
