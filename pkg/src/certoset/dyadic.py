"""Exact dyadic rationals and closed dyadic intervals.

A dyadic is ``m * 2**e`` with an arbitrary-precision integer mantissa and a
signed exponent, kept canonical (odd mantissa, or ``0 * 2**0``).  Everything
in this module is exact; directed rounding enters only through the explicit
``floor_to_exp`` / ``ceil_to_exp`` / ``trim`` helpers that the real-number
layer uses for outward rounding.
"""

from __future__ import annotations

from fractions import Fraction


class Dyadic:
    """Exact binary rational ``m * 2**e``."""

    __slots__ = ("m", "e")

    def __init__(self, m: int, e: int = 0):
        if m == 0:
            self.m = 0
            self.e = 0
            return
        if m % 2 == 0:
            shift = (m & -m).bit_length() - 1
            m >>= shift
            e += shift
        self.m = m
        self.e = e

    # -- constructors ----------------------------------------------------

    @staticmethod
    def from_int(n: int) -> "Dyadic":
        return Dyadic(n, 0)

    @staticmethod
    def from_fraction(fr: Fraction) -> "Dyadic":
        den = fr.denominator
        if den & (den - 1):
            raise ValueError(f"{fr} is not a dyadic rational")
        return Dyadic(fr.numerator, -(den.bit_length() - 1))

    @staticmethod
    def parse(text: str) -> "Dyadic":
        """Parse ``m*2^e``, integers, fractions ``p/q`` and finite decimals.

        Fractions and decimals must denote dyadic rationals exactly.
        """
        text = text.strip()
        if "*2^" in text:
            mant, _, expo = text.partition("*2^")
            return Dyadic(int(mant), int(expo))
        return Dyadic.from_fraction(Fraction(text))

    # -- queries ----------------------------------------------------------

    def is_zero(self) -> bool:
        return self.m == 0

    def sign(self) -> int:
        return (self.m > 0) - (self.m < 0)

    def as_fraction(self) -> Fraction:
        if self.e >= 0:
            return Fraction(self.m << self.e)
        return Fraction(self.m, 1 << -self.e)

    def mag_exp(self) -> int:
        """Smallest ``c`` with ``|self| <= 2**c``; undefined for zero."""
        if self.m == 0:
            raise ValueError("zero has no magnitude exponent")
        am = abs(self.m)
        bits = am.bit_length()
        if am == (1 << (bits - 1)):
            return bits - 1 + self.e
        return bits + self.e

    # -- exact arithmetic ---------------------------------------------------

    def _aligned(self, other: "Dyadic") -> tuple[int, int, int]:
        e = min(self.e, other.e)
        return self.m << (self.e - e), other.m << (other.e - e), e

    def __add__(self, other: "Dyadic") -> "Dyadic":
        a, b, e = self._aligned(other)
        return Dyadic(a + b, e)

    def __sub__(self, other: "Dyadic") -> "Dyadic":
        a, b, e = self._aligned(other)
        return Dyadic(a - b, e)

    def __mul__(self, other: "Dyadic") -> "Dyadic":
        return Dyadic(self.m * other.m, self.e + other.e)

    def __neg__(self) -> "Dyadic":
        return Dyadic(-self.m, self.e)

    def __abs__(self) -> "Dyadic":
        return Dyadic(abs(self.m), self.e)

    def shifted(self, k: int) -> "Dyadic":
        """Exact multiplication by ``2**k``."""
        if self.m == 0:
            return self
        return Dyadic(self.m, self.e + k)

    def half(self) -> "Dyadic":
        return self.shifted(-1)

    # -- order ------------------------------------------------------------

    def _cmp(self, other: "Dyadic") -> int:
        a, b, _ = self._aligned(other)
        return (a > b) - (a < b)

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __eq__(self, other):
        return isinstance(other, Dyadic) and self.m == other.m and self.e == other.e

    def __hash__(self):
        return hash((self.m, self.e))

    # -- directed rounding --------------------------------------------------

    def floor_to_exp(self, g: int) -> "Dyadic":
        """Largest multiple of ``2**g`` that is <= self."""
        if self.e >= g:
            return self
        return Dyadic(self.m >> (g - self.e), g)

    def ceil_to_exp(self, g: int) -> "Dyadic":
        """Smallest multiple of ``2**g`` that is >= self."""
        if self.e >= g:
            return self
        k = g - self.e
        return Dyadic(-((-self.m) >> k), g)

    def round_to_exp(self, g: int) -> "Dyadic":
        """Nearest multiple of ``2**g``, halves rounded up (deterministic)."""
        if self.e >= g:
            return self
        k = g - self.e
        return Dyadic((self.m + (1 << (k - 1))) >> k, g)

    def scaled_int(self, g: int) -> int:
        """Exact integer ``self * 2**-g``; raises if not representable."""
        if self.e < g:
            raise ValueError(f"{self} not on the 2^{g} grid")
        return self.m << (self.e - g)

    def round_scaled_int(self, g: int) -> int:
        """Nearest integer to ``self * 2**-g`` (halves up)."""
        if self.e >= g:
            return self.m << (self.e - g)
        k = g - self.e
        return (self.m + (1 << (k - 1))) >> k

    # -- rendering ----------------------------------------------------------

    def decimal_str(self) -> str:
        """Exact finite decimal expansion."""
        if self.e >= 0:
            return str(self.m << self.e)
        k = -self.e
        am = abs(self.m)
        sign = "-" if self.m < 0 else ""
        whole, rest = am >> k, am & ((1 << k) - 1)
        if rest == 0:
            return f"{sign}{whole}"
        digits = str(rest * 5**k).rjust(k, "0").rstrip("0")
        return f"{sign}{whole}.{digits}"

    def compact_str(self) -> str:
        """Canonical wire form: integer when exact, else ``m*2^e``."""
        if self.e >= 0:
            return str(self.m << self.e)
        return f"{self.m}*2^{self.e}"

    def __repr__(self):
        return f"Dyadic({self.compact_str()})"


ZERO = Dyadic(0)
ONE = Dyadic(1)


def pow2(k: int) -> Dyadic:
    """The dyadic ``2**k``."""
    return Dyadic(1, k)


class Interval:
    """Closed interval with exact dyadic endpoints, ``lo <= hi``."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo: Dyadic, hi: Dyadic):
        if lo > hi:
            raise ValueError(f"interval endpoints out of order: {lo!r} > {hi!r}")
        self.lo = lo
        self.hi = hi

    @staticmethod
    def point(d: Dyadic) -> "Interval":
        return Interval(d, d)

    def width(self) -> Dyadic:
        return self.hi - self.lo

    def midpoint(self) -> Dyadic:
        return (self.lo + self.hi).half()

    def contains(self, d: Dyadic) -> bool:
        return self.lo <= d <= self.hi

    def intersects(self, other: "Interval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def intersect(self, other: "Interval") -> "Interval":
        lo = self.lo if self.lo >= other.lo else other.lo
        hi = self.hi if self.hi <= other.hi else other.hi
        if lo > hi:
            raise RuntimeError("inconsistent interval refinement (empty meet)")
        return Interval(lo, hi)

    # -- exact interval arithmetic ---------------------------------------

    def __add__(self, other: "Interval") -> "Interval":
        return Interval(self.lo + other.lo, self.hi + other.hi)

    def __sub__(self, other: "Interval") -> "Interval":
        return Interval(self.lo - other.hi, self.hi - other.lo)

    def __neg__(self) -> "Interval":
        return Interval(-self.hi, -self.lo)

    def __mul__(self, other: "Interval") -> "Interval":
        cands = (
            self.lo * other.lo,
            self.lo * other.hi,
            self.hi * other.lo,
            self.hi * other.hi,
        )
        return Interval(min(cands), max(cands))

    def abs_(self) -> "Interval":
        if self.lo.sign() >= 0:
            return self
        if self.hi.sign() <= 0:
            return -self
        return Interval(ZERO, max(-self.lo, self.hi))

    def max_(self, other: "Interval") -> "Interval":
        return Interval(max(self.lo, other.lo), max(self.hi, other.hi))

    def min_(self, other: "Interval") -> "Interval":
        return Interval(min(self.lo, other.lo), min(self.hi, other.hi))

    def scale(self, c: Dyadic) -> "Interval":
        a, b = self.lo * c, self.hi * c
        return Interval(a, b) if a <= b else Interval(b, a)

    def translate(self, d: Dyadic) -> "Interval":
        return Interval(self.lo + d, self.hi + d)

    def widen(self, r: Dyadic) -> "Interval":
        return Interval(self.lo - r, self.hi + r)

    def trim(self, g: int) -> "Interval":
        # outward rounding onto the 2^g grid; keeps mantissas short
        return Interval(self.lo.floor_to_exp(g), self.hi.ceil_to_exp(g))

    def clamp_nonnegative(self) -> "Interval":
        # tightening for quantities known to be >= 0
        if self.lo.sign() >= 0:
            return self
        if self.hi.sign() < 0:
            raise RuntimeError("interval for a nonnegative quantity is negative")
        return Interval(ZERO, self.hi)

    def __repr__(self):
        return f"Interval[{self.lo.compact_str()}, {self.hi.compact_str()}]"
