"""Lazy three-valued truth values and countable search over them.

A :class:`Kleenean` answers ``True``, ``False`` or ``None`` (undetermined)
when queried at a given effort.  Committed answers never change: queries are
monotone in observation order, and a commitment observed once is latched and
served for every later query.  :class:`Sierpinski` restricts Kleeneans to
the semi-decidable fragment (never ``False``): "eventually ``True``" is the
carried information.

The search operators fix one concrete evaluation schedule (documented on
each function) so that results are reproducible run to run.
"""

from __future__ import annotations

from enum import Enum
from typing import Callable, Optional

from .effort import EffortCeilingExceeded, check_effort

Trivalent = Optional[bool]


class Side(Enum):
    LEFT = "left"
    RIGHT = "right"


class Kleenean:
    """Effort-indexed lazy Boolean with monotone commitment."""

    __slots__ = ("_fn", "_committed")

    def __init__(self, fn: Callable[[int], Trivalent]):
        self._fn = fn
        self._committed: Trivalent = None

    @staticmethod
    def const(value: Trivalent) -> "Kleenean":
        """Constant truth value; ``None`` never answers."""
        return Kleenean(lambda _e, _v=value: _v)

    @staticmethod
    def true_at(commit_effort: int) -> "Kleenean":
        """``True`` from the given effort on; handy for tests and examples."""
        return Kleenean(lambda e: True if e >= commit_effort else None)

    @staticmethod
    def false_at(commit_effort: int) -> "Kleenean":
        return Kleenean(lambda e: False if e >= commit_effort else None)

    def query(self, effort: int) -> Trivalent:
        check_effort(effort)
        committed = self._committed
        if committed is not None:
            return committed
        value = self._fn(effort)
        if value is not None:
            self._committed = value  # latch: commitments are permanent
        return value


def kleene_not(a: Kleenean) -> Kleenean:
    def fn(e):
        v = a.query(e)
        return None if v is None else not v

    return Kleenean(fn)


def kleene_and(a: Kleenean, b: Kleenean) -> Kleenean:
    def fn(e):
        va = a.query(e)
        if va is False:
            return False
        vb = b.query(e)
        if vb is False:
            return False
        if va is True and vb is True:
            return True
        return None

    return Kleenean(fn)


def kleene_or(a: Kleenean, b: Kleenean) -> Kleenean:
    def fn(e):
        va = a.query(e)
        if va is True:
            return True
        vb = b.query(e)
        if vb is True:
            return True
        if va is False and vb is False:
            return False
        return None

    return Kleenean(fn)


def _memo_seq(seq: Callable[[int], Kleenean]) -> Callable[[int], Kleenean]:
    cache: dict[int, Kleenean] = {}

    def get(i: int) -> Kleenean:
        k = cache.get(i)
        if k is None:
            k = seq(i)
            cache[i] = k
        return k

    return get


def countable_or(seq: Callable[[int], Kleenean]) -> Kleenean:
    """Disjunction of countably many Kleeneans.

    Never answers ``False``.  Schedule: at effort ``e`` the terms with index
    ``i <= e`` are each queried at effort ``e``, in ascending index order.
    """
    get = _memo_seq(seq)

    def fn(e):
        for i in range(e + 1):
            if get(i).query(e) is True:
                return True
        return None

    return Kleenean(fn)


class Sierpinski:
    """Semi-decision: a Kleenean that never answers ``False``."""

    __slots__ = ("_k",)

    def __init__(self, k: Kleenean):
        self._k = k

    @staticmethod
    def defined() -> "Sierpinski":
        return Sierpinski(Kleenean.const(True))

    @staticmethod
    def undefined() -> "Sierpinski":
        return Sierpinski(Kleenean.const(None))

    @staticmethod
    def from_kleenean(k: Kleenean) -> "Sierpinski":
        """Retraction onto the semi-decidable fragment: ``False`` becomes
        "never defined"."""
        return Sierpinski(Kleenean(lambda e: True if k.query(e) is True else None))

    def as_kleenean(self) -> Kleenean:
        return self._k

    def query(self, effort: int) -> Trivalent:
        v = self._k.query(effort)
        if v is False:
            raise RuntimeError("Sierpinski value answered False")
        return v

    def holds_by(self, effort: int) -> bool:
        """True iff the semi-decision has fired at some effort <= effort.

        Efforts are probed in increasing order so commitment latching keeps
        the schedule reproducible.
        """
        for e in range(effort + 1):
            if self.query(e) is True:
                return True
        return False


def sierpinski_and(a: Sierpinski, b: Sierpinski) -> Sierpinski:
    return Sierpinski(kleene_and(a.as_kleenean(), b.as_kleenean()))


def sierpinski_countable_or(seq: Callable[[int], Sierpinski]) -> Sierpinski:
    return Sierpinski(countable_or(lambda i: seq(i).as_kleenean()))


def select_binary(a: Kleenean, b: Kleenean, max_effort: int | None = None) -> Side:
    """Return a side whose Kleenean is ``True``, given at least one
    eventually is.

    Schedule: efforts 0, 1, 2, ... with ``a`` probed before ``b`` at each
    effort; diverges if neither side ever answers ``True`` (bound the search
    with ``max_effort`` to abort instead).
    """
    e = 0
    while True:
        if max_effort is not None and e > max_effort:
            raise EffortCeilingExceeded(e)
        if a.query(e) is True:
            return Side.LEFT
        if b.query(e) is True:
            return Side.RIGHT
        e += 1


def countable_select(seq: Callable[[int], Kleenean], max_effort: int | None = None) -> int:
    """Index of some eventually-true member of the sequence.

    Dovetail schedule: at outer effort ``m`` every ``seq(i)`` with
    ``i <= m`` is queried at effort ``m``; the first ``True`` in ascending
    index order wins.  Repeated calls on identical inputs return identical
    indices.
    """
    get = _memo_seq(seq)
    m = 0
    while True:
        if max_effort is not None and m > max_effort:
            raise EffortCeilingExceeded(m)
        for i in range(m + 1):
            if get(i).query(m) is True:
                return i
        m += 1


def indicator_sequence(k: Kleenean) -> Callable[[int], int]:
    """The 0/1 trace of a Kleenean: ``f(n) = 1`` iff ``k`` is True by
    effort ``n``.  ``k`` eventually True iff some ``f(n) = 1``."""

    def f(n: int) -> int:
        return 1 if k.query(n) is True else 0

    return f
