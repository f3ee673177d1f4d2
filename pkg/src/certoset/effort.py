"""Computation budgets.

An effort is a nonnegative integer; an answer produced at effort ``n``
carries quality ``2**-n``.  Partial operations may consume unbounded effort;
callers that need a guaranteed exit (the CLI in particular) install a
ceiling, and every effort-indexed query aborts with
:class:`EffortCeilingExceeded` once the ceiling is passed.
"""

from __future__ import annotations

from contextlib import contextmanager
from contextvars import ContextVar

_ceiling: ContextVar[int | None] = ContextVar("certoset_effort_ceiling", default=None)


class EffortCeilingExceeded(RuntimeError):
    """A semi-decision ran past the configured effort ceiling."""

    def __init__(self, effort: int):
        super().__init__(f"effort ceiling exceeded at effort {effort}")
        self.effort = effort


def check_effort(n) -> int:
    if not isinstance(n, int) or n < 0:
        raise ValueError(f"effort must be a nonnegative integer, got {n!r}")
    ceiling = _ceiling.get()
    if ceiling is not None and n > ceiling:
        raise EffortCeilingExceeded(n)
    return n


def current_ceiling() -> int | None:
    return _ceiling.get()


@contextmanager
def effort_ceiling(limit: int | None):
    """Context manager bounding every effort-indexed query inside it."""
    token = _ceiling.set(limit)
    try:
        yield
    finally:
        _ceiling.reset(token)
