"""Exact integer geometry kernels, pure Python reference backend.

All functions work on tuples of Python integers (scaled dyadic midpoints)
and return exact integers.  The compiled backend in ``_fast.pyx`` mirrors
these algorithms; both must produce identical results, since covering
outputs and CLI artifacts depend on them byte for byte.  Every pruning step
below is exact: pruning changes the work done, never the value returned.
"""

from __future__ import annotations

from bisect import bisect_left
from itertools import product
from math import gcd

BACKEND = "pure"

_PROBE_CELL_LIMIT = 8  # rebucket once best >> g exceeds this
_RING_BUDGET_RADIUS = 64


def chebyshev(p, q) -> int:
    return max(abs(a - b) for a, b in zip(p, q))


def min_chebyshev(q, pts) -> int:
    """Exact min Chebyshev distance from ``q`` to a nonempty point list."""
    if not pts:
        raise ValueError("empty point list")
    best = None
    for p in pts:
        d = chebyshev(p, q)
        if best is None or d < best:
            best = d
    return best


def _cell_of(p, g):
    return tuple(c >> g for c in p)


def _build_buckets(dst, g):
    buckets: dict = {}
    for t in dst:
        buckets.setdefault(_cell_of(t, g), []).append(t)
    return buckets


def _probe_within(s, radius, g, buckets) -> bool:
    """Is some bucketed point within ``radius`` of ``s``?  Callers keep
    ``radius >> g`` small, so the scanned cell box is O(1).  Buckets are
    scanned from both ends: covering enumerations are spatially ordered, so
    a witness tends to sit near one end whichever side ``s`` is on."""
    ranges = [range((c - radius) >> g, ((c + radius) >> g) + 1) for c in s]
    for cell in product(*ranges):
        pts = buckets.get(cell)
        if pts is None:
            continue
        i, j = 0, len(pts) - 1
        while i <= j:
            if chebyshev(pts[i], s) <= radius:
                return True
            if i != j and chebyshev(pts[j], s) <= radius:
                return True
            i += 1
            j -= 1
    return False


# -- exact nearest neighbour --------------------------------------------------


def _build_rows(dst):
    """Dimension-2 structure: distinct y values (sorted) with sorted x
    arrays; exact Chebyshev nearest-neighbour queries sweep rows outward."""
    by_y: dict = {}
    for x, y in dst:
        by_y.setdefault(y, []).append(x)
    ys = sorted(by_y)
    return ys, [sorted(by_y[y]) for y in ys]


def _row_dx(xs, x) -> int:
    i = bisect_left(xs, x)
    best = None
    if i < len(xs):
        best = xs[i] - x
    if i > 0:
        d = x - xs[i - 1]
        if best is None or d < best:
            best = d
    return best


def _exact_min_rows(s, rows) -> int:
    """Exact ``min_t cheb(s, t)`` over the row structure: visit rows by
    increasing ``|dy|``; within a row the Chebyshev distance is
    ``max(|dy|, nearest |dx|)``; stop once ``|dy|`` alone reaches the best."""
    x, y = s
    ys, xrows = rows
    k = bisect_left(ys, y)
    lo, hi = k - 1, k
    best = None
    while True:
        pick_hi: bool
        if lo < 0 and hi >= len(ys):
            return best
        if lo < 0:
            pick_hi = True
        elif hi >= len(ys):
            pick_hi = False
        else:
            pick_hi = (ys[hi] - y) <= (y - ys[lo])
        if pick_hi:
            dy = ys[hi] - y
            row = xrows[hi]
            hi += 1
        else:
            dy = y - ys[lo]
            row = xrows[lo]
            lo -= 1
        if best is not None and dy >= best:
            return best
        d = _row_dx(row, x)
        if d < dy:
            d = dy
        if best is None or d < best:
            best = d


def _exact_min_sorted(xs, x) -> int:
    return _row_dx(xs, x)


def _ring_cells(center, r):
    dim = len(center)
    if r == 0:
        yield center
        return
    for offs in product(range(-r, r + 1), repeat=dim):
        if max(abs(o) for o in offs) == r:
            yield tuple(c + o for c, o in zip(center, offs))


def _min_via_rings(s, g, buckets, dst):
    """Exact nearest-distance search over bucketed points (any dimension).

    Expands Chebyshev cell rings; every point in an unvisited ring is
    farther than ``r << g``, so the search may stop once the best candidate
    is at most that.  Falls back to a brute scan if the walk degenerates.
    """
    center = _cell_of(s, g)
    best = None
    r = 0
    while True:
        for cell in _ring_cells(center, r):
            pts = buckets.get(cell)
            if pts is None:
                continue
            for p in pts:
                d = chebyshev(p, s)
                if best is None or d < best:
                    best = d
        if best is not None and best <= (r << g):
            return best
        r += 1
        if r > _RING_BUDGET_RADIUS:
            return min_chebyshev(s, dst)


def _grid_estimate(src, dst) -> int:
    """Deterministic rough scale of nearest distances; only sizes the cell
    grid, never affects returned values."""
    est = 0
    n_src, n_dst = len(src), len(dst)
    src_step = max(1, n_src // 4)
    dst_step = max(1, n_dst // 64)
    for i in range(0, n_src, src_step):
        s = src[i]
        m = None
        for j in range(0, n_dst, dst_step):
            d = chebyshev(dst[j], s)
            if m is None or d < m:
                m = d
        if m > est:
            est = m
    return est


def _stride_order(n: int):
    """Deterministic permutation of ``range(n)`` that spreads spatially
    ordered input, so the running maximum rises quickly."""
    if n <= 2:
        return range(n)
    stride = max(1, (n * 377) // 610)  # golden-ratio-ish
    while gcd(stride, n) != 1:
        stride += 1
    return ((i * stride) % n for i in range(n))


def oriented_hausdorff(src, dst) -> int:
    """Exact one-sided Hausdorff distance ``max_s min_t cheb(s, t)``.

    Implements the max-of-min recurrences with exact prunings: a point with
    any neighbour within the running maximum cannot raise it (bucket probe),
    and the exact nearest-neighbour searches for the remaining points use
    the row structure (dimension 2), a sorted array (dimension 1), or cell
    rings (higher dimensions).
    """
    if not src or not dst:
        raise ValueError("oriented_hausdorff needs nonempty point sets")
    if src is dst:
        return 0  # exact identity: every point is its own nearest neighbour
    dim = len(src[0])
    if any(len(p) != dim for p in src) or any(len(p) != dim for p in dst):
        raise ValueError("dimension mismatch")

    g = _grid_estimate(src, dst).bit_length()
    buckets = _build_buckets(dst, g)
    exact_struct = None

    best = 0
    for idx in _stride_order(len(src)):
        s = src[idx]
        if (best >> g) > _PROBE_CELL_LIMIT:
            g = best.bit_length()
            buckets = _build_buckets(dst, g)
        if _probe_within(s, best, g, buckets):
            continue
        if dim == 2:
            if exact_struct is None:
                exact_struct = _build_rows(dst)
            m = _exact_min_rows(s, exact_struct)
        elif dim == 1:
            if exact_struct is None:
                exact_struct = sorted(t[0] for t in dst)
            m = _exact_min_sorted(exact_struct, s[0])
        else:
            m = _min_via_rings(s, g, buckets, dst)
        if m > best:
            best = m
    return best


def hausdorff(a, b) -> int:
    """Exact symmetric Hausdorff distance between finite integer point sets."""
    return max(oriented_hausdorff(a, b), oriented_hausdorff(b, a))
