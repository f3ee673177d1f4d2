# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled integer geometry kernels: two-dimensional int64 fast path.

Same algorithms as ``certoset._kernels.pure``; inputs outside the envelope
(dimension != 2, or coordinates past the int64-safe range) are delegated
there.  Both backends return identical exact values; the prunings only
change the work performed.
"""

from array import array

from . import pure as _pure

BACKEND = "fast"

chebyshev = _pure.chebyshev
min_chebyshev = _pure.min_chebyshev

cdef int PROBE_CELL_LIMIT = 8
cdef long long COORD_LIMIT = (<long long> 1) << 60


cdef inline long long _cheb2(long long ax, long long ay,
                             long long bx, long long by) noexcept:
    cdef long long u = ax - bx
    cdef long long v = ay - by
    if u < 0:
        u = -u
    if v < 0:
        v = -v
    return u if u > v else v


cdef _index_array(Py_ssize_t n):
    arr = array("q", bytes(0))
    arr.frombytes(bytes(8 * n))
    return arr


cdef class _Buckets:
    """CSR bucketing of the destination points by cell at grid 2**g."""

    cdef public int g
    cdef dict cells          # (cx, cy) -> bucket id
    cdef long long[::1] dx
    cdef long long[::1] dy
    cdef long long[::1] starts
    cdef long long[::1] order

    def __init__(self, long long[::1] dx, long long[::1] dy, int g):
        cdef Py_ssize_t nd = dx.shape[0]
        cdef Py_ssize_t j, b, nb
        cdef long long cx, cy
        self.g = g
        self.dx = dx
        self.dy = dy
        self.cells = {}
        bucket_of_arr = _index_array(nd)
        cdef long long[::1] bucket_of = bucket_of_arr
        nb = 0
        for j in range(nd):
            cx = dx[j] >> g
            cy = dy[j] >> g
            key = (cx, cy)
            val = self.cells.get(key)
            if val is None:
                self.cells[key] = nb
                bucket_of[j] = nb
                nb += 1
            else:
                bucket_of[j] = <Py_ssize_t> val
        starts_arr = _index_array(nb + 1)
        order_arr = _index_array(nd)
        fill_arr = _index_array(nb)
        cdef long long[::1] starts = starts_arr
        cdef long long[::1] order = order_arr
        cdef long long[::1] fill = fill_arr
        for j in range(nd):
            starts[bucket_of[j] + 1] += 1
        for b in range(nb):
            starts[b + 1] += starts[b]
        for j in range(nd):
            b = bucket_of[j]
            order[starts[b] + fill[b]] = j
            fill[b] += 1
        self.starts = starts
        self.order = order

    cdef bint probe_within(self, long long px, long long py, long long radius):
        # buckets scanned from both ends: covering enumerations are
        # spatially ordered, so a witness tends to sit near one end
        cdef long long clo_x = (px - radius) >> self.g
        cdef long long chi_x = (px + radius) >> self.g
        cdef long long clo_y = (py - radius) >> self.g
        cdef long long chi_y = (py + radius) >> self.g
        cdef long long cx, cy
        cdef Py_ssize_t lo, hi, jl, jh, b
        for cx in range(clo_x, chi_x + 1):
            for cy in range(clo_y, chi_y + 1):
                val = self.cells.get((cx, cy))
                if val is None:
                    continue
                b = <Py_ssize_t> val
                lo = self.starts[b]
                hi = self.starts[b + 1] - 1
                while lo <= hi:
                    jl = self.order[lo]
                    if _cheb2(self.dx[jl], self.dy[jl], px, py) <= radius:
                        return True
                    if lo != hi:
                        jh = self.order[hi]
                        if _cheb2(self.dx[jh], self.dy[jh], px, py) <= radius:
                            return True
                    lo += 1
                    hi -= 1
        return False


cdef class _Rows:
    """Distinct sorted y values with per-row sorted x arrays (CSR); exact
    Chebyshev nearest-neighbour queries sweep rows outward from the query."""

    cdef long long[::1] ys
    cdef long long[::1] xs
    cdef long long[::1] starts
    cdef Py_ssize_t nrows

    def __init__(self, long long[::1] dx, long long[::1] dy):
        cdef Py_ssize_t nd = dx.shape[0]
        cdef Py_ssize_t j
        pairs = sorted(zip([dy[j] for j in range(nd)], [dx[j] for j in range(nd)]))
        ys_list = []
        starts_list = [0]
        xs_arr = _index_array(nd)
        cdef long long[::1] xs = xs_arr
        cdef long long prev_y = 0
        cdef bint have_prev = False
        cdef long long yv, xv
        j = 0
        for yv, xv in pairs:
            xs[j] = xv
            if not have_prev or yv != prev_y:
                ys_list.append(yv)
                starts_list.append(j)
                have_prev = True
                prev_y = yv
            j += 1
        # starts_list currently holds [0, row0_start, row1_start, ...]
        starts_list = starts_list[1:] + [nd]
        ys_arr = array("q", ys_list)
        st_arr = array("q", starts_list)
        self.ys = ys_arr
        self.xs = xs
        self.starts = st_arr
        self.nrows = len(ys_list)

    cdef long long _row_dx(self, Py_ssize_t row, long long x):
        cdef Py_ssize_t lo = self.starts[row]
        cdef Py_ssize_t hi = self.starts[row + 1]
        cdef Py_ssize_t mid
        # first index with xs[idx] >= x
        while lo < hi:
            mid = (lo + hi) >> 1
            if self.xs[mid] < x:
                lo = mid + 1
            else:
                hi = mid
        cdef long long best = -1
        cdef long long d
        if lo < self.starts[row + 1]:
            best = self.xs[lo] - x
        if lo > self.starts[row]:
            d = x - self.xs[lo - 1]
            if best < 0 or d < best:
                best = d
        return best

    cdef long long exact_min(self, long long x, long long y):
        cdef Py_ssize_t lo = 0
        cdef Py_ssize_t hi = self.nrows
        cdef Py_ssize_t mid
        while lo < hi:
            mid = (lo + hi) >> 1
            if self.ys[mid] < y:
                lo = mid + 1
            else:
                hi = mid
        cdef Py_ssize_t below = lo - 1
        cdef Py_ssize_t above = lo
        cdef long long best = -1
        cdef long long dy, d
        cdef bint pick_above
        while True:
            if below < 0 and above >= self.nrows:
                return best
            if below < 0:
                pick_above = True
            elif above >= self.nrows:
                pick_above = False
            else:
                pick_above = (self.ys[above] - y) <= (y - self.ys[below])
            if pick_above:
                dy = self.ys[above] - y
                mid = above
                above += 1
            else:
                dy = y - self.ys[below]
                mid = below
                below -= 1
            if best >= 0 and dy >= best:
                return best
            d = self._row_dx(mid, x)
            if d < dy:
                d = dy
            if best < 0 or d < best:
                best = d


def _gather(points, long long[::1] xs, long long[::1] ys):
    """Copy 2-D integer points into typed arrays; False if out of envelope."""
    cdef Py_ssize_t i = 0
    cdef long long x, y
    for p in points:
        if len(p) != 2:
            return False
        x = p[0]
        y = p[1]
        if x > COORD_LIMIT or x < -COORD_LIMIT or y > COORD_LIMIT or y < -COORD_LIMIT:
            return False
        xs[i] = x
        ys[i] = y
        i += 1
    return True


def oriented_hausdorff(src, dst):
    """Exact one-sided Hausdorff distance; see the pure backend for the
    algorithm description."""
    cdef Py_ssize_t ns = len(src), nd = len(dst)
    if ns == 0 or nd == 0:
        raise ValueError("oriented_hausdorff needs nonempty point sets")
    if src is dst:
        return 0  # exact identity: every point is its own nearest neighbour
    if len(src[0]) != 2:
        return _pure.oriented_hausdorff(src, dst)

    sx_arr = array("q", bytes(8 * ns))
    sy_arr = array("q", bytes(8 * ns))
    dx_arr = array("q", bytes(8 * nd))
    dy_arr = array("q", bytes(8 * nd))
    cdef long long[::1] sx = sx_arr
    cdef long long[::1] sy = sy_arr
    cdef long long[::1] dx = dx_arr
    cdef long long[::1] dy = dy_arr
    try:
        if not _gather(src, sx, sy) or not _gather(dst, dx, dy):
            return _pure.oriented_hausdorff(src, dst)
    except OverflowError:
        return _pure.oriented_hausdorff(src, dst)

    # deterministic rough scale; sizes the grid, never the result
    cdef Py_ssize_t sstep = ns // 4 if ns >= 4 else 1
    cdef Py_ssize_t dstep = nd // 64 if nd >= 64 else 1
    cdef long long est = 0, m, d
    cdef Py_ssize_t i, j, idx
    i = 0
    while i < ns:
        m = -1
        j = 0
        while j < nd:
            d = _cheb2(sx[i], sy[i], dx[j], dy[j])
            if m < 0 or d < m:
                m = d
            j += dstep
        if m > est:
            est = m
        i += sstep

    cdef int g = (<object> est).bit_length()
    cdef _Buckets buckets = _Buckets(dx, dy, g)
    cdef _Rows rows = None

    # deterministic stride permutation spreads spatially ordered input so
    # the running maximum rises quickly
    cdef Py_ssize_t stride = 1
    cdef Py_ssize_t a, b, t
    if ns > 2:
        stride = (ns * 377) // 610
        if stride < 1:
            stride = 1
        while True:
            a = stride
            b = ns
            while b:
                t = a % b
                a = b
                b = t
            if a == 1:
                break
            stride += 1

    cdef long long best = 0
    for i in range(ns):
        idx = (i * stride) % ns
        if (best >> buckets.g) > PROBE_CELL_LIMIT:
            buckets = _Buckets(dx, dy, (<object> best).bit_length())
        if buckets.probe_within(sx[idx], sy[idx], best):
            continue
        if rows is None:
            rows = _Rows(dx, dy)
        m = rows.exact_min(sx[idx], sy[idx])
        if m > best:
            best = m
    return int(best)


def hausdorff(a, b):
    """Exact symmetric Hausdorff distance between finite integer point sets."""
    # plain Python ints: a delegated out-of-envelope result may exceed int64
    u = oriented_hausdorff(a, b)
    v = oriented_hausdorff(b, a)
    return u if u > v else v
