"""Benchmark: compiled kernel extension vs pure-Python fallback.

Times the exact one-sided Hausdorff kernel on covering-style workloads and
prints a comparison table.  Results are identical between backends (the
suite asserts this); only the wall time differs.

Run:  python benchmarks/bench_kernels.py  [--quick]
"""

import argparse
import random
import sys
import time

from certoset._kernels import pure

try:
    from certoset._kernels import _fast as fast
except ImportError:
    fast = None

from certoset.dyadic import Dyadic
from certoset.fractals import triangle
from certoset.covers import scale_translate


def triangle_pair(level, scale):
    t = triangle()
    moved = scale_translate(t, Dyadic(1), (Dyadic(1), Dyadic(0)))
    a, _ = t.covering_mids(level, scale)
    b, _ = moved.covering_mids(level, scale)
    return a, b


def jittered_grid(n_side, jitter, seed):
    rng = random.Random(seed)
    return [
        (16 * i + rng.randint(-jitter, jitter), 16 * j + rng.randint(-jitter, jitter))
        for i in range(n_side)
        for j in range(n_side)
    ]


def run_case(name, a, b):
    rows = []
    for impl in filter(None, (fast, pure)):
        t0 = time.perf_counter()
        value = impl.hausdorff(a, b)
        dt = time.perf_counter() - t0
        rows.append((impl.BACKEND, value, dt))
    print(f"\n{name}  ({len(a)} x {len(b)} points)")
    base = rows[-1][2]
    for backend, value, dt in rows:
        speedup = base / dt if dt > 0 else float("inf")
        print(f"  {backend:>5}: {dt*1000:9.1f} ms   value={value}   x{speedup:.1f} vs pure")
    values = {v for _, v, _ in rows}
    assert len(values) == 1, "backends disagree"


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--quick", action="store_true", help="smaller workloads")
    args = parser.parse_args()

    if fast is None:
        print("note: compiled kernel unavailable; timing pure backend only")

    level = 8 if args.quick else 9
    a, b = triangle_pair(level, level + 4)
    run_case(f"triangle vs translated triangle, covering level {level}", a, b)

    n = 192 if args.quick else 384
    run_case(
        "jittered grids, small displacement",
        jittered_grid(n, 3, seed=1),
        jittered_grid(n, 3, seed=2),
    )

    run_case(
        "jittered grids, large displacement",
        jittered_grid(n, 3, seed=3),
        [(x + 16 * n, y) for x, y in jittered_grid(n, 3, seed=4)],
    )
    return 0


if __name__ == "__main__":
    sys.exit(main())
