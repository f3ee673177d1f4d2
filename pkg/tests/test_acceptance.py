"""Acceptance suite: one test per criterion, pinned tolerances, one
pass/fail line each (run with ``pytest -s`` to see the lines live)."""

import json
import os
import random
import subprocess
import sys
import time
from fractions import Fraction

from certoset.covers import hausdorff_finite, set_distance, singleton
from certoset.dyadic import Dyadic, pow2
from certoset.fractals import (
    attractor_via_limit,
    sierpinski_ifs,
    sierpinski_triangle,
    triangle,
)
from certoset.kleenean import Kleenean
from certoset.opensets import Ball, OpenSet, continuity_modulus, meets_test, subset_test
from certoset.real import (
    abs_,
    add,
    creal_from_dyadic,
    creal_from_fraction,
    extended_limit,
    limit,
    max_,
    min_,
    mul,
    neg,
    soft_compare,
    sub,
)
from certoset.space import Point, approx_point, point_from_dyadics

from helpers import brute_hausdorff, frac, triangle_cheb_distance

from gallery_points import pt  # noqa: F401  (shared helper defined below)


def report(num, ok, label):
    status = "PASS" if ok else "FAIL"
    print(f"ACCEPTANCE {num:02d} {status} - {label}")
    assert ok, f"criterion {num}: {label}"


def test_criterion_01_triangle_coverings():
    t = triangle()
    t0 = time.time()
    counts = [len(t.raw_covering(n)) for n in range(7)]
    elapsed6 = time.time() - t0
    ok = counts == [1, 3, 10, 36, 136, 528, 2080]

    # center formula at every level
    for n in range(7):
        side = 2**n
        got = {(c[0], c[1]) for c in t.raw_covering(n)}
        want = {
            (Dyadic(2 * i + 1, -(n + 1)), Dyadic(2 * j + 1, -(n + 1)))
            for i in range(side)
            for j in range(side - i)
        }
        ok = ok and got == want

    # exact covering / intersection checks on the 2^-8 grid (scaled ints)
    for n in range(7):
        sh = 8 - (n + 1) if n + 1 <= 8 else 0
        radius = 1 << (8 - n)
        side = 2**n
        for k in range(0, 257, 1):
            for m in range(0, 257 - k, 8):
                # point (k, m)/2^8: witness indices by grid inversion
                i = min(k >> (8 - n), side - 1) if n <= 8 else k
                j = min(m >> (8 - n), side - 1)
                found = False
                for ii in (i, i - 1):
                    for jj in (j, j - 1):
                        if ii < 0 or jj < 0 or ii + jj >= side:
                            continue
                        cx, cy = (2 * ii + 1) << sh, (2 * jj + 1) << sh
                        if max(abs(k - cx), abs(m - cy)) < radius:
                            found = True
                if not found:
                    ok = False
        for c in t.raw_covering(n):  # centers lie in the triangle exactly
            x, y = frac(c[0]), frac(c[1])
            if not (x >= 0 and y >= 0 and x + y <= 1):
                ok = False

    ok = ok and elapsed6 < 1.0
    report(1, ok, f"triangle coverings, counts+formula+grid checks, {elapsed6:.3f}s at n=6")


def test_criterion_02_sierpinski_coverings():
    t0 = time.time()
    s = sierpinski_triangle()
    counts = [len(s.raw_covering(n)) for n in range(8)]
    elapsed = time.time() - t0
    ok = counts == [3**n for n in range(8)]

    for n in range(8):
        bound = 1 + Fraction(1, 2**n)
        for p in s.covering(n):
            for coord in p.coords:
                iv = coord.approx(n + 4)
                if iv.lo.as_fraction() < -bound or iv.hi.as_fraction() > bound:
                    ok = False

    # self-similarity of center sets at interval tolerance 2^-20
    from certoset.fractals import _halfsum

    tol = Fraction(1, 2**20)
    fresh = sierpinski_triangle()
    anchors = sierpinski_ifs().anchors
    for n in (1, 2, 3):
        lhs = [approx_point(p, 24) for p in s.covering(n + 1)]
        rhs = []
        for raw in fresh.raw_covering(n):
            for d in anchors:
                child = _halfsum(raw, d)
                rhs.append(
                    approx_point(child, 24) if isinstance(child, Point) else tuple(child)
                )
        if len(lhs) != len(rhs):
            ok = False
        for a in lhs:
            if not any(
                max(abs(frac(x) - frac(y)) for x, y in zip(a, b)) <= tol for b in rhs
            ):
                ok = False

    ok = ok and elapsed < 5.0
    report(2, ok, f"sierpinski coverings 3^n, cube bound, self-similarity, {elapsed:.2f}s to n=7")


def test_criterion_03_limit_vs_direct_route():
    direct = sierpinski_triangle()
    via_limit = attractor_via_limit(sierpinski_ifs())
    ok = True
    for n in range(1, 6):
        d = hausdorff_finite(direct.covering(n), via_limit.covering(n))
        iv = d.approx(15)
        bound = 2 * Fraction(1, 2**n) + Fraction(1, 2**12)
        if iv.lo.as_fraction() > bound:
            ok = False
    report(3, ok, "limit route within 2*2^-n + 2^-12 of direct route, n = 1..5")


def test_criterion_04_hausdorff_oracle_equivalence():
    rng = random.Random(2024)
    ok = True
    for _ in range(200):
        dim = rng.choice([1, 2, 3])
        S = [
            point_from_dyadics(
                Dyadic(rng.randint(-64, 64), -rng.randint(0, 5)) for _ in range(dim)
            )
            for _ in range(rng.randint(1, 8))
        ]
        T = [
            point_from_dyadics(
                Dyadic(rng.randint(-64, 64), -rng.randint(0, 5)) for _ in range(dim)
            )
            for _ in range(rng.randint(1, 8))
        ]
        expected = brute_hausdorff(
            [[c.exact for c in p.coords] for p in S],
            [[c.exact for c in p.coords] for p in T],
        )
        iv = hausdorff_finite(S, T).approx(14)
        if not (iv.lo == iv.hi and iv.lo.as_fraction() == expected):
            ok = False
    report(4, ok, "hausdorff_finite equals brute-force oracle exactly, 200 random sets")


def test_criterion_05_located_distance():
    t = triangle()
    cases = [
        ("2", "0"),
        ("1/4", "1/4"),
        ("-1/2", "-1/2"),
        ("-1", "1/4"),
        ("3/4", "3/4"),
        ("0", "-3/4"),
        ("2", "2"),
        ("5/8", "5/8"),
        ("-1/4", "1/2"),
        ("9/8", "-1/8"),
    ]
    ok = True
    worst = 0.0
    eps = Fraction(1, 2**16)
    for a, b in cases:
        expected = triangle_cheb_distance(Fraction(a), Fraction(b))
        t0 = time.time()
        iv = set_distance(t, pt(a, b)).approx(18)
        worst = max(worst, time.time() - t0)
        if not (iv.lo.as_fraction() - eps <= expected <= iv.hi.as_fraction() + eps):
            ok = False
        if (iv.hi - iv.lo).as_fraction() > eps:
            ok = False
    ok = ok and worst < 2.0
    report(5, ok, f"triangle distance at 10 analytic points within 2^-16, worst {worst:.3f}s")


def test_criterion_06_limit_operator():
    geometric = lambda n: creal_from_dyadic(Dyadic(1) - pow2(-n))
    via_limit = limit(geometric)
    via_extended = extended_limit(geometric)
    one = creal_from_dyadic(Dyadic(1))
    ok = True
    for p in (4, 10, 20):
        gap = abs_(sub(via_limit, one))
        if gap.approx(p + 4).lo.as_fraction() > Fraction(1, 2**p):
            ok = False
        gap_e = abs_(sub(via_extended, one))
        if gap_e.approx(p + 4).lo.as_fraction() > Fraction(1, 2**p):
            ok = False
    for n in (0, 4, 9):
        if not via_limit.approx(n).intersects(via_extended.approx(n)):
            ok = False
    report(6, ok, "limit of 1 - 2^-n represents 1 at p in {4,10,20}; extended limit agrees")


def test_criterion_07_soft_compare_soundness():
    rng = random.Random(7171)
    violations = 0
    for _ in range(1000):
        x = Fraction(rng.randint(-256, 256), 2 ** rng.randint(0, 6))
        y = Fraction(rng.randint(-256, 256), 2 ** rng.randint(0, 6))
        n = rng.randint(0, 10)
        out = soft_compare(
            creal_from_fraction(x), creal_from_fraction(y), n, max_effort=120
        )
        band = Fraction(1, 2**n)
        if out is True and not (x < y + band):
            violations += 1
        if out is False and not (y < x + band):
            violations += 1
    report(7, violations == 0, f"soft comparison: {violations} violations in 1000 trials")


def _random_tracked_real(rng, depth):
    if depth == 0 or rng.random() < 0.3:
        d = Dyadic(rng.randint(-64, 64), -rng.randint(0, 6))
        return creal_from_dyadic(d), d.as_fraction()
    op = rng.choice(["add", "sub", "mul", "neg", "abs", "max", "min", "limit"])
    a, fa = _random_tracked_real(rng, depth - 1)
    if op == "neg":
        return neg(a), -fa
    if op == "abs":
        return abs_(a), abs(fa)
    if op == "limit":
        # limit of the constant sequence: same value through the limit path
        return limit(lambda _n, _a=a: _a), fa
    b, fb = _random_tracked_real(rng, depth - 1)
    if op == "add":
        return add(a, b), fa + fb
    if op == "sub":
        return sub(a, b), fa - fb
    if op == "mul":
        return mul(a, b), fa * fb
    if op == "max":
        return max_(a, b), max(fa, fb)
    return min_(a, b), min(fa, fb)


def test_criterion_08_property_suites():
    rng = random.Random(88)
    violations = 0

    # monotone commitment on 10^4 random effort pairs
    for _ in range(10_000):
        commit = rng.randint(0, 14)
        value = rng.choice([True, False])
        k = Kleenean(lambda e, c=commit, v=value: v if e >= c else None)
        n = rng.randint(0, 16)
        m = rng.randint(n, 20)
        vn = k.query(n)
        if vn is not None and k.query(m) != vn:
            violations += 1

    # interval consistency and width on 10^4 random API-built reals
    for _ in range(10_000):
        x, value = _random_tracked_real(rng, rng.randint(1, 3))
        efforts = sorted(rng.sample(range(0, 12), 2))
        ivs = [x.approx(n) for n in efforts]
        for iv, n in zip(ivs, efforts):
            if iv.width() > pow2(1 - n):
                violations += 1
            if not (iv.lo.as_fraction() <= value <= iv.hi.as_fraction()):
                violations += 1
        if not ivs[0].intersects(ivs[1]):
            violations += 1

    report(8, violations == 0, f"kleenean/real property suites: {violations} violations in 2x10^4")


def test_criterion_09_modulus_soundness():
    from gallery_points import corpus_with_points

    rng = random.Random(909)
    violations = 0
    checked = 0
    for name, f, base_points in corpus_with_points():
        for x in base_points:
            m = continuity_modulus(f, x, max_effort=300)
            base = approx_point(x, m + 12)
            for _ in range(100):
                offs = [Dyadic(rng.randint(-31, 31), -(m + 5)) for _ in base]
                y = point_from_dyadics(d + o for d, o in zip(base, offs))
                fired = False
                s = f(y)
                for e in range(m + 40):
                    if s.query(e) is True:
                        fired = True
                        break
                checked += 1
                if not fired:
                    violations += 1
    report(
        9,
        violations == 0,
        f"modulus soundness: {violations} violations over {checked} samples "
        "(5 maps x 20 points x 100 samples)",
    )


def test_criterion_10_compact_overt_testers():
    t = triangle()
    engulfing = OpenSet.from_balls([Ball(pt("1/2", "1/2"), 0)])
    s = subset_test(t, engulfing)
    fired_at = None
    for e in range(17):  # fires far below the 2^16 effort bound
        if s.query(e) is True:
            fired_at = e
            break
    ok = fired_at is not None

    missing_vertex = OpenSet.from_balls([Ball(pt(0, 0), 0)])  # excludes (1, 0)
    s_neg = subset_test(t, missing_vertex)
    for e in range(7):
        if s_neg.query(e) is True:
            ok = False

    inside = OpenSet.from_balls([Ball(pt("1/4", "1/4"), 1)])
    meets_pos = meets_test(t, inside)
    fired = any(meets_pos.query(e) is True for e in range(12))
    ok = ok and fired
    outside = OpenSet.from_balls([Ball(pt(5, 5), 2)])
    meets_neg = meets_test(t, outside)
    for e in range(8):
        if meets_neg.query(e) is True:
            ok = False
    report(10, ok, f"compact tester fires at effort {fired_at}; negatives never fire; overt pair")


ACCEPTANCE_COMMANDS = [
    (("draw", "--set", "triangle", "--level", "4"), "triangle-l4-json"),
    (("draw", "--set", "sierpinski", "--level", "5", "--format", "svg"), "sierpinski-l5-svg"),
    (("draw", "--set", "empty", "--level", "3"), "empty-l3-json"),
    (("real", "--expr", "sqrt3", "--prec", "10"), "sqrt3-p10"),
    (("real", "--expr", "1/2 + 1/4", "--prec", "5"), "sum-p5"),
    (("real", "--expr", "limit geom", "--prec", "8"), "geom-p8"),
    (("hausdorff", "--a", "triangle", "--b", "triangle", "--prec", "8"), "dH-tri-tri"),
    (
        ("hausdorff", "--a", "triangle", "--b", "translate(1,0,triangle)", "--prec", "6"),
        "dH-tri-moved",
    ),
    (
        ("hausdorff", "--a", "singleton(0,0)", "--b", "singleton(3,4)", "--prec", "10"),
        "dH-singletons",
    ),
]


def test_criterion_11_cli_determinism():
    ok = True
    outputs = {}
    for args, label in ACCEPTANCE_COMMANDS:
        runs = []
        for _ in range(2):
            proc = subprocess.run(
                [sys.executable, "-m", "certoset", *args],
                capture_output=True,
                env=dict(os.environ),
            )
            if proc.returncode != 0:
                ok = False
            runs.append(proc.stdout)
        if runs[0] != runs[1]:
            ok = False
        outputs[label] = runs[0]

    # spot-check the documented output values
    rec = json.loads(outputs["triangle-l4-json"])
    ok = ok and len(rec["centers"]) == 136
    svg = outputs["sierpinski-l5-svg"].decode()
    ok = ok and svg.count("<rect") == 243
    ok = ok and json.loads(outputs["empty-l3-json"])["centers"] == []
    v = Fraction(outputs["sqrt3-p10"].decode().strip())
    ok = ok and abs(v * v - 3) <= Fraction(1, 2**7)
    ok = ok and outputs["sum-p5"].decode().strip() == "0.75"
    ok = ok and abs(Fraction(outputs["geom-p8"].decode().strip()) - 1) <= Fraction(1, 2**8)
    ok = ok and abs(Fraction(outputs["dH-tri-tri"].decode().strip())) <= Fraction(1, 2**8)
    ok = ok and abs(Fraction(outputs["dH-tri-moved"].decode().strip()) - 1) <= Fraction(1, 2**6)
    ok = ok and abs(Fraction(outputs["dH-singletons"].decode().strip()) - 4) <= Fraction(1, 2**10)
    report(11, ok, f"{len(ACCEPTANCE_COMMANDS)} CLI commands byte-identical across runs")
