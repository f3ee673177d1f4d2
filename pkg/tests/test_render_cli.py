import json
import os
import subprocess
import sys

import pytest

from certoset.dyadic import Dyadic
from certoset.fractals import triangle
from certoset.render import (
    covering_record,
    default_viewport,
    record_centers_dyadic,
    record_from_csv,
    record_from_json,
    record_to_csv,
    record_to_json,
    record_to_svg,
)
from certoset.cli import main, parse_real_expr, parse_set_expr
from certoset.real import approx_dyadic


def run_cli(*args, env=None):
    cmd = [sys.executable, "-m", "certoset", *args]
    full_env = dict(os.environ)
    if env:
        full_env.update(env)
    return subprocess.run(cmd, capture_output=True, env=full_env)


# -- records -----------------------------------------------------------------------


def test_record_json_round_trip():
    rec = covering_record(triangle(), 3, 8)
    text = record_to_json(rec)
    back = record_from_json(text)
    assert record_centers_dyadic(back) == record_centers_dyadic(rec)
    assert back["level"] == 3 and back["radius_exponent"] == -3 and back["dimension"] == 2


def test_record_csv_round_trip():
    rec = covering_record(triangle(), 2, 6)
    back = record_from_csv(record_to_csv(rec))
    assert record_centers_dyadic(back) == record_centers_dyadic(rec)


def test_record_precision_validation():
    with pytest.raises(ValueError):
        covering_record(triangle(), 4, 3)


def test_svg_square_count():
    rec = covering_record(triangle(), 4, 8)
    svg = record_to_svg(rec)
    assert svg.count("<rect") == len(rec["centers"]) == 136
    assert svg.startswith("<svg")


def test_svg_custom_viewport_and_validation():
    rec = covering_record(triangle(), 1, 5)
    vp = tuple(Dyadic.parse(v) for v in ("-1", "-1", "2", "2"))
    svg = record_to_svg(rec, vp)
    assert svg.count("<rect") == 3
    bad = tuple(Dyadic.parse(v) for v in ("1", "0", "1", "2"))
    with pytest.raises(ValueError):
        record_to_svg(rec, bad)


def test_default_viewport_covers_squares():
    rec = covering_record(triangle(), 2, 6)
    x0, y0, x1, y1 = default_viewport(rec)
    radius = Dyadic(1, -2)
    for row in record_centers_dyadic(rec):
        assert x0 <= row[0] - radius and row[0] + radius <= x1
        assert y0 <= row[1] - radius and row[1] + radius <= y1


# -- expression parsers ---------------------------------------------------------------


def test_set_expr_parsing():
    tb, canon = parse_set_expr("union(triangle, translate(1, 0, triangle))")
    assert canon == "union(triangle,translate(1,0,triangle))"
    assert tb.dimension == 2
    tb2, canon2 = parse_set_expr("scale(1/2, singleton(0, 0))")
    assert "scale(1*2^-1" in canon2
    with pytest.raises(ValueError):
        parse_set_expr("frobnicate")
    with pytest.raises(ValueError):
        parse_set_expr("union(triangle)")
    with pytest.raises(ValueError):
        parse_set_expr("scale(0, triangle)")


def test_real_expr_parsing():
    v = parse_real_expr("1/2 + 1/4")
    assert approx_dyadic(v, 8).decimal_str() == "0.75"
    v = parse_real_expr("max(1, 2) * -3")
    assert approx_dyadic(v, 8).decimal_str() == "-6"
    v = parse_real_expr("abs(0.5 - 2)")
    assert approx_dyadic(v, 8).decimal_str() == "1.5"
    with pytest.raises(ValueError):
        parse_real_expr("1 +")
    with pytest.raises(ValueError):
        parse_real_expr("0.1")  # not dyadic
    with pytest.raises(ValueError):
        parse_real_expr("limit unknown")


# -- CLI ---------------------------------------------------------------------------


def test_cli_draw_triangle_json():
    out = run_cli("draw", "--set", "triangle", "--level", "4")
    assert out.returncode == 0
    rec = json.loads(out.stdout)
    assert len(rec["centers"]) == 136
    assert rec["radius_exponent"] == -4


def test_cli_draw_empty():
    out = run_cli("draw", "--set", "empty", "--level", "3")
    assert out.returncode == 0
    rec = json.loads(out.stdout)
    assert rec["centers"] == []


def test_cli_draw_svg_file(tmp_path):
    target = tmp_path / "tri.svg"
    out = run_cli(
        "draw", "--set", "triangle", "--level", "3", "--format", "svg", "--out", str(target)
    )
    assert out.returncode == 0
    assert target.read_text().count("<rect") == 36


def test_cli_real():
    out = run_cli("real", "--expr", "1/2 + 1/4", "--prec", "5")
    assert out.returncode == 0
    assert out.stdout.strip() == b"0.75"

    out = run_cli("real", "--expr", "sqrt3", "--prec", "10")
    v = float(out.stdout.strip())
    assert abs(v * v - 3) < 2 ** (-7)

    out = run_cli("real", "--expr", "limit geom", "--prec", "8")
    assert abs(float(out.stdout.strip()) - 1) <= 2 ** (-8)


def test_cli_hausdorff():
    out = run_cli("hausdorff", "--a", "singleton(0,0)", "--b", "singleton(3,4)", "--prec", "10")
    assert out.returncode == 0
    assert abs(float(out.stdout.strip()) - 4) <= 2 ** (-10)


def test_cli_hausdorff_empty_operand():
    out = run_cli("hausdorff", "--a", "empty", "--b", "triangle", "--prec", "4")
    assert out.returncode == 2


def test_cli_parse_error_exit_2():
    out = run_cli("draw", "--set", "nonsense", "--level", "2")
    assert out.returncode == 2
    out = run_cli("real", "--expr", "1 +", "--prec", "3")
    assert out.returncode == 2
    out = run_cli("draw", "--set", "triangle", "--level", "4", "--precision", "2")
    assert out.returncode == 2


def test_cli_effort_ceiling_exit_3():
    out = run_cli("--effort-ceiling", "3", "real", "--expr", "sqrt3", "--prec", "10")
    assert out.returncode == 3


def test_cli_level_cap():
    out = run_cli("draw", "--set", "triangle", "--level", "17")
    assert out.returncode == 2
    out = run_cli("draw", "--set", "triangle", "--level", "5", "--level-cap", "4")
    assert out.returncode == 2


def test_cli_svg_viewport_flag():
    out = run_cli(
        "draw", "--set", "triangle", "--level", "2", "--format", "svg",
        "--viewport=-1,-1,2,2",
    )
    assert out.returncode == 0
    assert out.stdout.decode().count("<rect") == 10
    bad = run_cli(
        "draw", "--set", "triangle", "--level", "2", "--format", "svg",
        "--viewport=1,1,1,1",
    )
    assert bad.returncode == 2


def test_cli_deterministic_outputs():
    for args in (
        ("draw", "--set", "sierpinski", "--level", "4", "--format", "svg"),
        ("draw", "--set", "triangle", "--level", "4"),
        ("real", "--expr", "sqrt3", "--prec", "10"),
    ):
        first = run_cli(*args)
        second = run_cli(*args)
        assert first.returncode == second.returncode == 0
        assert first.stdout == second.stdout


def test_cli_sierpinski_level5_bbox():
    out = run_cli("draw", "--set", "sierpinski", "--level", "5")
    assert out.returncode == 0
    rec = json.loads(out.stdout)
    assert len(rec["centers"]) == 243
    from fractions import Fraction

    bound = 1 + Fraction(1, 32)
    for row in rec["centers"]:
        for c in row:
            v = Dyadic.parse(c).as_fraction()
            assert -bound <= v <= bound


def test_cli_cache_dir(tmp_path):
    cache = tmp_path / "cache"
    env = {"CERTOSET_CACHE_DIR": str(cache)}
    first = run_cli("draw", "--set", "triangle", "--level", "3", env=env)
    assert first.returncode == 0
    files = list(cache.glob("*.json"))
    assert len(files) == 1
    second = run_cli("draw", "--set", "triangle", "--level", "3", env=env)
    assert second.stdout == first.stdout


def test_cli_ifs_file(tmp_path):
    config = tmp_path / "two.json"
    config.write_text(json.dumps({"dimension": 2, "anchors": [["-1", "0"], ["1", "0"]]}))
    out = run_cli("draw", "--set", f"ifs({config})", "--level", "3")
    assert out.returncode == 0
    rec = json.loads(out.stdout)
    assert len(rec["centers"]) == 8

    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"dimension": 2, "anchors": [["0.1", "0"]]}))
    out = run_cli("draw", "--set", f"ifs({bad})", "--level", "2")
    assert out.returncode == 2
    out = run_cli(
        "draw", "--set", f"ifs({bad})", "--level", "2", "--allow-nondyadic-anchors"
    )
    assert out.returncode == 0


def test_cli_main_returns_codes():
    assert main(["draw", "--set", "triangle", "--level", "0"]) == 0
