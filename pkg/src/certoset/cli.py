"""Command-line surface: evaluate reals, compute Hausdorff distances, and
emit certified coverings as JSON, CSV or SVG.

Exit codes: 0 success, 2 parse/validation failure (including empty
Hausdorff operands), 3 effort-ceiling abort.  All outputs are
deterministic: identical invocations produce byte-identical bytes.
"""

from __future__ import annotations

import argparse
import hashlib
import os
import re
import sys
from fractions import Fraction

from . import covers, fractals
from .dyadic import Dyadic, pow2
from .effort import EffortCeilingExceeded, effort_ceiling
from .real import (
    CReal,
    abs_,
    add,
    approx_dyadic,
    creal_from_dyadic,
    limit,
    max_,
    min_,
    mul,
    neg,
    sub,
)
from .render import (
    covering_record,
    record_from_json,
    record_to_csv,
    record_to_json,
    record_to_svg,
    write_atomic,
)
from .space import point_from_dyadics

DEFAULT_EFFORT_CEILING = 1 << 24
DEFAULT_LEVEL_CAP = 16


class ExprError(ValueError):
    pass


# -- set expressions -----------------------------------------------------------

_SET_TOKEN = re.compile(r"[^(),\s]+|[(),]")


class _SetParser:
    """Grammar: triangle | sierpinski | empty | singleton(x,y) | ifs(path)
    | union(a,b) | translate(dx,dy,a) | scale(c,a)."""

    def __init__(self, text: str, allow_nondyadic: bool):
        self.tokens = _SET_TOKEN.findall(text)
        self.pos = 0
        self.allow_nondyadic = allow_nondyadic

    def _next(self) -> str:
        if self.pos >= len(self.tokens):
            raise ExprError("unexpected end of set expression")
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def _expect(self, tok: str) -> None:
        got = self._next()
        if got != tok:
            raise ExprError(f"expected {tok!r}, got {got!r}")

    def _number(self) -> Dyadic:
        tok = self._next()
        try:
            return Dyadic.parse(tok)
        except (ValueError, ZeroDivisionError) as exc:
            raise ExprError(f"bad dyadic literal {tok!r}: {exc}") from None

    def parse(self):
        result = self._expr()
        if self.pos != len(self.tokens):
            raise ExprError(f"trailing tokens: {' '.join(self.tokens[self.pos:])}")
        return result

    def _expr(self):
        head = self._next()
        if head == "triangle":
            return fractals.triangle(), "triangle"
        if head == "sierpinski":
            return fractals.sierpinski_triangle(), "sierpinski"
        if head == "empty":
            return covers.empty_set(2), "empty"
        if head == "singleton":
            self._expect("(")
            x = self._number()
            self._expect(",")
            y = self._number()
            self._expect(")")
            pt = point_from_dyadics([x, y])
            return covers.singleton(pt), f"singleton({x.compact_str()},{y.compact_str()})"
        if head == "ifs":
            self._expect("(")
            path = self._next()
            self._expect(")")
            try:
                with open(path, "rb") as fh:
                    digest = hashlib.sha256(fh.read()).hexdigest()
                ifs = fractals.load_ifs(path, allow_nondyadic=self.allow_nondyadic)
            except OSError as exc:
                raise ExprError(f"cannot read IFS file {path!r}: {exc}") from None
            except ValueError as exc:
                raise ExprError(f"bad IFS file {path!r}: {exc}") from None
            return fractals.ifs_attractor(ifs), f"ifs({digest})"
        if head == "union":
            self._expect("(")
            a, ca = self._expr()
            self._expect(",")
            b, cb = self._expr()
            self._expect(")")
            if a.dimension != b.dimension:
                raise ExprError("union operands have different dimensions")
            return covers.set_union(a, b), f"union({ca},{cb})"
        if head == "translate":
            self._expect("(")
            dx = self._number()
            self._expect(",")
            dy = self._number()
            self._expect(",")
            a, ca = self._expr()
            self._expect(")")
            if a.dimension != 2:
                raise ExprError("translate(dx,dy,...) expects a planar set")
            moved = covers.scale_translate(a, Dyadic(1), (dx, dy))
            return moved, f"translate({dx.compact_str()},{dy.compact_str()},{ca})"
        if head == "scale":
            self._expect("(")
            c = self._number()
            self._expect(",")
            a, ca = self._expr()
            self._expect(")")
            if c.sign() <= 0:
                raise ExprError("scale factor must be positive")
            zero = tuple(Dyadic(0) for _ in range(a.dimension))
            return covers.scale_translate(a, c, zero), f"scale({c.compact_str()},{ca})"
        raise ExprError(f"unknown set constructor {head!r}")


def parse_set_expr(text: str, allow_nondyadic: bool = False):
    return _SetParser(text, allow_nondyadic).parse()


# -- real expressions ------------------------------------------------------------

_REAL_TOKEN = re.compile(r"\d+/\d+|\d+\.\d+|\d+|[A-Za-z_][A-Za-z_0-9]*|[()+\-*,]")


def _geom_limit() -> CReal:
    one = Dyadic(1)
    return limit(lambda n: creal_from_dyadic(one - pow2(-n)))


class _RealParser:
    """Arithmetic over dyadic literals with sqrt3, ``limit geom``, abs,
    max and min."""

    def __init__(self, text: str):
        stripped = "".join(_REAL_TOKEN.findall(text))
        if stripped.replace(" ", "") != text.replace(" ", ""):
            leftover = set(text.replace(" ", "")) - set(stripped)
            raise ExprError(f"unrecognized characters in expression: {sorted(leftover)}")
        self.tokens = _REAL_TOKEN.findall(text)
        self.pos = 0

    def _peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def _next(self) -> str:
        tok = self._peek()
        if tok is None:
            raise ExprError("unexpected end of expression")
        self.pos += 1
        return tok

    def _expect(self, tok: str) -> None:
        got = self._next()
        if got != tok:
            raise ExprError(f"expected {tok!r}, got {got!r}")

    def parse(self) -> CReal:
        value = self._expr()
        if self.pos != len(self.tokens):
            raise ExprError(f"trailing tokens: {' '.join(self.tokens[self.pos:])}")
        return value

    def _expr(self) -> CReal:
        value = self._term()
        while self._peek() in ("+", "-"):
            op = self._next()
            rhs = self._term()
            value = add(value, rhs) if op == "+" else sub(value, rhs)
        return value

    def _term(self) -> CReal:
        value = self._unary()
        while self._peek() == "*":
            self._next()
            value = mul(value, self._unary())
        return value

    def _unary(self) -> CReal:
        if self._peek() == "-":
            self._next()
            return neg(self._unary())
        return self._atom()

    def _atom(self) -> CReal:
        tok = self._next()
        if tok == "(":
            value = self._expr()
            self._expect(")")
            return value
        if tok == "sqrt3":
            return fractals.sqrt3()
        if tok == "limit":
            kind = self._next()
            if kind != "geom":
                raise ExprError(f"unknown limit sequence {kind!r}")
            return _geom_limit()
        if tok == "abs":
            self._expect("(")
            value = self._expr()
            self._expect(")")
            return abs_(value)
        if tok in ("max", "min"):
            self._expect("(")
            a = self._expr()
            self._expect(",")
            b = self._expr()
            self._expect(")")
            return max_(a, b) if tok == "max" else min_(a, b)
        try:
            return creal_from_dyadic(Dyadic.from_fraction(Fraction(tok)))
        except (ValueError, ZeroDivisionError) as exc:
            raise ExprError(f"bad literal {tok!r}: {exc}") from None


def parse_real_expr(text: str) -> CReal:
    return _RealParser(text).parse()


# -- commands ----------------------------------------------------------------------


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        write_atomic(out, text)


def _cached_record(canon: str, tb, level: int, precision: int) -> dict:
    cache_dir = os.environ.get("CERTOSET_CACHE_DIR")
    key = None
    if cache_dir:
        digest = hashlib.sha256(f"{canon}|{level}|{precision}".encode()).hexdigest()
        key = os.path.join(cache_dir, f"{digest}.json")
        try:
            with open(key, "r", encoding="utf-8") as fh:
                record = record_from_json(fh.read())
            if record["level"] == level:
                return record
        except (OSError, ValueError):
            pass
    record = covering_record(tb, level, precision)
    if key is not None:
        os.makedirs(cache_dir, exist_ok=True)
        write_atomic(key, record_to_json(record))
    return record


def _cmd_draw(args) -> int:
    if args.level < 0 or args.level > args.level_cap:
        print(f"error: level must be in [0, {args.level_cap}]", file=sys.stderr)
        return 2
    precision = args.precision if args.precision is not None else args.level + 4
    if precision < args.level:
        print("error: precision must be at least the level", file=sys.stderr)
        return 2
    try:
        tb, canon = parse_set_expr(args.set, allow_nondyadic=args.allow_nondyadic_anchors)
    except ExprError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    record = _cached_record(canon, tb, args.level, precision)
    if args.format == "json":
        text = record_to_json(record)
    elif args.format == "csv":
        text = record_to_csv(record)
    else:
        viewport = None
        if args.viewport:
            try:
                parts = [Dyadic.parse(p) for p in args.viewport.split(",")]
                if len(parts) != 4:
                    raise ValueError("need x0,y0,x1,y1")
                viewport = tuple(parts)
            except ValueError as exc:
                print(f"error: bad viewport: {exc}", file=sys.stderr)
                return 2
        try:
            text = record_to_svg(record, viewport)
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
    _emit(text, args.out)
    return 0


def _cmd_real(args) -> int:
    try:
        value = parse_real_expr(args.expr)
    except ExprError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    result = approx_dyadic(value, args.prec)
    sys.stdout.write(result.decimal_str() + "\n")
    return 0


def _cmd_hausdorff(args) -> int:
    try:
        a, canon_a = parse_set_expr(args.a, allow_nondyadic=args.allow_nondyadic_anchors)
        b, canon_b = parse_set_expr(args.b, allow_nondyadic=args.allow_nondyadic_anchors)
    except ExprError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if canon_a == canon_b:
        b = a  # identical expressions denote the same set; share the object
    if a.is_empty() or b.is_empty():
        print("error: hausdorff requires nonempty operands", file=sys.stderr)
        return 2
    d = covers.hausdorff_distance(a, b)
    sys.stdout.write(approx_dyadic(d, args.prec).decimal_str() + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="certoset",
        description="Certified coverings, exact reals and Hausdorff distances.",
    )
    parser.add_argument(
        "--effort-ceiling",
        type=int,
        default=DEFAULT_EFFORT_CEILING,
        help="abort (exit 3) once any semi-decision exceeds this effort",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    draw = sub.add_parser("draw", help="emit a certified covering")
    draw.add_argument("--set", required=True, help="set expression")
    draw.add_argument("--level", type=int, required=True)
    draw.add_argument("--format", choices=("json", "csv", "svg"), default="json")
    draw.add_argument("--out", default=None)
    draw.add_argument("--viewport", default=None, help="x0,y0,x1,y1 (svg only)")
    draw.add_argument("--precision", type=int, default=None)
    draw.add_argument("--level-cap", type=int, default=DEFAULT_LEVEL_CAP)
    draw.add_argument("--allow-nondyadic-anchors", action="store_true")
    draw.set_defaults(func=_cmd_draw)

    real = sub.add_parser("real", help="evaluate a real expression")
    real.add_argument("--expr", required=True)
    real.add_argument("--prec", type=int, required=True)
    real.set_defaults(func=_cmd_real)

    hausdorff = sub.add_parser("hausdorff", help="Hausdorff distance of two sets")
    hausdorff.add_argument("--a", required=True)
    hausdorff.add_argument("--b", required=True)
    hausdorff.add_argument("--prec", type=int, required=True)
    hausdorff.add_argument("--allow-nondyadic-anchors", action="store_true")
    hausdorff.set_defaults(func=_cmd_hausdorff)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        with effort_ceiling(args.effort_ceiling):
            return args.func(args)
    except EffortCeilingExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()
