"""Command-line surface: an s-expression evaluator over the library.

Subcommands:

  eval <expr>    evaluate one expression and print its value
  conformance    print the conformance report (flat text or JSON)
  repl           line-oriented loop sharing one environment across lines

Expression language:

  (+ a b) (- a b) (* a b) (/ a b) (sqrt x)     ambient rounding mode
  suffixed forms round hard: +.< toward -inf, +.> toward +inf,
  +.<> to nearest even (same suffixes on - * / sqrt)
  (= a b ...) (/= a b ...)                     comparison chains
  (interval lo hi) (radius i) (point? i)
  (member? x i) (subset? i1 i2)                interval layer; unsuffixed
                                               + - * / accept two intervals
  (rounding <mode-keyword> <expr>)             scope the ambient mode
  (style <style-keyword> <expr>)               scope the notification style
  (trap-math (<options>) <body> <clause>*)     handler scopes

Mode keywords: :nearest-even :nearest :zero :positive-infinity
:negative-infinity.  Style keywords: :recording :error :terminating.
Trap options: :notify-by <style>, :before :save :clear, :after :merge
(the grouped spelling (:before (:save :clear)) is also accepted).
Clauses look like (:overflow :clear (:continue <expr>)); actions are
:default :clear :raise (:raise <kind> [payload]) :continue
(:continue <expr>).

Constants: pi e max-finite min-normal min-subnormal +inf -inf qnan snan
true false.  Numbers may be decimal or C99 hex floats.

Exit status: 0 success, 1 usage/syntax/evaluation errors (an unhandled
error-style notification prints an LIA-error line), 2 terminating-style
notification (after its LIA-NTM line).
"""

from __future__ import annotations

import argparse
import math
import re
import sys
from dataclasses import dataclass

from . import interval as ivl
from . import ops
from .conformance import describe_conformance
from .environment import (
    CLEAR,
    Continue,
    DEFAULT,
    FloatingPointNotification,
    FpEnvironment,
    HandlerClause,
    Indicator,
    NotificationStyle,
    RERAISE,
    RaiseNew,
    TrapOptions,
    diagnostic,
    evaluation_context,
    notification_style,
    rounding_mode,
    trap_math,
)
from .fpcore import MAX_FINITE, MIN_NORMAL, MIN_SUBNORMAL, QNAN, SNAN, decimal_form
from .interval import Interval
from .rounding import RoundingMode

__all__ = ["main", "parse", "Evaluator", "render_value", "CliError"]


class CliError(Exception):
    """Anything wrong with the input: syntax, unknown names, bad arity."""

    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        self.line = line
        self.col = col
        if line is not None:
            message = f"line {line}, column {col}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class _Token:
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    line, col, i = 1, 1, 0
    n = len(text)
    while i < n:
        c = text[i]
        if c == "\n":
            line += 1
            col = 1
            i += 1
        elif c in " \t\r":
            col += 1
            i += 1
        elif c == ";":
            while i < n and text[i] != "\n":
                i += 1
        elif c in "()":
            tokens.append(_Token(c, line, col))
            col += 1
            i += 1
        else:
            start = i
            start_col = col
            while i < n and text[i] not in " \t\r\n();":
                i += 1
                col += 1
            tokens.append(_Token(text[start:i], line, start_col))
    return tokens


_NUMBER = re.compile(r"^[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?$")


def _atom(tok: _Token):
    t = tok.text
    if _NUMBER.match(t):
        return float(t)
    if t.lower().startswith(("0x", "+0x", "-0x")):
        try:
            return float.fromhex(t)
        except ValueError:
            raise CliError(f"malformed hex float {t!r}", tok.line, tok.col) from None
    return t


def parse(text: str):
    """One expression -> nested lists of floats and symbol strings."""
    tokens = _tokenize(text)
    if not tokens:
        raise CliError("empty input", 1, 1)
    form, rest = _read_form(tokens)
    if rest:
        tok = rest[0]
        raise CliError(f"unexpected {tok.text!r} after expression", tok.line, tok.col)
    return form


def _read_form(tokens: list[_Token]):
    tok = tokens[0]
    if tok.text == "(":
        items = []
        rest = tokens[1:]
        while True:
            if not rest:
                raise CliError(
                    "unclosed parenthesis opened here", tok.line, tok.col
                )
            if rest[0].text == ")":
                return items, rest[1:]
            item, rest = _read_form(rest)
            items.append(item)
    if tok.text == ")":
        raise CliError("unexpected ')'", tok.line, tok.col)
    return _atom(tok), tokens[1:]


def _unparse(form) -> str:
    if isinstance(form, list):
        return "(" + " ".join(_unparse(f) for f in form) + ")"
    if isinstance(form, float):
        return decimal_form(form)
    return str(form)


_MODE_KEYWORDS = {
    ":nearest-even": RoundingMode.TO_NEAREST_EVEN,
    ":nearest": RoundingMode.TO_NEAREST,
    ":zero": RoundingMode.TO_ZERO,
    ":positive-infinity": RoundingMode.TO_POSITIVE_INFINITY,
    ":negative-infinity": RoundingMode.TO_NEGATIVE_INFINITY,
}

_STYLE_KEYWORDS = {
    ":recording": NotificationStyle.RECORDING,
    ":error": NotificationStyle.ERROR,
    ":terminating": NotificationStyle.TERMINATING,
}

_KIND_KEYWORDS = {
    ":overflow": Indicator.OVERFLOW,
    ":underflow": Indicator.UNDERFLOW,
    ":inexact": Indicator.INEXACT,
    ":invalid": Indicator.INVALID,
    ":divide-by-zero": Indicator.DIVIDE_BY_ZERO,
}

_CONSTANTS = {
    "pi": math.pi,
    "e": math.e,
    "max-finite": MAX_FINITE,
    "min-normal": MIN_NORMAL,
    "min-subnormal": MIN_SUBNORMAL,
    "+inf": math.inf,
    "-inf": -math.inf,
    "qnan": QNAN,
    "snan": SNAN,
    "true": True,
    "false": False,
}

_SCALAR_FOR_INTERVAL = {"+": ivl.i_add, "-": ivl.i_sub, "*": ivl.i_mul, "/": ivl.i_div}

_ARITH: dict[str, tuple[str, RoundingMode | None]] = {}
for _sym, _name in (("+", "add"), ("-", "sub"), ("*", "mul"), ("/", "div"), ("sqrt", "sqrt")):
    _ARITH[_sym] = (_name, None)
    _ARITH[_sym + ".<"] = (_name, RoundingMode.TO_NEGATIVE_INFINITY)
    _ARITH[_sym + ".<>"] = (_name, RoundingMode.TO_NEAREST_EVEN)
    _ARITH[_sym + ".>"] = (_name, RoundingMode.TO_POSITIVE_INFINITY)


class Evaluator:
    """Evaluates parsed forms against the ambient evaluation context."""

    def eval(self, form):
        if isinstance(form, float):
            return form
        if isinstance(form, str):
            if form in _CONSTANTS:
                return _CONSTANTS[form]
            if form.startswith(":"):
                raise CliError(f"keyword {form} in value position")
            raise CliError(f"unknown symbol {form!r}")
        if not form:
            raise CliError("empty form ()")
        head = form[0]
        if not isinstance(head, str):
            raise CliError(f"operator position holds {_unparse(head)}")
        if head == "rounding":
            return self._eval_rounding(form)
        if head == "style":
            return self._eval_style(form)
        if head == "trap-math":
            return self._eval_trap(form)
        if head in _ARITH:
            return self._apply_arith(head, form[1:])
        if head == "=":
            return ops.eq(*self._floats(head, form[1:], minimum=1))
        if head == "/=":
            return ops.neq(*self._floats(head, form[1:], minimum=1))
        if head == "interval":
            lo, hi = self._floats(head, form[1:], exactly=2)
            return ivl.make_interval(lo, hi)
        if head == "radius":
            (i,) = self._intervals(head, form[1:], exactly=1)
            return ivl.radius(i)
        if head == "point?":
            (i,) = self._intervals(head, form[1:], exactly=1)
            return ivl.is_point(i)
        if head == "member?":
            args = [self.eval(f) for f in form[1:]]
            if len(args) != 2 or not _is_scalar(args[0]) or not isinstance(args[1], Interval):
                raise CliError("member? expects a number and an interval")
            return ivl.i_member(args[0], args[1])
        if head == "subset?":
            i1, i2 = self._intervals(head, form[1:], exactly=2)
            return ivl.i_subseteq(i1, i2)
        raise CliError(f"unknown operator {head!r}")

    # -- argument helpers --

    def _floats(self, op, forms, minimum=None, exactly=None):
        args = [self.eval(f) for f in forms]
        if exactly is not None and len(args) != exactly:
            raise CliError(f"{op} expects {exactly} argument(s), got {len(args)}")
        if minimum is not None and len(args) < minimum:
            raise CliError(f"{op} expects at least {minimum} argument(s)")
        for a in args:
            if not _is_scalar(a):
                raise CliError(f"{op} expects numbers, got {render_value(a)}")
        return args

    def _intervals(self, op, forms, exactly):
        args = [self.eval(f) for f in forms]
        if len(args) != exactly:
            raise CliError(f"{op} expects {exactly} argument(s), got {len(args)}")
        for a in args:
            if not isinstance(a, Interval):
                raise CliError(f"{op} expects intervals, got {render_value(a)}")
        return args

    def _apply_arith(self, sym, arg_forms):
        name, mode = _ARITH[sym]
        args = [self.eval(f) for f in arg_forms]
        arity = 1 if name == "sqrt" else 2
        if len(args) != arity:
            raise CliError(f"{sym} expects {arity} argument(s), got {len(args)}")
        if all(_is_scalar(a) for a in args):
            fn = getattr(ops, name)
            return fn(*args, mode=mode)
        if all(isinstance(a, Interval) for a in args):
            if mode is not None:
                raise CliError(f"{sym} is a scalar form; intervals use the plain operator")
            if name == "sqrt":
                raise CliError("sqrt takes a number, not an interval")
            return _SCALAR_FOR_INTERVAL[sym](*args)
        raise CliError(f"{sym} cannot mix numbers and intervals")

    # -- special forms --

    def _eval_rounding(self, form):
        if len(form) != 3:
            raise CliError("(rounding <mode-keyword> <expr>)")
        kw = form[1]
        if kw not in _MODE_KEYWORDS:
            raise CliError(f"unknown rounding mode keyword {_unparse(kw)}")
        with rounding_mode(_MODE_KEYWORDS[kw]):
            return self.eval(form[2])

    def _eval_style(self, form):
        if len(form) != 3:
            raise CliError("(style <style-keyword> <expr>)")
        kw = form[1]
        if kw not in _STYLE_KEYWORDS:
            raise CliError(f"unknown style keyword {_unparse(kw)}")
        with notification_style(_STYLE_KEYWORDS[kw]):
            return self.eval(form[2])

    def _eval_trap(self, form):
        if len(form) < 3 or not isinstance(form[1], list):
            raise CliError("(trap-math (<options>) <body> <clause>*)")
        options = self._parse_trap_options(form[1])
        body_form = form[2]
        clauses = [self._parse_clause(f) for f in form[3:]]
        return trap_math(options, lambda: self.eval(body_form), *clauses)

    def _parse_trap_options(self, items) -> TrapOptions:
        notify_by = NotificationStyle.ERROR
        before: list[str] = []
        after: list[str] = []
        expect_style = False
        target: list[str] | None = None

        def feed(tok):
            nonlocal notify_by, expect_style, target
            if expect_style:
                if tok not in _STYLE_KEYWORDS:
                    raise CliError(f":notify-by needs a style keyword, got {_unparse(tok)}")
                notify_by = _STYLE_KEYWORDS[tok]
                expect_style = False
                return
            if tok == ":notify-by":
                expect_style = True
                target = None
                return
            if tok == ":before":
                target = before
                return
            if tok == ":after":
                target = after
                return
            if tok in (":save", ":clear", ":merge"):
                if target is None:
                    raise CliError(f"{tok} must follow :before or :after")
                target.append(tok[1:])
                return
            raise CliError(f"unknown trap option {_unparse(tok)}")

        def walk(item):
            if isinstance(item, list):
                for sub in item:
                    walk(sub)
            else:
                feed(item)

        for item in items:
            walk(item)
        if expect_style:
            raise CliError(":notify-by needs a style keyword")
        try:
            return TrapOptions(notify_by=notify_by, before=tuple(before), after=tuple(after))
        except ValueError as exc:
            raise CliError(str(exc)) from None

    def _parse_clause(self, form) -> HandlerClause:
        if not isinstance(form, list) or not form:
            raise CliError("handler clause must be (<kind-keyword> <action>*)")
        kw = form[0]
        if kw not in _KIND_KEYWORDS:
            raise CliError(f"unknown indicator keyword {_unparse(kw)}")
        actions = []
        for item in form[1:]:
            if item == ":default":
                actions.append(DEFAULT)
            elif item == ":clear":
                actions.append(CLEAR)
            elif item == ":raise":
                actions.append(RERAISE)
            elif item == ":continue":
                actions.append(Continue())
            elif isinstance(item, list) and item and item[0] == ":continue":
                if len(item) != 2:
                    raise CliError("(:continue <expr>) takes one expression")
                expr = item[1]
                actions.append(Continue(lambda e=expr: self.eval(e)))
            elif isinstance(item, list) and item and item[0] == ":raise":
                if len(item) not in (2, 3) or item[1] not in _KIND_KEYWORDS:
                    raise CliError("(:raise <kind-keyword> [<payload>]) is the re-kind form")
                kind = _KIND_KEYWORDS[item[1]]
                if len(item) == 3:
                    actions.append(RaiseNew(kind, self.eval(item[2])))
                else:
                    actions.append(RaiseNew(kind))
            else:
                raise CliError(f"unknown handler action {_unparse(item)}")
        try:
            return HandlerClause(_KIND_KEYWORDS[kw], *actions)
        except ValueError as exc:
            raise CliError(str(exc)) from None


def _is_scalar(v) -> bool:
    return isinstance(v, float) and not isinstance(v, bool)


def render_value(v) -> str:
    """Result line: booleans as words, intervals bracketed, finite scalars
    as shortest decimal plus hex, specials as bare symbols."""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, Interval):
        return str(v)
    if isinstance(v, float):
        if math.isnan(v) or math.isinf(v):
            return decimal_form(v)
        return f"{decimal_form(v)} ({v.hex()})"
    return str(v)


def _flags_line(env: FpEnvironment) -> str:
    if not env.flags:
        return "flags: none"
    return "flags: " + ", ".join(sorted(k.value for k in env.flags))


_STYLE_CHOICES = {
    "recording": NotificationStyle.RECORDING,
    "error": NotificationStyle.ERROR,
    "terminating": NotificationStyle.TERMINATING,
}

_MODE_CHOICES = {
    "nearest-even": RoundingMode.TO_NEAREST_EVEN,
    "nearest": RoundingMode.TO_NEAREST,
    "zero": RoundingMode.TO_ZERO,
    "positive-infinity": RoundingMode.TO_POSITIVE_INFINITY,
    "negative-infinity": RoundingMode.TO_NEGATIVE_INFINITY,
}


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on usage errors; 2 is reserved for
    # terminating-style notifications here, so usage errors become 1.
    def error(self, message):
        raise _UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="liamath", description="LIA arithmetic evaluator")
    sub = parser.add_subparsers(dest="command", required=True)

    pe = sub.add_parser("eval", help="evaluate one expression")
    pe.add_argument("expression")
    _add_env_flags(pe)
    pe.add_argument(
        "--dump-env",
        action="store_true",
        help="print the flags and mode lines after the value",
    )

    pc = sub.add_parser("conformance", help="print the conformance report")
    fmt = pc.add_mutually_exclusive_group()
    fmt.add_argument("--flat", action="store_true", help="flat text (default)")
    fmt.add_argument("--json", action="store_true", help="JSON object")

    pr = sub.add_parser("repl", help="line-oriented evaluation loop")
    _add_env_flags(pr)
    pr.add_argument(
        "--dump-env",
        action="store_true",
        help="print the flags and mode lines after each value",
    )
    return parser


def _add_env_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--style",
        choices=sorted(_STYLE_CHOICES),
        default="error",
        help="notification style (default error)",
    )
    p.add_argument(
        "--rounding",
        choices=sorted(_MODE_CHOICES),
        default="nearest-even",
        help="ambient rounding mode (default nearest-even)",
    )


def _fresh_env(args) -> FpEnvironment:
    return FpEnvironment(
        style=_STYLE_CHOICES[args.style], mode=_MODE_CHOICES[args.rounding]
    )


def _run_eval(args) -> int:
    with evaluation_context(_fresh_env(args)) as ctx:
        try:
            result = Evaluator().eval(parse(args.expression))
        except CliError as exc:
            print(f"liamath: {exc}", file=sys.stderr)
            return 1
        except FloatingPointNotification as cond:
            print(diagnostic(cond, "LIA-error"), file=sys.stderr)
            return 1
        print(render_value(result))
        if args.dump_env:
            print(_flags_line(ctx.env))
            print(f"mode: {ctx.env.mode.label}")
    return 0


def _run_conformance(args) -> int:
    descriptor = describe_conformance()
    sys.stdout.write(descriptor.to_json() if args.json else descriptor.to_flat())
    return 0


def _run_repl(args) -> int:
    with evaluation_context(_fresh_env(args)) as ctx:
        interactive = sys.stdin.isatty()
        while True:
            if interactive:
                sys.stdout.write("lia> ")
                sys.stdout.flush()
            line = sys.stdin.readline()
            if not line:
                break
            stripped = line.strip()
            if not stripped:
                continue
            if stripped == ":quit":
                break
            try:
                result = Evaluator().eval(parse(stripped))
            except CliError as exc:
                print(f"liamath: {exc}", file=sys.stderr)
                continue
            except FloatingPointNotification as cond:
                print(diagnostic(cond, "LIA-error"), file=sys.stderr)
                continue
            print(render_value(result))
            if args.dump_env:
                print(_flags_line(ctx.env))
                print(f"mode: {ctx.env.mode.label}")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"liamath: {exc}", file=sys.stderr)
        return 1
    if args.command == "eval":
        return _run_eval(args)
    if args.command == "conformance":
        return _run_conformance(args)
    return _run_repl(args)


if __name__ == "__main__":
    sys.exit(main())
