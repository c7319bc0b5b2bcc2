"""Command-line surface: parsing, evaluation, subcommands, exit codes."""

import io
import json
import math

import pytest

from liamath.cli import CliError, Evaluator, main, parse, render_value
from liamath.conformance import ConformanceDescriptor, describe_conformance
from liamath.environment import evaluation_context
from liamath.fpcore import QNAN, SNAN
from liamath.interval import Interval


def run(capsys, *argv):
    rc = main(list(argv))
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


def ev(text):
    with evaluation_context():
        return Evaluator().eval(parse(text))


class TestParse:
    def test_forms(self):
        assert parse("(+ 1 2)") == ["+", 1.0, 2.0]
        assert parse("(* (+ 1 2) (sqrt 2))") == ["*", ["+", 1.0, 2.0], ["sqrt", 2.0]]
        assert parse("x") == "x"
        assert parse(":zero") == ":zero"

    def test_numbers(self):
        assert parse("-3.5e2") == -350.0
        assert parse(".5") == 0.5
        assert parse("+7") == 7.0
        assert parse("0x1.8p1") == 3.0
        assert parse("-0x1p-2") == -0.25

    def test_comments_and_whitespace(self):
        assert parse("  ( +  1\n\t2 ) ; trailing words") == ["+", 1.0, 2.0]
        assert parse("(+ 1 ; inline\n 2)") == ["+", 1.0, 2.0]

    def test_error_positions(self):
        with pytest.raises(CliError) as info:
            parse("(+ 1")
        assert info.value.line == 1 and info.value.col == 1
        assert "unclosed" in str(info.value)

        with pytest.raises(CliError) as info:
            parse("\n )")
        assert info.value.line == 2 and info.value.col == 2

        with pytest.raises(CliError) as info:
            parse("(+ 1 2) 3")
        assert info.value.line == 1 and info.value.col == 9

        with pytest.raises(CliError):
            parse("")
        with pytest.raises(CliError):
            parse("0xzz")


class TestRenderValue:
    def test_scalars(self):
        assert render_value(1.5) == "1.5 (0x1.8000000000000p+0)"
        assert render_value(3.0) == "3 (0x1.8000000000000p+1)"
        assert render_value(-0.0) == "-0.0 (-0x0.0p+0)"

    def test_specials_are_bare_symbols(self):
        assert render_value(math.inf) == "+inf"
        assert render_value(-math.inf) == "-inf"
        assert render_value(QNAN) == "qnan"
        assert render_value(SNAN) == "snan"

    def test_booleans_and_intervals(self):
        assert render_value(True) == "true"
        assert render_value(False) == "false"
        assert render_value(Interval(1.0, 2.0)) == "[1, 2]"


class TestEvaluator:
    def test_arithmetic_and_constants(self):
        assert ev("(+ 0.1 0.2)") == 0.30000000000000004
        assert ev("(+.< 0.1 0.2)") == 0.3
        assert ev("(/.> 1 3)") == 0.33333333333333337
        assert ev("pi") == math.pi
        assert ev("(sqrt 2)") == 1.4142135623730951

    def test_interval_forms(self):
        assert ev("(interval 1 2)") == Interval(1.0, 2.0)
        assert ev("(+ (interval 1 2) (interval 10 20))") == Interval(11.0, 22.0)
        assert ev("(radius (interval 1 2))") == 1.0
        assert ev("(member? 1.5 (interval 1 2))") is True
        assert ev("(subset? (interval 1 2) (interval 0 3))") is True
        assert ev("(point? (interval 2 2))") is True

    def test_comparison_forms(self):
        assert ev("(= 0 -0.0)") is True
        assert ev("(/= qnan qnan)") is True
        assert ev("(= 1 1 2)") is False

    def test_scoping_forms(self):
        assert ev("(rounding :zero (+ 0.1 0.2))") == 0.3
        assert ev("(style :recording (/ 1 0))") == math.inf

    def test_bad_forms(self):
        for text in (
            "(frob 1)",
            "(+ 1)",
            "(sqrt 1 2)",
            "(+ 1 (interval 1 2))",
            "(+.< (interval 1 2) (interval 1 2))",
            "(sqrt (interval 1 4))",
            "(:zero)",
            "(rounding :sideways 1)",
            "(member? (interval 1 2) 1)",
            "nope",
            "()",
        ):
            with pytest.raises(CliError):
                ev(text)


class TestEvalCommand:
    def test_value_line(self, capsys):
        rc, out, err = run(capsys, "eval", "(+ 0.1 0.2)")
        assert rc == 0 and err == ""
        assert out == "0.30000000000000004 (0x1.3333333333334p-2)\n"

    def test_directed_suffix(self, capsys):
        rc, out, _ = run(capsys, "eval", "(+.< 0.1 0.2)")
        assert rc == 0
        assert out == "0.3 (0x1.3333333333333p-2)\n"

    def test_special_value_output(self, capsys):
        rc, out, _ = run(capsys, "eval", "(style :recording (/ 1 0))")
        assert rc == 0
        assert out == "+inf\n"

    def test_rounding_option(self, capsys):
        rc, out, _ = run(capsys, "eval", "--rounding", "zero", "(+ 0.1 0.2)")
        assert rc == 0
        assert out.startswith("0.3 ")

    def test_dump_env(self, capsys):
        rc, out, _ = run(capsys, "eval", "--dump-env", "(+ 0.1 0.2)")
        assert rc == 0
        lines = out.splitlines()
        assert lines == [
            "0.30000000000000004 (0x1.3333333333334p-2)",
            "flags: inexact",
            "mode: nearest-even",
        ]

    def test_dump_env_clean(self, capsys):
        rc, out, _ = run(
            capsys, "eval", "--dump-env", "--rounding", "positive-infinity", "(+ 1 2)"
        )
        assert out.splitlines() == [
            "3 (0x1.8000000000000p+1)",
            "flags: none",
            "mode: positive-infinity",
        ]

    def test_error_style_diagnostic(self, capsys):
        rc, out, err = run(capsys, "eval", "(/ 1 0)")
        assert rc == 1 and out == ""
        assert err == "LIA-error: divide-by-zero in div(1, 0) continuation=+inf\n"

    def test_recording_style_flag(self, capsys):
        rc, out, err = run(capsys, "eval", "--style", "recording", "(/ 1 0)")
        assert rc == 0 and err == ""
        assert out == "+inf\n"

    def test_terminating_style_exits_two(self, capsys):
        with pytest.raises(SystemExit) as info:
            main(["eval", "--style", "terminating", "(/ 1 0)"])
        assert info.value.code == 2
        err = capsys.readouterr().err
        assert err == "LIA-NTM: divide-by-zero in div(1, 0) continuation=+inf\n"

    def test_syntax_error(self, capsys):
        rc, out, err = run(capsys, "eval", "(+ 1")
        assert rc == 1 and out == ""
        assert err.startswith("liamath: line 1, column 1: unclosed")

    def test_unknown_operator(self, capsys):
        rc, _, err = run(capsys, "eval", "(frob 1)")
        assert rc == 1
        assert "unknown operator" in err


class TestTrapForms:
    def test_continue_with_value(self, capsys):
        rc, out, _ = run(
            capsys,
            "eval",
            "(trap-math (:notify-by :error) (/ 1 0)"
            " (:divide-by-zero (:continue 42)))",
        )
        assert rc == 0
        assert out == "42 (0x1.5000000000000p+5)\n"

    def test_bare_continue_uses_standard_continuation(self, capsys):
        rc, out, _ = run(
            capsys,
            "eval",
            "(trap-math (:notify-by :error) (/ 1 0) (:divide-by-zero :continue))",
        )
        assert rc == 0 and out == "+inf\n"

    def test_save_clear_merge_scenario(self, capsys):
        rc, out, _ = run(
            capsys,
            "eval",
            "--dump-env",
            "(trap-math (:notify-by :error :before :save :clear :after :merge)"
            " (* max-finite 2) (:overflow :clear (:continue 42)))",
        )
        assert rc == 0
        assert out.splitlines() == [
            "42 (0x1.5000000000000p+5)",
            "flags: inexact",
            "mode: nearest-even",
        ]

    def test_grouped_option_spelling(self, capsys):
        rc, out, _ = run(
            capsys,
            "eval",
            "(trap-math (:notify-by :error (:before (:save :clear))"
            " (:after (:merge))) (+ 1 1))",
        )
        assert rc == 0 and out == "2 (0x1.0000000000000p+1)\n"

    def test_raise_new_kind_escapes_unhandled(self, capsys):
        rc, _, err = run(
            capsys,
            "eval",
            "(trap-math (:notify-by :error) (/ 1 0) (:divide-by-zero (:raise :overflow)))",
        )
        assert rc == 1
        assert err == "LIA-error: overflow in div(1, 0) continuation=+inf\n"

    def test_bad_trap_options(self, capsys):
        rc, _, err = run(
            capsys, "eval", "(trap-math (:after :merge) (+ 1 1))"
        )
        assert rc == 1
        assert "merge" in err

    def test_bad_clause_keyword(self, capsys):
        rc, _, err = run(
            capsys, "eval", "(trap-math () (+ 1 1) (:sideways :continue))"
        )
        assert rc == 1
        assert "indicator" in err


class TestConformanceCommand:
    def test_flat_output_round_trips(self, capsys):
        rc, out, err = run(capsys, "conformance")
        assert rc == 0 and err == ""
        assert ConformanceDescriptor.from_flat(out) == describe_conformance()
        names = [line.split(":")[0] for line in out.splitlines()]
        assert names == sorted(names)

    def test_json_output(self, capsys):
        rc, out, _ = run(capsys, "conformance", "--json")
        assert rc == 0
        assert json.loads(out) == describe_conformance().to_mapping()

    def test_exclusive_format_flags(self, capsys):
        rc, _, err = run(capsys, "conformance", "--flat", "--json")
        assert rc == 1
        assert err.startswith("liamath: ")


class TestUsageErrors:
    def test_no_arguments(self, capsys):
        rc, _, err = run(capsys)
        assert rc == 1 and err.startswith("liamath: ")

    def test_unknown_subcommand(self, capsys):
        rc, _, err = run(capsys, "frobnicate")
        assert rc == 1 and err.startswith("liamath: ")

    def test_bad_style_choice(self, capsys):
        rc, _, err = run(capsys, "eval", "--style", "loud", "(+ 1 1)")
        assert rc == 1 and err.startswith("liamath: ")


class TestRepl:
    def feed(self, monkeypatch, text):
        monkeypatch.setattr("sys.stdin", io.StringIO(text))

    def test_session(self, capsys, monkeypatch):
        self.feed(monkeypatch, "(+ 1 2)\n\n(style :recording (/ 1 0))\n:quit\n")
        rc = main(["repl"])
        captured = capsys.readouterr()
        assert rc == 0
        assert captured.out.splitlines() == [
            "3 (0x1.8000000000000p+1)",
            "+inf",
        ]
        assert captured.err == ""

    def test_recovers_from_errors(self, capsys, monkeypatch):
        self.feed(monkeypatch, "(+ 1\n(/ 1 0)\n(+ 2 2)\n")
        rc = main(["repl"])
        captured = capsys.readouterr()
        assert rc == 0
        err_lines = captured.err.splitlines()
        assert err_lines[0].startswith("liamath: line 1, column 1")
        assert err_lines[1].startswith("LIA-error: divide-by-zero")
        assert captured.out.splitlines() == ["4 (0x1.0000000000000p+2)"]

    def test_environment_persists_across_lines(self, capsys, monkeypatch):
        self.feed(monkeypatch, "(+ 0.1 0.2)\n(/ 1 0)\n")
        rc = main(["repl", "--style", "recording", "--dump-env"])
        captured = capsys.readouterr()
        assert rc == 0
        lines = captured.out.splitlines()
        assert lines[1] == "flags: inexact"
        # the second line's flags accumulate onto the first's
        assert lines[4] == "flags: divide-by-zero, inexact"

    def test_eof_ends_session(self, capsys, monkeypatch):
        self.feed(monkeypatch, "(+ 1 1)\n")
        assert main(["repl"]) == 0
        assert capsys.readouterr().out == "2 (0x1.0000000000000p+1)\n"
