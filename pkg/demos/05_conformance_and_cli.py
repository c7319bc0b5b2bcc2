"""The conformance report and the command-line evaluator.

describe_conformance probes the running library (it computes each entry
by exercising the feature, not by reading a table) and the flat form
round-trips through a consistency check: the lia1-compliance line must
equal the conjunction of the provides-* lines or parsing fails.

The CLI exposes the same machinery as s-expressions with three exit
codes: 0 success, 1 usage/syntax/unhandled-error, 2 terminating-style.
"""

import subprocess
import sys

from liamath import ConformanceDescriptor, describe_conformance


def report():
    print("conformance report (flat form, sorted, diffable):")
    descriptor = describe_conformance()
    for line in descriptor.to_flat().splitlines():
        print(f"  {line}")
    print()
    print(f"  derived level-1 claim: {descriptor.lia1_compliance}")
    tampered = descriptor.to_flat().replace("provides-nri: true", "provides-nri: false")
    try:
        ConformanceDescriptor.from_flat(tampered)
        print("  tampered report parsed (unexpected)")
    except ValueError as exc:
        print(f"  tampered report rejected: {exc}")
    print()


def cli():
    print("command-line evaluator:")
    runs = [
        ["eval", "(+ 0.1 0.2)"],
        ["eval", "(+.< 0.1 0.2)"],
        ["eval", "--dump-env", "(rounding :zero (/ 1 3))"],
        ["eval", "--style", "recording", "(/ 1 0)"],
        ["eval", "(/ 1 0)"],
        ["eval", "(trap-math (:notify-by :error) (/ 1 0) "
                 "(:divide-by-zero (:continue 42)))"],
        ["eval", "(member? 0.3 (+ (interval 0.1 0.1) (interval 0.2 0.2)))"],
    ]
    for argv in runs:
        proc = subprocess.run(
            [sys.executable, "-m", "liamath", *argv],
            capture_output=True,
            text=True,
        )
        shown = " ".join(argv)
        print(f"  $ liamath {shown}")
        for line in proc.stdout.splitlines():
            print(f"    {line}")
        for line in proc.stderr.splitlines():
            print(f"    ! {line}")
        print(f"    (exit {proc.returncode})")


def main():
    report()
    cli()


if __name__ == "__main__":
    main()
