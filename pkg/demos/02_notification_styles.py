"""The three notification styles for exceptional arithmetic events.

NRI (recording): the event sets a persistent indicator flag and the
operation returns its continuation value, so computation flows on.
NACF (error): the event transfers control, here as a raised condition
carrying the operation, operands, and continuation value.
NTM (terminating): the event prints a diagnostic and ends the process,
shown below in a subprocess so this demo survives it.
"""

import subprocess
import sys

from liamath import (
    DivisionByZeroNotification,
    FpEnvironment,
    Indicator,
    NotificationStyle,
    current_environment,
    div,
    evaluation_context,
    mul,
    MAX_FINITE,
)


def recording_style():
    print("recording style: flags accumulate, values keep flowing")
    with evaluation_context(FpEnvironment(style=NotificationStyle.RECORDING)):
        env = current_environment()
        print(f"  1/0          -> {div(1.0, 0.0)}")
        print(f"  maxfinite*2  -> {mul(MAX_FINITE, 2.0)}")
        flags = ", ".join(sorted(k.value for k in env.flags))
        print(f"  flags now    -> {flags}")
    print()


def error_style():
    print("error style: the event arrives as a catchable condition")
    with evaluation_context(FpEnvironment(style=NotificationStyle.ERROR)):
        try:
            div(1.0, 0.0)
        except DivisionByZeroNotification as cond:
            print(f"  caught {cond.kind.value} from {cond.operation}{cond.operands}")
            print(f"  continuation value was {cond.continuation}")
            print(f"  flag recorded anyway: "
                  f"{current_environment().test_indicator(Indicator.DIVIDE_BY_ZERO)}")
    print()


def terminating_style():
    print("terminating style: diagnostic line, exit status 2 (run in a child)")
    proc = subprocess.run(
        [sys.executable, "-m", "liamath", "eval", "--style", "terminating", "(/ 1 0)"],
        capture_output=True,
        text=True,
    )
    print(f"  child stderr -> {proc.stderr.strip()}")
    print(f"  child status -> {proc.returncode}")


def main():
    recording_style()
    error_style()
    terminating_style()


if __name__ == "__main__":
    main()
