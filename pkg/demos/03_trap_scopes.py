"""Handler scopes: resumable conditions without losing the environment.

trap_math runs a body with handler clauses installed.  A clause can clear
the indicator, resume the faulting operation with a substitute value,
decline so an outer scope decides, or re-raise under a different kind.
The before/after options snapshot and restore the flag state so a scope
can fail and recover without contaminating its caller.
"""

from liamath import (
    CLEAR,
    Continue,
    FpEnvironment,
    HandlerClause,
    Indicator,
    MAX_FINITE,
    NotificationStyle,
    TrapOptions,
    current_environment,
    div,
    evaluation_context,
    mul,
    trap_math,
)


def flag_names():
    return ", ".join(sorted(k.value for k in current_environment().flags)) or "none"


def fast_then_reliable():
    """Try the quick path; on overflow substitute the careful one."""
    print("fast path with a reliable fallback:")

    def fast():
        print("  trying the fast path...")
        return mul(MAX_FINITE, 2.0)  # blows past the finite range

    def reliable():
        print("  fast path overflowed, switching to the reliable one")
        return 42.0

    current_environment().record(Indicator.UNDERFLOW)  # pre-existing state
    value = trap_math(
        TrapOptions(
            notify_by=NotificationStyle.ERROR,
            before=("save", "clear"),
            after=("merge",),
        ),
        fast,
        HandlerClause(Indicator.OVERFLOW, CLEAR, Continue(reliable)),
    )
    print(f"  result: {value}")
    print(f"  flags after the scope: {flag_names()}")
    print("  (overflow cleared inside; the earlier underflow merged back)")
    print()


def declination():
    """An inner clause may decline and let an outer scope resolve."""
    print("declining inward, resolving outward:")

    inner = lambda: trap_math(
        None,
        lambda: div(1.0, 0.0),
        HandlerClause(Indicator.DIVIDE_BY_ZERO, CLEAR),  # clears, does not resolve
    )
    value = trap_math(
        None,
        inner,
        HandlerClause(Indicator.DIVIDE_BY_ZERO, Continue(0.0)),
    )
    print(f"  outer handler supplied: {value}")
    print(f"  flags: {flag_names()} (the inner clause cleared it)")
    print()


def resumption_mid_expression():
    """The substituted value feeds the rest of the expression."""
    print("resuming in the middle of a larger expression:")

    def body():
        x = div(1.0, 0.0)           # handler replaces this with 1000.0
        return x + 1.0

    value = trap_math(
        None, body, HandlerClause(Indicator.DIVIDE_BY_ZERO, Continue(1000.0))
    )
    print(f"  (1/0) + 1 with the quotient patched to 1000 -> {value}")


def main():
    with evaluation_context(FpEnvironment()):
        fast_then_reliable()
    with evaluation_context(FpEnvironment()):
        declination()
    with evaluation_context(FpEnvironment()):
        resumption_mid_expression()


if __name__ == "__main__":
    main()
