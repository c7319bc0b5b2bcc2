"""Endpoint intervals: every exact result is trapped between the bounds.

Each operation rounds its lower endpoint toward -inf and its upper toward
+inf, so the interval always encloses the exact real-number result even
though endpoints are ordinary doubles.  Division by an interval containing
zero follows the two documented rules rather than producing NaN endpoints.
"""

from liamath import (
    EMPTY,
    FpEnvironment,
    Interval,
    NotificationStyle,
    current_environment,
    evaluation_context,
    i_add,
    i_div,
    i_member,
    i_mul,
    i_sub,
    i_subseteq,
    is_point,
    radius,
)


def enclosure():
    print("0.1 + 0.2 as an interval (both endpoints are exact doubles):")
    s = i_add(Interval(0.1, 0.1), Interval(0.2, 0.2))
    print(f"  [0.1,0.1] + [0.2,0.2] = {s}")
    print(f"  radius (one ulp here): {radius(s)}")
    print(f"  contains the double 0.1+0.2: {i_member(0.1 + 0.2, s)}")
    print()


def arithmetic():
    a = Interval(-2.0, 3.0)
    b = Interval(4.0, 5.0)
    print(f"a = {a}, b = {b}")
    print(f"  a + b = {i_add(a, b)}")
    print(f"  a - b = {i_sub(a, b)}")
    print(f"  a * b = {i_mul(a, b)}")
    print(f"  [1,1] / [3,3] = {i_div(Interval(1.0, 1.0), Interval(3.0, 3.0))}")
    print(f"  a inside [-10,10]: {i_subseteq(a, Interval(-10.0, 10.0))}")
    print(f"  [2,2] is a point: {is_point(Interval(2.0, 2.0))}")
    print()


def division_rules():
    print("dividing by an interval that contains zero:")
    env = current_environment()
    env.clear()
    out = i_div(Interval(1.0, 2.0), Interval(-1.0, 1.0))
    flags = ", ".join(sorted(k.value for k in env.flags))
    print(f"  [1,2] / [-1,1] = {out}   flags: {flags}")
    env.clear()
    out = i_div(Interval(1.0, 2.0), Interval(0.0, 0.0))
    flags = ", ".join(sorted(k.value for k in env.flags))
    print(f"  [1,2] / [0,0]  = {out}   flags: {flags}")
    env.clear()
    print(f"  empty absorbs: [1,2] + empty = {i_add(Interval(1.0, 2.0), EMPTY)}")
    print()


def unbounded():
    print("infinite endpoints are ordinary closed endpoints:")
    print(f"  [0,+inf] * [0,+inf] = "
          f"{i_mul(Interval(0.0, float('inf')), Interval(0.0, float('inf')))}")
    half_line = Interval(1.0, float("inf"))
    print(f"  [1,+inf] / [2,+inf] = {i_div(half_line, Interval(2.0, float('inf')))}")
    print(f"  radius of {half_line}: {radius(half_line)}")


def main():
    with evaluation_context(FpEnvironment(style=NotificationStyle.RECORDING)):
        enclosure()
        arithmetic()
        division_rules()
        unbounded()


if __name__ == "__main__":
    main()
