"""Directed rounding on binary64, computed in software.

Every operation here produces the floating-point neighbor of the exact
real result on a chosen side.  The trick is an error-free transformation:
the hardware's round-to-nearest result plus the exact sign of what was
thrown away determine both directed neighbors without ever switching the
FPU mode.
"""

import math

from liamath import RoundingMode, add_dir, div_dir, float_to_bits, sqrt_dir

DOWN = RoundingMode.TO_NEGATIVE_INFINITY
UP = RoundingMode.TO_POSITIVE_INFINITY
ZERO = RoundingMode.TO_ZERO
NE = RoundingMode.TO_NEAREST_EVEN


def show(label, value):
    print(f"  {label:22} {value!r:25} {value.hex()}")


def main():
    print("0.1 + 0.2 under the four operational modes:")
    for mode in (DOWN, ZERO, NE, UP):
        show(mode.label, add_dir(0.1, 0.2, mode))
    print()

    print("1/3 brackets the exact value between adjacent doubles:")
    lo = div_dir(1.0, 3.0, DOWN)
    hi = div_dir(1.0, 3.0, UP)
    show("downward", lo)
    show("upward", hi)
    print(f"  adjacent: {math.nextafter(lo, math.inf) == hi}")
    print()

    print("sqrt(2) the same way:")
    show("downward", sqrt_dir(2.0, DOWN))
    show("upward", sqrt_dir(2.0, UP))
    print()

    print("pi + pi is exact (doubling never rounds), so direction is moot:")
    sums = [add_dir(math.pi, math.pi, m) for m in (DOWN, NE, UP)]
    for mode, s in zip((DOWN, NE, UP), sums):
        show(mode.label, s)
    print(f"  all bit-identical: {len({float_to_bits(s) for s in sums}) == 1}")


if __name__ == "__main__":
    main()
