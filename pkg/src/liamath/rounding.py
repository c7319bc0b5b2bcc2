"""Correctly rounded binary64 arithmetic under explicit rounding modes.

The strategy never touches the hardware rounding state: each operation is
computed once in round-to-nearest, the exact residual sign is recovered with
an error-free transformation, and the result is stepped to a neighbor when
the requested direction calls for it.  Results are bit-exact for every mode,
including signed zeros, subnormals, and the overflow edge cases.

Functions here produce values only; indicator flags and notifications are
the ops layer's job.
"""

from __future__ import annotations

import math
from enum import IntEnum

from . import fpcore
from .fpcore import MAX_FINITE, QNAN, quiet, sign_bit

__all__ = [
    "RoundingMode",
    "resolve_mode",
    "add_dir",
    "sub_dir",
    "mul_dir",
    "div_dir",
    "sqrt_dir",
]


class RoundingMode(IntEnum):
    """Rounding directions with their interchange codes.

    INDETERMINATE is a reportable state for environments that cannot name
    their direction; it is never accepted as an operational mode.
    TO_NEAREST ties away from zero in some older descriptions, but here it
    is an alias of TO_NEAREST_EVEN (the conformance report says so).
    """

    INDETERMINATE = -1
    TO_ZERO = 0
    TO_NEAREST = 1
    TO_POSITIVE_INFINITY = 2
    TO_NEGATIVE_INFINITY = 3
    TO_NEAREST_EVEN = 4

    @property
    def label(self) -> str:
        return _MODE_LABELS[self]


_MODE_LABELS = {
    RoundingMode.INDETERMINATE: "indeterminate",
    RoundingMode.TO_ZERO: "zero",
    RoundingMode.TO_NEAREST: "nearest",
    RoundingMode.TO_POSITIVE_INFINITY: "positive-infinity",
    RoundingMode.TO_NEGATIVE_INFINITY: "negative-infinity",
    RoundingMode.TO_NEAREST_EVEN: "nearest-even",
}

_NEAREST = (RoundingMode.TO_NEAREST, RoundingMode.TO_NEAREST_EVEN)


def resolve_mode(mode: RoundingMode | int | None) -> RoundingMode:
    """Normalize a mode argument; None means the ambient environment mode."""
    if mode is None:
        from .environment import current_environment

        mode = current_environment().mode
    mode = RoundingMode(mode)
    if mode is RoundingMode.INDETERMINATE:
        raise ValueError("indeterminate is not an operational rounding mode")
    return mode


def directed_value(rn: float, s: int, mode: RoundingMode) -> float:
    """Convert a round-to-nearest result plus exact residual sign to mode.

    s is the sign of (exact - rn).  rn must be finite.
    """
    if s == 0 or mode in _NEAREST:
        return rn
    if mode is RoundingMode.TO_POSITIVE_INFINITY:
        return math.nextafter(rn, math.inf) if s > 0 else rn
    if mode is RoundingMode.TO_NEGATIVE_INFINITY:
        return math.nextafter(rn, -math.inf) if s < 0 else rn
    # TO_ZERO: truncate; the residual sign settles which side of zero the
    # exact value is on when rn itself is a zero.
    if rn < 0.0 or (rn == 0.0 and s < 0):
        return math.nextafter(rn, math.inf) if s > 0 else rn
    return math.nextafter(rn, -math.inf) if s < 0 else rn


def overflow_edge(rn_inf: float, mode: RoundingMode) -> float:
    """Directed result when round-to-nearest already overflowed to +-inf."""
    if mode in _NEAREST:
        return rn_inf
    if rn_inf > 0:
        return rn_inf if mode is RoundingMode.TO_POSITIVE_INFINITY else MAX_FINITE
    return rn_inf if mode is RoundingMode.TO_NEGATIVE_INFINITY else -MAX_FINITE


def zero_sum_value(a: float, b: float, mode: RoundingMode) -> float:
    """Sign of an exactly zero sum: +0 everywhere except toward -inf,
    unless both addends are zeros of the same sign, which is preserved."""
    if a == 0.0 and b == 0.0 and sign_bit(a) == sign_bit(b):
        return a
    return -0.0 if mode is RoundingMode.TO_NEGATIVE_INFINITY else 0.0


def add_parts(a: float, b: float) -> tuple[float, int, bool]:
    """(rn, residual sign, overflowed) for finite a + b."""
    rn = a + b
    if math.isinf(rn):
        return rn, (1 if rn > 0 else -1), True
    lo = fpcore.two_sum(a, b).lo
    return rn, (lo > 0.0) - (lo < 0.0), False


def mul_parts(a: float, b: float) -> tuple[float, int, bool]:
    """(rn, residual sign, overflowed) for finite a * b."""
    rn = a * b
    if math.isinf(rn):
        return rn, (1 if rn > 0 else -1), True
    return rn, fpcore.prod_residual_sign(a, b, rn), False


def div_parts(a: float, b: float) -> tuple[float, int, bool]:
    """(rn, residual sign, overflowed) for finite a / nonzero finite b."""
    rn = a / b
    if math.isinf(rn):
        return rn, (1 if rn > 0 else -1), True
    if a == 0.0:
        return rn, 0, False
    return rn, fpcore.quot_residual_sign(a, b, rn), False


def sqrt_parts(x: float) -> tuple[float, int, bool]:
    """(rn, residual sign, False) for finite x > 0; sqrt cannot overflow."""
    rn = math.sqrt(x)
    return rn, fpcore.sqrt_residual_sign(x, rn), False


def _assemble(
    parts: tuple[float, int, bool],
    mode: RoundingMode,
    zero_pair: tuple[float, float] | None = None,
) -> float:
    rn, s, overflowed = parts
    if overflowed:
        return overflow_edge(rn, mode)
    if rn == 0.0 and s == 0 and zero_pair is not None:
        return zero_sum_value(zero_pair[0], zero_pair[1], mode)
    return directed_value(rn, s, mode)


def add_dir(a: float, b: float, mode: RoundingMode | int | None = None) -> float:
    """a + b rounded in mode (ambient mode when None)."""
    mode = resolve_mode(mode)
    if math.isnan(a) or math.isnan(b) or math.isinf(a) or math.isinf(b):
        return a + b
    return _assemble(add_parts(a, b), mode, zero_pair=(a, b))


def sub_dir(a: float, b: float, mode: RoundingMode | int | None = None) -> float:
    """a - b rounded in mode (ambient mode when None)."""
    mode = resolve_mode(mode)
    if math.isnan(a) or math.isnan(b) or math.isinf(a) or math.isinf(b):
        return a - b
    return _assemble(add_parts(a, -b), mode, zero_pair=(a, -b))


def mul_dir(a: float, b: float, mode: RoundingMode | int | None = None) -> float:
    """a * b rounded in mode (ambient mode when None)."""
    mode = resolve_mode(mode)
    if math.isnan(a) or math.isnan(b) or math.isinf(a) or math.isinf(b):
        return a * b
    return _assemble(mul_parts(a, b), mode)


def div_dir(a: float, b: float, mode: RoundingMode | int | None = None) -> float:
    """a / b rounded in mode (ambient mode when None).

    Division by zero and the indeterminate quotients follow the usual
    special-value rules (the hardware cannot be asked: CPython raises on a
    literal zero divide, so the special cases are built by hand).
    """
    mode = resolve_mode(mode)
    if math.isnan(a):
        return quiet(a)
    if math.isnan(b):
        return quiet(b)
    same = sign_bit(a) == sign_bit(b)
    if b == 0.0:
        if a == 0.0:
            return QNAN
        return math.inf if same else -math.inf
    if math.isinf(a):
        if math.isinf(b):
            return QNAN
        return math.inf if same else -math.inf
    if math.isinf(b):
        return 0.0 if same else -0.0
    return _assemble(div_parts(a, b), mode)


def sqrt_dir(x: float, mode: RoundingMode | int | None = None) -> float:
    """Square root of x rounded in mode (ambient mode when None).

    Zeros return themselves (sqrt(-0.0) is -0.0); negative arguments give a
    quiet NaN.
    """
    mode = resolve_mode(mode)
    if math.isnan(x):
        return quiet(x)
    if x == 0.0:
        return x
    if x < 0.0:
        return QNAN
    if math.isinf(x):
        return x
    return _assemble(sqrt_parts(x), mode)
