"""Arithmetic with full notification semantics.

Each operation screens special operands first (signaling NaNs, infinities,
zero divisors), then computes the finite case through the directed-rounding
layer and raises whichever indicator applies: invalid, divide-by-zero,
overflow, underflow, or inexact.  The value an operation returns is always
the continuation value, whether or not a notification fired, so recording
style and a continue-everything trap produce identical results.

Comparison follows the partial-order reading: NaN is unordered, equality
chains adjacent pairs, inequality requires all pairs distinct, and a
signaling NaN raises invalid with continuation false for both directions.
"""

from __future__ import annotations

import math
from itertools import combinations

from . import rounding
from .environment import Indicator, current_environment, notify
from .fpcore import MAX_FINITE, MIN_NORMAL, QNAN, is_signaling, quiet, sign_bit

__all__ = ["add", "sub", "mul", "div", "sqrt", "eq", "neq"]


def _finish(
    name: str,
    operands: tuple,
    parts: tuple[float, int, bool],
    mode: rounding.RoundingMode,
    zero_pair: tuple[float, float] | None = None,
):
    """Assemble the rounded value and raise the applicable indicator."""
    rn, s, overflowed = parts
    if overflowed:
        value = rounding.overflow_edge(rn, mode)
    elif rn == 0.0 and s == 0 and zero_pair is not None:
        value = rounding.zero_sum_value(zero_pair[0], zero_pair[1], mode)
    else:
        value = rounding.directed_value(rn, s, mode)
    # Overflow means the exact result lies strictly beyond the finite range,
    # equivalently the away-from-zero neighbor of maxfinite would be needed.
    over = overflowed or (rn == MAX_FINITE and s > 0) or (rn == -MAX_FINITE and s < 0)
    inexact = overflowed or s != 0
    if over:
        current_environment().record(Indicator.INEXACT)
        return notify(Indicator.OVERFLOW, name, operands, value)
    if inexact and abs(value) < MIN_NORMAL:
        current_environment().record(Indicator.INEXACT)
        return notify(Indicator.UNDERFLOW, name, operands, value)
    if inexact:
        return notify(Indicator.INEXACT, name, operands, value)
    return value


def add(a, b, mode=None):
    """a + b with notifications; mode None means the ambient mode."""
    a = float(a)
    b = float(b)
    mode = rounding.resolve_mode(mode)
    if is_signaling(a) or is_signaling(b):
        return notify(Indicator.INVALID, "add", (a, b), QNAN)
    if math.isnan(a) or math.isnan(b):
        return a + b
    if math.isinf(a) or math.isinf(b):
        r = a + b
        if math.isnan(r):  # opposite infinities
            return notify(Indicator.INVALID, "add", (a, b), QNAN)
        return r
    return _finish("add", (a, b), rounding.add_parts(a, b), mode, zero_pair=(a, b))


def sub(a, b, mode=None):
    """a - b with notifications; mode None means the ambient mode."""
    a = float(a)
    b = float(b)
    mode = rounding.resolve_mode(mode)
    if is_signaling(a) or is_signaling(b):
        return notify(Indicator.INVALID, "sub", (a, b), QNAN)
    if math.isnan(a) or math.isnan(b):
        return a - b
    if math.isinf(a) or math.isinf(b):
        r = a - b
        if math.isnan(r):  # same-signed infinities
            return notify(Indicator.INVALID, "sub", (a, b), QNAN)
        return r
    return _finish("sub", (a, b), rounding.add_parts(a, -b), mode, zero_pair=(a, -b))


def mul(a, b, mode=None):
    """a * b with notifications; mode None means the ambient mode."""
    a = float(a)
    b = float(b)
    mode = rounding.resolve_mode(mode)
    if is_signaling(a) or is_signaling(b):
        return notify(Indicator.INVALID, "mul", (a, b), QNAN)
    if math.isnan(a) or math.isnan(b):
        return a * b
    if math.isinf(a) or math.isinf(b):
        r = a * b
        if math.isnan(r):  # zero times infinity
            return notify(Indicator.INVALID, "mul", (a, b), QNAN)
        return r
    return _finish("mul", (a, b), rounding.mul_parts(a, b), mode)


def div(a, b, mode=None):
    """a / b with notifications; mode None means the ambient mode."""
    a = float(a)
    b = float(b)
    mode = rounding.resolve_mode(mode)
    if is_signaling(a) or is_signaling(b):
        return notify(Indicator.INVALID, "div", (a, b), QNAN)
    if math.isnan(a):
        return quiet(a)
    if math.isnan(b):
        return quiet(b)
    same = sign_bit(a) == sign_bit(b)
    if b == 0.0:
        if a == 0.0:
            return notify(Indicator.INVALID, "div", (a, b), QNAN)
        if math.isinf(a):
            return math.inf if same else -math.inf
        cont = math.inf if same else -math.inf
        return notify(Indicator.DIVIDE_BY_ZERO, "div", (a, b), cont)
    if math.isinf(a):
        if math.isinf(b):
            return notify(Indicator.INVALID, "div", (a, b), QNAN)
        return math.inf if same else -math.inf
    if math.isinf(b):
        return 0.0 if same else -0.0
    return _finish("div", (a, b), rounding.div_parts(a, b), mode)


def sqrt(x, mode=None):
    """Square root with notifications; mode None means the ambient mode."""
    x = float(x)
    mode = rounding.resolve_mode(mode)
    if is_signaling(x):
        return notify(Indicator.INVALID, "sqrt", (x,), QNAN)
    if math.isnan(x):
        return x
    if x == 0.0:
        return x
    if x < 0.0:
        return notify(Indicator.INVALID, "sqrt", (x,), QNAN)
    if math.isinf(x):
        return x
    return _finish("sqrt", (x,), rounding.sqrt_parts(x), mode)


def _eq2(a: float, b: float) -> bool:
    if is_signaling(a) or is_signaling(b):
        return notify(Indicator.INVALID, "eq", (a, b), False)
    if math.isnan(a) or math.isnan(b):
        return False
    return a == b


def _neq2(a: float, b: float) -> bool:
    if is_signaling(a) or is_signaling(b):
        return notify(Indicator.INVALID, "neq", (a, b), False)
    if math.isnan(a) or math.isnan(b):
        return True
    return a != b


def eq(first, *rest) -> bool:
    """True when all arguments are equal, testing adjacent pairs.

    Quiet NaN is unordered, so any NaN argument makes a tested pair false.
    Signaling NaN raises invalid (continuation false).  Zeros of either
    sign compare equal; infinities equal only with matching sign.  Stops at
    the first failing pair, so later pairs raise nothing.
    """
    values = [float(first)] + [float(v) for v in rest]
    for x, y in zip(values, values[1:]):
        if not _eq2(x, y):
            return False
    return True


def neq(first, *rest) -> bool:
    """True when all arguments are pairwise distinct.

    The negation of = only for two arguments; with more, every unordered
    pair must differ.  A quiet NaN is distinct from everything, itself
    included.  Signaling NaN raises invalid (continuation false).  Stops at
    the first equal pair.
    """
    values = [float(first)] + [float(v) for v in rest]
    for x, y in combinations(values, 2):
        if not _neq2(x, y):
            return False
    return True
