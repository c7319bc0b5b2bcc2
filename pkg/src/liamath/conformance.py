"""Conformance introspection: which arithmetic facilities this build has.

The descriptor is produced by actually exercising the library in a scratch
evaluation context, not by reading constants: each provides-* entry holds a
probe result.  The overall level claim is derived, never stored, so a
report cannot assert a level its listed facilities do not support.

The flat text form is one "name: value" line per field, sorted by name,
suitable for diffing two builds.  Parsing the flat form back checks the
derived field against the listed ones and rejects inconsistent reports.
"""

from __future__ import annotations

import contextlib
import io
import json
import math
import sys
from dataclasses import dataclass, fields

from . import ops
from .environment import (
    Continue,
    DivisionByZeroNotification,
    HandlerClause,
    Indicator,
    NotificationStyle,
    TrapOptions,
    current_environment,
    evaluation_context,
    notification_style,
    rounding_mode,
    trap_math,
)
from .fpcore import (
    MIN_SUBNORMAL,
    QNAN,
    SNAN,
    FloatClass,
    classify,
    float_to_bits,
    next_up,
)
from .rounding import RoundingMode, add_dir

__all__ = ["ConformanceDescriptor", "describe_conformance"]


@dataclass(frozen=True)
class ConformanceDescriptor:
    """Facility inventory for one build.

    The *_subset_available fields say which operation families exist at
    all; the provides_* fields say which behavioral guarantees hold; the
    compliance fields claim full conformance to a level.  lia1_compliance
    is computed from the provides_* fields and is not storable state.
    """

    lia_subset_available: bool
    lia1_subset_available: bool
    lia2_subset_available: bool
    lia3_subset_available: bool
    provides_infinities: bool
    provides_nans: bool
    provides_rounding_modes: bool
    provides_floating_point_environment: bool
    provides_nacf: bool
    provides_nri: bool
    provides_ntm: bool
    lia2_compliance: bool
    lia3_compliance: bool
    cl_package_uses_lia: bool
    iec60559_binary64: bool
    fma_strategy: str
    to_nearest_alias: bool

    def __post_init__(self) -> None:
        if self.provides_nacf and not self.provides_floating_point_environment:
            raise ValueError(
                "a build cannot provide notification-as-error without a "
                "floating-point environment"
            )

    @property
    def lia1_compliance(self) -> bool:
        """Derived: every provides_* guarantee holds."""
        return (
            self.provides_infinities
            and self.provides_nans
            and self.provides_rounding_modes
            and self.provides_floating_point_environment
            and self.provides_nacf
            and self.provides_nri
            and self.provides_ntm
        )

    def to_mapping(self) -> dict[str, object]:
        """All fields, derived one included, keyed by report name."""
        out: dict[str, object] = {}
        for f in fields(self):
            out[f.name.replace("_", "-")] = getattr(self, f.name)
        out["lia1-compliance"] = self.lia1_compliance
        return dict(sorted(out.items()))

    def to_flat(self) -> str:
        """Sorted 'name: value' lines, booleans as true/false."""
        lines = []
        for name, value in self.to_mapping().items():
            if isinstance(value, bool):
                value = "true" if value else "false"
            lines.append(f"{name}: {value}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        return json.dumps(self.to_mapping(), indent=2) + "\n"

    @classmethod
    def from_flat(cls, text: str) -> "ConformanceDescriptor":
        """Parse the flat form, checking completeness and consistency."""
        known = {f.name.replace("_", "-"): f.name for f in fields(cls)}
        entries: dict[str, object] = {}
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line:
                continue
            name, sep, value = line.partition(":")
            if not sep:
                raise ValueError(f"line {lineno}: not a 'name: value' entry: {raw!r}")
            name = name.strip()
            value = value.strip()
            if name != "lia1-compliance" and name not in known:
                raise ValueError(f"line {lineno}: unknown field {name!r}")
            if name in entries:
                raise ValueError(f"line {lineno}: duplicate field {name!r}")
            if name == "fma-strategy":
                entries[name] = value
            elif value in ("true", "false"):
                entries[name] = value == "true"
            else:
                raise ValueError(f"line {lineno}: not a boolean: {value!r}")
        missing = (set(known) | {"lia1-compliance"}) - set(entries)
        if missing:
            raise ValueError(f"missing fields: {sorted(missing)}")
        claimed = entries.pop("lia1-compliance")
        descriptor = cls(**{known[k]: v for k, v in entries.items()})
        if claimed != descriptor.lia1_compliance:
            raise ValueError(
                "lia1-compliance does not match the listed provides-* fields"
            )
        return descriptor


def _probe_binary64() -> bool:
    fi = sys.float_info
    ok = fi.radix == 2 and fi.mant_dig == 53 and fi.max_exp == 1024
    ok = ok and fi.min_exp == -1021
    ok = ok and float_to_bits(1.5) == 0x3FF8000000000000
    ok = ok and 1.0 + 2.0**-53 == 1.0                         # round to nearest
    ok = ok and (1.0 + 2.0**-52) + 2.0**-53 == 1.0 + 2.0**-51  # ties to even
    ok = ok and next_up(0.0) == MIN_SUBNORMAL                  # gradual underflow
    return ok


def _probe_infinities() -> bool:
    with notification_style(NotificationStyle.RECORDING):
        r = ops.div(1.0, 0.0)
        ok = r == math.inf and current_environment().test_indicator(
            Indicator.DIVIDE_BY_ZERO
        )
        ok = ok and ops.div(-1.0, 0.0) == -math.inf
        ok = ok and ops.add(math.inf, -1e308) == math.inf
    return ok


def _probe_nans() -> bool:
    ok = classify(QNAN) is FloatClass.QUIET_NAN
    ok = ok and classify(SNAN) is FloatClass.SIGNALING_NAN
    with notification_style(NotificationStyle.RECORDING):
        env = current_environment()
        ok = ok and ops.eq(QNAN, QNAN) is False
        ok = ok and ops.neq(QNAN, QNAN) is True
        env.clear_indicator(Indicator.INVALID)
        r = ops.mul(0.0, math.inf)
        ok = ok and math.isnan(r) and env.test_indicator(Indicator.INVALID)
    return ok


def _probe_rounding_modes() -> bool:
    lo = add_dir(0.1, 0.2, RoundingMode.TO_NEGATIVE_INFINITY)
    hi = add_dir(0.1, 0.2, RoundingMode.TO_POSITIVE_INFINITY)
    ok = lo < hi and next_up(lo) == hi
    ok = ok and add_dir(0.1, 0.2, RoundingMode.TO_NEAREST_EVEN) in (lo, hi)
    ok = ok and add_dir(0.1, 0.2, RoundingMode.TO_NEAREST) == add_dir(
        0.1, 0.2, RoundingMode.TO_NEAREST_EVEN
    )
    pi = math.pi
    ok = ok and add_dir(pi, pi, 3) == add_dir(pi, pi, 2) == add_dir(pi, pi, 4)
    with notification_style(NotificationStyle.RECORDING):
        with rounding_mode(RoundingMode.TO_POSITIVE_INFINITY):
            ok = ok and ops.add(0.1, 0.2) == hi
        ok = ok and ops.add(0.1, 0.2) == add_dir(0.1, 0.2, 4)
    return ok


def _probe_environment() -> bool:
    env = current_environment()
    env.clear()
    env.record(Indicator.OVERFLOW)
    snap = env.save()
    env.clear()
    ok = not env.flags
    env.record(Indicator.INEXACT)
    env.merge(snap)
    ok = ok and env.flags == {Indicator.OVERFLOW, Indicator.INEXACT}
    env.clear_indicator(Indicator.OVERFLOW)
    ok = ok and not env.test_indicator(Indicator.OVERFLOW)
    ok = ok and env.test_indicator(Indicator.INEXACT)
    env.clear()
    return ok


def _probe_nri() -> bool:
    env = current_environment()
    env.clear()
    with notification_style(NotificationStyle.RECORDING):
        r = ops.div(1.0, 0.0)
    return r == math.inf and env.test_indicator(Indicator.DIVIDE_BY_ZERO)


def _probe_nacf() -> bool:
    value = trap_math(
        TrapOptions(),
        lambda: ops.div(1.0, 0.0),
        HandlerClause(Indicator.DIVIDE_BY_ZERO, Continue(0.0)),
    )
    caught = False
    try:
        with notification_style(NotificationStyle.ERROR):
            ops.div(1.0, 0.0)
    except DivisionByZeroNotification as cond:
        caught = cond.continuation == math.inf
    return value == 0.0 and caught


def _probe_ntm() -> bool:
    buf = io.StringIO()
    try:
        with notification_style(NotificationStyle.TERMINATING):
            with contextlib.redirect_stderr(buf):
                ops.div(1.0, 0.0)
    except SystemExit as stop:
        line = buf.getvalue()
        return stop.code == 2 and line.startswith("LIA-NTM: divide-by-zero in div(1, 0)")
    return False


def describe_conformance() -> ConformanceDescriptor:
    """Probe the library in a scratch context and report what it provides."""
    with evaluation_context():
        binary64 = _probe_binary64()
        infinities = _probe_infinities()
        nans = _probe_nans()
        modes = _probe_rounding_modes()
        env_ok = _probe_environment()
        nri = _probe_nri()
        nacf = _probe_nacf() and env_ok
        ntm = _probe_ntm()
    return ConformanceDescriptor(
        lia_subset_available=True,
        lia1_subset_available=True,
        lia2_subset_available=True,
        lia3_subset_available=False,
        provides_infinities=infinities,
        provides_nans=nans,
        provides_rounding_modes=modes,
        provides_floating_point_environment=env_ok,
        provides_nacf=nacf,
        provides_nri=nri,
        provides_ntm=ntm,
        lia2_compliance=False,
        lia3_compliance=False,
        cl_package_uses_lia=False,
        iec60559_binary64=binary64,
        fma_strategy="software-fallback",
        to_nearest_alias=True,
    )
