"""Composable characteristic functions over typed universes.

An Indicator wraps a pure membership map into {0, 1} together with the
universe kind it lives on (the real line, the plane, or the naturals).
Combinators never mutate their inputs; mixing universes is an error.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .bcore import ZERO, ONE, HalfInt, Real, b, b_mm, b_mp, b_pm, b_pp

REALS = "reals"
PLANE = "plane"
NATURALS = "naturals"
UNIVERSE_KINDS = (REALS, PLANE, NATURALS)

OPEN = "open"
CLOSED = "closed"


class UniverseMismatchError(ValueError):
    """Raised when indicators over different universes are combined."""


def _check_kind(kind: str) -> None:
    if kind not in UNIVERSE_KINDS:
        raise ValueError(f"unknown universe kind {kind!r}; expected one of {UNIVERSE_KINDS}")


def _check_openness(value: str, what: str) -> None:
    if value not in (OPEN, CLOSED):
        raise ValueError(f"{what} must be {OPEN!r} or {CLOSED!r}, got {value!r}")


@dataclass(frozen=True)
class Indicator:
    """Pure total map from a universe element to {0, 1}.

    The label is for diagnostics only and carries no semantic weight.
    """

    fn: Callable = field(compare=False)
    label: str
    universe_kind: str

    def eval(self, x) -> HalfInt:
        return self.fn(x)

    def __call__(self, x) -> HalfInt:
        return self.fn(x)

    def __repr__(self) -> str:
        return f"Indicator({self.label!r}, universe={self.universe_kind})"


@dataclass(frozen=True)
class Interval:
    """Interval a..b (a < b) with independently open or closed endpoints."""

    a: Real
    b: Real
    left: str = CLOSED
    right: str = CLOSED

    def __post_init__(self):
        _check_openness(self.left, "left endpoint")
        _check_openness(self.right, "right endpoint")
        if not self.a < self.b:
            raise ValueError(f"interval requires a < b, got a={self.a!r}, b={self.b!r}")


@dataclass(frozen=True)
class Disk:
    """Disk of radius r > 0 centered at (cx, cy), with open or closed boundary."""

    cx: Real
    cy: Real
    r: Real
    boundary: str = OPEN

    def __post_init__(self):
        _check_openness(self.boundary, "boundary")
        if not self.r > 0:
            raise ValueError(f"disk requires r > 0, got r={self.r!r}")


def universe(kind: str = REALS) -> Indicator:
    """Constant-1 indicator: every element belongs."""
    _check_kind(kind)
    return Indicator(lambda x: ONE, "U", kind)


def empty(kind: str = REALS) -> Indicator:
    """Constant-0 indicator, realized as b(1, 0)."""
    _check_kind(kind)
    return Indicator(lambda x: b(1, 0), "empty", kind)


def _halves(lo: Real, hi: Real):
    """Midpoint and half-width of [lo, hi], exact unless a float is involved."""
    if isinstance(lo, HalfInt):
        lo = lo.as_fraction()
    if isinstance(hi, HalfInt):
        hi = hi.as_fraction()
    if isinstance(lo, float) or isinstance(hi, float):
        return (lo + hi) / 2.0, (hi - lo) / 2.0
    return Fraction(lo + hi, 2), Fraction(hi - lo, 2)


_VARIANTS = {
    (CLOSED, CLOSED): b_pp,
    (OPEN, OPEN): b_mm,
    (OPEN, CLOSED): b_mp,
    (CLOSED, OPEN): b_pm,
}


def interval_set(iv: Interval) -> Indicator:
    """Indicator of an interval on the real line.

    The border variant matching the requested endpoint openness is used, so
    endpoint values are exactly 0 or 1, never 1/2.
    """
    variant = _VARIANTS[(iv.left, iv.right)]
    mid, half = _halves(iv.a, iv.b)
    brackets = ("[" if iv.left == CLOSED else "(", "]" if iv.right == CLOSED else ")")
    label = f"interval{brackets[0]}{iv.a}, {iv.b}{brackets[1]}"

    def fn(x):
        bit = variant(x - mid, half).as_bit()
        return ONE if bit else ZERO

    return Indicator(fn, label, REALS)


def disk_set(d: Disk) -> Indicator:
    """Indicator of a disk in the plane: B--((x-cx)^2 + (y-cy)^2, r^2), or B++ if closed."""
    variant = b_mm if d.boundary == OPEN else b_pp
    cx, cy = d.cx, d.cy
    r2 = d.r * d.r
    label = f"disk({d.cx}, {d.cy}, {d.r}{', closed' if d.boundary == CLOSED else ''})"

    def fn(p):
        x, y = p
        dx = x - cx
        dy = y - cy
        bit = variant(dx * dx + dy * dy, r2).as_bit()
        return ONE if bit else ZERO

    return Indicator(fn, label, PLANE)


def intersect(a: Indicator, b_: Indicator) -> Indicator:
    """Pointwise product: the indicator of the intersection."""
    if a.universe_kind != b_.universe_kind:
        raise UniverseMismatchError(
            f"cannot intersect {a.universe_kind} indicator with {b_.universe_kind} indicator"
        )

    def fn(x):
        return ONE if a.fn(x).as_bit() * b_.fn(x).as_bit() else ZERO

    return Indicator(fn, f"inter({a.label}, {b_.label})", a.universe_kind)


def complement(a: Indicator) -> Indicator:
    """Pointwise 1 - a(x)."""

    def fn(x):
        return ZERO if a.fn(x).as_bit() else ONE

    return Indicator(fn, f"not({a.label})", a.universe_kind)
