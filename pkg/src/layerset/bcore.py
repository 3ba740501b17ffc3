"""Rectangular sign-based B-function with an exact half-integer codomain.

Everything here is a pure function.  Inputs may be ints, Fractions, floats
or HalfInt values; all decisions reduce to sign tests, so exact inputs give
exact outputs.  Float inputs are only approximate on the measure-zero set
where |x| == |y| (a border can round to interior/exterior).
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Union

Real = Union[int, float, Fraction, "HalfInt"]


class HalfInt:
    """Exact multiple of 1/2, stored as the doubled integer value.

    The B-function and its border variants only ever produce values in
    {-1, -1/2, 0, 1/2, 1}; the class itself permits any half-integer so
    that sums (e.g. both sides of the splitting identity) stay exact.
    """

    __slots__ = ("twice",)

    def __init__(self, twice: int):
        if not isinstance(twice, int) or isinstance(twice, bool):
            raise TypeError(f"twice must be an int, got {twice!r}")
        object.__setattr__(self, "twice", twice)

    def __setattr__(self, name, value):
        raise AttributeError("HalfInt is immutable")

    @classmethod
    def from_int(cls, value: int) -> "HalfInt":
        return _interned(2 * value)

    def as_fraction(self) -> Fraction:
        return Fraction(self.twice, 2)

    def is_integer(self) -> bool:
        return self.twice % 2 == 0

    def as_bit(self) -> int:
        """Return 0 or 1, rejecting every other value.

        Consumers that require the indicator codomain {0, 1} go through
        this, so a stray -1 or 1/2 fails loudly instead of corrupting a sum.
        """
        if self.twice == 0:
            return 0
        if self.twice == 2:
            return 1
        raise ValueError(f"expected an indicator value in {{0, 1}}, got {self}")

    def __int__(self) -> int:
        if self.twice % 2 != 0:
            raise ValueError(f"{self} is not an integer")
        return self.twice // 2

    def __float__(self) -> float:
        return self.twice / 2.0

    def __bool__(self) -> bool:
        return self.twice != 0

    def __add__(self, other):
        if isinstance(other, HalfInt):
            return _interned(self.twice + other.twice)
        if isinstance(other, int) and not isinstance(other, bool):
            return _interned(self.twice + 2 * other)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, HalfInt):
            return _interned(self.twice - other.twice)
        if isinstance(other, int) and not isinstance(other, bool):
            return _interned(self.twice - 2 * other)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            return _interned(2 * other - self.twice)
        return NotImplemented

    def __neg__(self) -> "HalfInt":
        return _interned(-self.twice)

    def __mul__(self, other):
        if isinstance(other, HalfInt):
            prod = self.twice * other.twice
            if prod % 2 != 0:
                raise ValueError(f"{self} * {other} is not a half-integer")
            return _interned(prod // 2)
        if isinstance(other, int) and not isinstance(other, bool):
            return _interned(self.twice * other)
        return NotImplemented

    __rmul__ = __mul__

    def _cmp_key(self, other):
        if isinstance(other, HalfInt):
            return self.twice, other.twice
        if isinstance(other, int) and not isinstance(other, bool):
            return self.twice, 2 * other
        if isinstance(other, (float, Fraction)):
            return self.as_fraction(), other
        return None

    def __eq__(self, other) -> bool:
        key = self._cmp_key(other)
        if key is None:
            return NotImplemented
        return key[0] == key[1]

    def __lt__(self, other):
        key = self._cmp_key(other)
        if key is None:
            return NotImplemented
        return key[0] < key[1]

    def __le__(self, other):
        key = self._cmp_key(other)
        if key is None:
            return NotImplemented
        return key[0] <= key[1]

    def __gt__(self, other):
        key = self._cmp_key(other)
        if key is None:
            return NotImplemented
        return key[0] > key[1]

    def __ge__(self, other):
        key = self._cmp_key(other)
        if key is None:
            return NotImplemented
        return key[0] >= key[1]

    def __hash__(self) -> int:
        return hash(self.as_fraction())

    def __str__(self) -> str:
        if self.twice % 2 == 0:
            return str(self.twice // 2)
        return f"{self.twice}/2"

    def __repr__(self) -> str:
        return f"HalfInt({self})"


_SMALL = {t: HalfInt(t) for t in range(-8, 9)}


def _interned(twice: int) -> HalfInt:
    got = _SMALL.get(twice)
    return got if got is not None else HalfInt(twice)


ZERO = _SMALL[0]
HALF = _SMALL[1]
ONE = _SMALL[2]
NEG_HALF = _SMALL[-1]
NEG_ONE = _SMALL[-2]


def _coerce(v: Real):
    """Normalize an argument to int, Fraction or finite float."""
    if isinstance(v, HalfInt):
        return Fraction(v.twice, 2)
    if isinstance(v, bool):
        raise TypeError("bool is not a valid numeric argument")
    if isinstance(v, (int, Fraction)):
        return v
    if isinstance(v, float):
        if not math.isfinite(v):
            raise ValueError(f"non-finite argument: {v!r}")
        return v
    raise TypeError(f"unsupported numeric type: {type(v).__name__}")


def _sgn(v) -> int:
    return (v > 0) - (v < 0)


def sign(x: Real) -> HalfInt:
    """Sign of x as a HalfInt: 1, -1, or 0 at x == 0."""
    return _SMALL[2 * _sgn(_coerce(x))]


def b(x: Real, y: Real) -> HalfInt:
    """Rectangular function (sign(x+y) - sign(x-y)) / 2.

    Equals sign(y) for |x| < |y|, sign(y)/2 on the borders |x| == |y| != 0,
    and 0 everywhere else.  The support is the interval of half-width |y|
    centered at 0; the sign of y sets the sign of the plateau.
    """
    xv = _coerce(x)
    yv = _coerce(y)
    return _SMALL[_sgn(xv + yv) - _sgn(xv - yv)]


def b_kronecker(m: int, n: int) -> HalfInt:
    """Kronecker delta: 1 if m == n else 0.

    Agrees with b(m - n, eps) for any eps in (0, 1/2] when m, n are ints.
    """
    if isinstance(m, bool) or isinstance(n, bool) or not isinstance(m, int) or not isinstance(n, int):
        raise TypeError("b_kronecker expects integers")
    return ONE if m == n else ZERO


def b_pp(x: Real, y: Real) -> HalfInt:
    """Closed-closed variant: +-1 on the closed support [-|y|, |y|], else 0."""
    return b(0, b(x, y))


def b_mm(x: Real, y: Real) -> HalfInt:
    """Open-open variant: +-1 strictly inside (-|y|, |y|), 0 at the borders."""
    inner = b(x, y)
    pp = b_pp(x, y)
    return _interned(2 * inner.twice - pp.twice)


def _scaled(mag, h: HalfInt):
    """mag * h, exact whenever mag is an int or Fraction."""
    if isinstance(mag, float):
        return mag * (h.twice / 2.0)
    return mag * Fraction(h.twice, 2)


def b_mp(x: Real, y: Real) -> HalfInt:
    """Open-closed variant: for y > 0 equals 1 exactly on (-y, y]."""
    xv = _coerce(x)
    yv = _coerce(y)
    return b(0, _scaled(abs(xv + yv), b(x, y)))


def b_pm(x: Real, y: Real) -> HalfInt:
    """Closed-open variant: for y > 0 equals 1 exactly on [-y, y)."""
    xv = _coerce(x)
    yv = _coerce(y)
    return b(0, _scaled(abs(xv - yv), b(x, y)))


def interval_identity(x: Real, r: Real, q: Real) -> HalfInt:
    """Encode the inequality r < x < q as b(x - (q+r)/2, (q-r)/2).

    Returns 1 strictly inside, 1/2 at x in {r, q}, 0 outside.  Requires
    r < q; the negative-thickness branch stays reachable through b directly.
    """
    rv = _coerce(r)
    qv = _coerce(q)
    if not rv < qv:
        raise ValueError(f"interval_identity requires r < q, got r={r!r}, q={q!r}")
    if isinstance(rv, float) or isinstance(qv, float):
        mid = (rv + qv) / 2.0
        half = (qv - rv) / 2.0
    else:
        mid = Fraction(rv + qv, 2)
        half = Fraction(qv - rv, 2)
    return b(_coerce(x) - mid, half)
