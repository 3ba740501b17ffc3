"""Inclusion-exclusion oracle: the 2^n - 1 term normal form for the union.

This is the deliberately expensive route, kept as the ground truth against
which the n-term tomography formulas are checked and benchmarked.  Subsets
are enumerated as integer bitmasks; every intersection term is recomputed
from scratch per mask so the exponential cost is honestly paid.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bcore import HalfInt
from .indicator import Indicator
from .tomography import SetCollection, not_in_any

DEFAULT_CAP = 24


class CapExceededError(ValueError):
    """Collection too large for exhaustive subset enumeration."""


@dataclass
class TermCounter:
    """Mutable instrumentation: terms summed and indicator calls made."""

    terms_evaluated: int = 0
    indicator_calls: int = 0


def counting_indicator(ind: Indicator, counter: TermCounter) -> Indicator:
    """Wrap an indicator so every evaluation bumps counter.indicator_calls."""

    def fn(x):
        counter.indicator_calls += 1
        return ind.fn(x)

    return Indicator(fn, ind.label, ind.universe_kind)


def _check_cap(n: int, cap: int) -> None:
    if n > cap:
        raise CapExceededError(f"collection of n={n} sets exceeds the subset-enumeration cap {cap}")


def nonempty_masks(n: int):
    """All 2^n - 1 nonempty subset bitmasks, in increasing integer order."""
    return range(1, 1 << n)


def intersection_term(c: SetCollection, mask: int, x, counter: TermCounter | None = None) -> HalfInt:
    """Product of the member indicators selected by a nonempty bitmask."""
    if mask <= 0 or mask >> c.n:
        raise ValueError(f"mask {mask:#x} does not select a nonempty subset of {c.n} members")
    prod = 1
    for j in range(c.n):
        if mask >> j & 1:
            if counter is not None:
                counter.indicator_calls += 1
            prod *= c.members[j].fn(x).as_bit()
    return HalfInt.from_int(prod)


def whitney_union(c: SetCollection, x, counter: TermCounter | None = None,
                  cap: int = DEFAULT_CAP) -> HalfInt:
    """Union via the alternating sum over all 2^n - 1 nonempty intersections."""
    _check_cap(c.n, cap)
    total = 0
    for mask in nonempty_masks(c.n):
        term = int(intersection_term(c, mask, x, counter))
        if counter is not None:
            counter.terms_evaluated += 1
        if mask.bit_count() % 2 == 1:
            total += term
        else:
            total -= term
    return HalfInt.from_int(total)


def complement_expansion(c: SetCollection, x, counter: TermCounter | None = None,
                         cap: int = DEFAULT_CAP) -> HalfInt:
    """1 - whitney_union: the k = 0 empty-intersection term contributes the 1."""
    return 1 - whitney_union(c, x, counter, cap)


def cardinality(a: Indicator, finite_universe) -> int:
    """Exact size of the set: sum of the indicator over a finite universe."""
    return sum(a.fn(x).as_bit() for x in finite_universe)


def iep_cardinality(c: SetCollection, finite_universe, cap: int = DEFAULT_CAP) -> int:
    """Elements belonging to none of the sets, by inclusion-exclusion.

    Sums (-1)^k Card(intersection) over all 2^n subsets including the empty
    one (whose intersection is the whole universe).
    """
    _check_cap(c.n, cap)
    elements = list(finite_universe)
    total = 0
    for mask in range(1 << c.n):
        if mask == 0:
            card = len(elements)
        else:
            card = sum(int(intersection_term(c, mask, x)) for x in elements)
        total += card if mask.bit_count() % 2 == 0 else -card
    return total


def not_in_any_cardinality(c: SetCollection, finite_universe) -> int:
    """Direct-enumeration oracle for iep_cardinality."""
    return sum(int(not_in_any(c, x)) for x in finite_universe)
