"""Layer tomography of a set collection via the B-function.

All queries reduce to the membership count k(x) = sum of the n member
indicators at x, then slice that integer field with a single B-function
evaluation.  Every query therefore costs exactly n member evaluations,
independent of how the sets overlap.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Tuple

from .bcore import ZERO, HalfInt, b
from .indicator import Indicator, UniverseMismatchError

EPS = Fraction(1, 2)


@dataclass(frozen=True)
class SetCollection:
    """Ordered collection of indicators over one shared universe."""

    members: Tuple[Indicator, ...]

    def __init__(self, members: Iterable[Indicator]):
        members = tuple(members)
        kinds = {m.universe_kind for m in members}
        if len(kinds) > 1:
            raise UniverseMismatchError(f"collection mixes universes: {sorted(kinds)}")
        object.__setattr__(self, "members", members)

    @property
    def n(self) -> int:
        return len(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)


def count(c: SetCollection, x) -> int:
    """Number of member sets containing x, as an exact integer."""
    return sum(m.fn(x).as_bit() for m in c.members)


def _check_eps(eps) -> None:
    if not 0 < eps <= Fraction(1, 2):
        raise ValueError(f"eps must lie in (0, 1/2], got {eps!r}")


def exactly_m(c: SetCollection, m: int, x, *, eps=EPS) -> HalfInt:
    """1 iff x belongs to exactly m of the n sets: b(m - k, eps)."""
    if not 0 <= m <= c.n:
        raise ValueError(f"exactly_m requires 0 <= m <= n={c.n}, got m={m}")
    _check_eps(eps)
    return b(m - count(c, x), eps)


def at_most_m(c: SetCollection, m: int, x) -> HalfInt:
    """1 iff x belongs to at least one and at most m sets: b(m+1-2k, m).

    m = 0 is rejected: membership in at least one set is presupposed, so
    callers wanting "belongs to none" use not_in_any.
    """
    if not 1 <= m <= c.n:
        raise ValueError(f"at_most_m requires 1 <= m <= n={c.n}, got m={m}")
    return b(m + 1 - 2 * count(c, x), m)


def more_than_m(c: SetCollection, m: int, x) -> HalfInt:
    """1 iff x belongs to more than m sets: b(n+m+1-2k, n-m)."""
    if not 0 <= m <= c.n:
        raise ValueError(f"more_than_m requires 0 <= m <= n={c.n}, got m={m}")
    n = c.n
    return b(n + m + 1 - 2 * count(c, x), n - m)


def union(c: SetCollection, x) -> HalfInt:
    """1 iff x belongs to at least one set: b(n+1-2k, n).

    Evaluates exactly the n member indicators; n = 0 gives b(1, 0) = 0.
    """
    n = c.n
    return b(n + 1 - 2 * count(c, x), n)


def not_in_any(c: SetCollection, x) -> HalfInt:
    """1 iff x belongs to none of the sets: 1 - union."""
    return 1 - union(c, x)


@dataclass(frozen=True)
class UnionBuilder:
    """Incremental union accumulator, starting from the empty set b(1, 0).

    Each added set contributes 1 - 2*s(x) to the first B argument and 1 to
    the thickness, so after adding all members the evaluation equals the
    closed-form union in any order.
    """

    thickness: int = 0
    members: Tuple[Indicator, ...] = field(default=())

    def first_arg_offset(self, x):
        return self.thickness + 1 - 2 * sum(s.fn(x).as_bit() for s in self.members)

    def evaluate(self, x) -> HalfInt:
        return b(self.first_arg_offset(x), self.thickness)


def empty_union() -> UnionBuilder:
    return UnionBuilder()


def extend_union(acc: UnionBuilder, s: Indicator) -> UnionBuilder:
    """Accumulator with s joined to the union."""
    return UnionBuilder(acc.thickness + 1, acc.members + (s,))
