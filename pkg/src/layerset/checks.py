"""Self-contained invariant suites, runnable via `layerset check`.

Each suite returns a CheckResult instead of asserting, so the CLI can
report every suite and tests can feed in a deliberately corrupted
B-function as a negative control.  Case-table routes here are written
out independently of bcore's sign-formula route on purpose.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from . import tomography
from .bcore import HalfInt, b, b_kronecker, b_mm, b_mp, b_pm, b_pp
from .indicator import CLOSED, OPEN, Interval, interval_set
from .tomography import SetCollection


@dataclass
class CheckResult:
    name: str
    passed: bool
    cases: int
    failure: Optional[str] = None

    def line(self) -> str:
        if self.passed:
            return f"ok   {self.name}: {self.cases} cases"
        return f"FAIL {self.name}: {self.failure}"


def _piecewise_b(x, y) -> HalfInt:
    """Case-table route for B, independent of the sign-formula route."""
    ax, ay = abs(x), abs(y)
    if ax < ay:
        return HalfInt(2 if y > 0 else -2)
    if ax == ay and y != 0:
        return HalfInt(1 if y > 0 else -1)
    return HalfInt(0)


def _half_grid(lo: int, hi: int):
    """Exact half-integer probe values lo/2 .. hi/2."""
    return [Fraction(t, 2) for t in range(lo, hi + 1)]


def check_formula_vs_table(samples: int = 100_000, seed: int = 0,
                           b_impl: Callable = b) -> CheckResult:
    """Sign-formula route agrees with the piecewise case table."""
    rng = random.Random(seed)
    cases = 0
    for xv, yv in _formula_probe_points(rng, samples):
        cases += 1
        got = b_impl(xv, yv)
        want = _piecewise_b(xv, yv)
        if got != want:
            return CheckResult("b formula vs case table", False, cases,
                               f"b({xv!r}, {yv!r}) = {got}, table says {want}")
    return CheckResult("b formula vs case table", True, cases)


def _formula_probe_points(rng: random.Random, samples: int):
    borders = _half_grid(-6, 6)
    for value in borders:
        # constructed |x| == |y| border cases, all sign combinations
        yield value, value
        yield value, -value
        yield -value, value
    for _ in range(samples):
        if rng.random() < 0.5:
            yield rng.uniform(-10, 10), rng.uniform(-10, 10)
        else:
            yield Fraction(rng.randrange(-40, 41), 4), Fraction(rng.randrange(-40, 41), 4)


def check_splitting(samples: int = 100_000, seed: int = 1,
                    b_impl: Callable = b) -> CheckResult:
    """b(x, y+z) == b(x+y, z) + b(x-z, y), exactly, including degenerate triples."""
    rng = random.Random(seed)
    triples = []
    grid = _half_grid(-4, 4)
    for x in grid:
        for y in grid:
            for z in grid:
                # covers every way the sign arguments x+y+z, x+y-z, x-y-z hit 0
                triples.append((x, y, z))
    for _ in range(samples):
        triples.append((rng.uniform(-5, 5), rng.uniform(-5, 5), rng.uniform(-5, 5)))
    cases = 0
    for x, y, z in triples:
        cases += 1
        lhs = b_impl(x, y + z)
        rhs = b_impl(x + y, z) + b_impl(x - z, y)
        if lhs != rhs:
            return CheckResult("splitting property", False, cases,
                               f"b({x!r}, {y!r}+{z!r}) = {lhs} but split sum = {rhs}")
    return CheckResult("splitting property", True, cases)


def check_kronecker(b_impl: Callable = b) -> CheckResult:
    """b(m-n, eps) equals the Kronecker delta for eps in (0, 1/2]."""
    cases = 0
    for eps in (Fraction(1, 8), Fraction(1, 4), Fraction(1, 2)):
        for m in range(-100, 101):
            for n in range(-100, 101):
                cases += 1
                got = b_impl(m - n, eps)
                want = b_kronecker(m, n)
                if got != want:
                    return CheckResult("kronecker reduction", False, cases,
                                       f"b({m}-{n}, {eps}) = {got}, delta = {want}")
    return CheckResult("kronecker reduction", True, cases)


def check_nonneg_table(b_impl: Callable = b) -> CheckResult:
    """Non-negative-integer case table on [0, 20]^2."""
    cases = 0
    for x in range(21):
        for y in range(21):
            cases += 1
            got = b_impl(x, y)
            if x < y:
                want = HalfInt(2)
            elif x == y != 0:
                want = HalfInt(1)
            else:
                want = HalfInt(0)
            if got != want:
                return CheckResult("non-negative integer table", False, cases,
                                   f"b({x}, {y}) = {got}, table says {want}")
    return CheckResult("non-negative integer table", True, cases)


def _pp_table(x, y):
    if y > 0 and -y <= x <= y:
        return 1
    if y < 0 and y <= x <= -y:
        return -1
    return 0


def _mm_table(x, y):
    if y > 0 and -y < x < y:
        return 1
    if y < 0 and y < x < -y:
        return -1
    return 0


def _mp_table(x, y):
    if y > 0 and -y < x <= y:
        return 1
    if y < 0 and y <= x < -y:
        return -1
    return 0


def _pm_table(x, y):
    if y > 0 and -y <= x < y:
        return 1
    if y < 0 and y < x <= -y:
        return -1
    return 0


def check_border_variants() -> CheckResult:
    """The four border variants match their case tables around every border."""
    variants = {
        "b_pp": (b_pp, _pp_table),
        "b_mm": (b_mm, _mm_table),
        "b_mp": (b_mp, _mp_table),
        "b_pm": (b_pm, _pm_table),
    }
    probes = _half_grid(-8, 8)
    cases = 0
    for name, (fn, table) in variants.items():
        for y in probes:
            for x in probes:
                cases += 1
                got = fn(x, y)
                want = HalfInt(2 * table(x, y))
                if got != want:
                    return CheckResult("border variant tables", False, cases,
                                       f"{name}({x}, {y}) = {got}, table says {want}")
    return CheckResult("border variant tables", True, cases)


def _random_collection(rng: random.Random, n: int) -> SetCollection:
    members = []
    for _ in range(n):
        a = Fraction(rng.randrange(-32, 25), 8)
        width = Fraction(rng.randrange(1, 33), 8)
        members.append(interval_set(Interval(
            a, a + width,
            rng.choice((OPEN, CLOSED)), rng.choice((OPEN, CLOSED)))))
    return SetCollection(members)


def _probe_points(rng: random.Random, count: int):
    return [rng.uniform(-5, 5) for _ in range(count)]


def check_partition_identities(seed: int = 2, collections: int = 40,
                               probes: int = 60) -> CheckResult:
    """union == at_most_m + more_than_m for all m, and union == sum of exactly_m."""
    rng = random.Random(seed)
    cases = 0
    for _ in range(collections):
        c = _random_collection(rng, rng.randrange(1, 9))
        for x in _probe_points(rng, probes):
            u = tomography.union(c, x)
            total = sum((tomography.exactly_m(c, m, x) for m in range(1, c.n + 1)), HalfInt(0))
            cases += 1
            if total != u:
                return CheckResult("partition identities", False, cases,
                                   f"sum of exactly_m = {total} but union = {u} at x={x!r}")
            for m in range(1, c.n + 1):
                cases += 1
                lhs = tomography.at_most_m(c, m, x) + tomography.more_than_m(c, m, x)
                if lhs != u:
                    return CheckResult("partition identities", False, cases,
                                       f"at_most_{m} + more_than_{m} = {lhs} but union = {u} at x={x!r}")
    return CheckResult("partition identities", True, cases)


def check_eps_independence(seed: int = 3, collections: int = 25,
                           probes: int = 40) -> CheckResult:
    """exactly_m is identical for eps in {1/8, 1/4, 1/2}."""
    rng = random.Random(seed)
    eps_values = (Fraction(1, 8), Fraction(1, 4), Fraction(1, 2))
    cases = 0
    for _ in range(collections):
        c = _random_collection(rng, rng.randrange(1, 9))
        for x in _probe_points(rng, probes):
            for m in range(c.n + 1):
                results = {eps: tomography.exactly_m(c, m, x, eps=eps) for eps in eps_values}
                cases += 1
                if len(set(results.values())) != 1:
                    return CheckResult("eps independence", False, cases,
                                       f"exactly_{m} at x={x!r} varies with eps: {results}")
    return CheckResult("eps independence", True, cases)


def run_all(seed: int = 0) -> list[CheckResult]:
    return [
        check_formula_vs_table(seed=seed),
        check_splitting(seed=seed + 1),
        check_kronecker(),
        check_nonneg_table(),
        check_border_variants(),
        check_partition_identities(seed=seed + 2),
        check_eps_independence(seed=seed + 3),
    ]
