"""Benchmark the n-term union against the 2^n - 1 term oracle.

For each n a random interval collection is evaluated at a shared batch of
probes.  Member indicators are evaluated once per probe through the real
Indicator objects (n calls per probe, instrumented); the combination stage
is then timed through the batch kernels so both strategies run on the same
engine: the B-form costs n reads per probe, the subset expansion enumerates
every one of its 2^n - 1 terms with no memoization.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import kernels
from .indicator import CLOSED, OPEN, Interval, interval_set
from .tomography import SetCollection
from .whitney import TermCounter, counting_indicator

CSV_HEADER = "n,bform_calls,whitney_terms,bform_ns,whitney_ns,agree"


@dataclass(frozen=True)
class BenchRow:
    n: int
    bform_calls: int
    whitney_terms: int
    bform_ns: int
    whitney_ns: int
    agree: bool

    def csv(self) -> str:
        return (f"{self.n},{self.bform_calls},{self.whitney_terms},"
                f"{self.bform_ns},{self.whitney_ns},{str(self.agree).lower()}")


def random_interval_collection(rng: random.Random, n: int) -> SetCollection:
    members = []
    for _ in range(n):
        a = Fraction(rng.randrange(-40, 33), 8)
        width = Fraction(rng.randrange(2, 41), 8)
        members.append(interval_set(Interval(
            a, a + width, rng.choice((OPEN, CLOSED)), rng.choice((OPEN, CLOSED)))))
    return SetCollection(members)


def membership_matrix(c: SetCollection, probes, counter: TermCounter | None = None) -> np.ndarray:
    """(n, p) 0/1 matrix of member values at each probe, via the scalar path."""
    members = c.members
    if counter is not None:
        members = tuple(counting_indicator(m, counter) for m in members)
    bits = np.empty((len(members), len(probes)), dtype=np.uint8)
    for row, member in enumerate(members):
        fn = member.fn
        for col, x in enumerate(probes):
            bits[row, col] = fn(x).as_bit()
    return bits


def _time_ns(fn, repeats: int) -> int:
    best = None
    for _ in range(repeats):
        t0 = time.perf_counter_ns()
        fn()
        dt = time.perf_counter_ns() - t0
        if best is None or dt < best:
            best = dt
    return best


def run_bench(n_max: int, probes_per_n: int = 64, seed: int = 0,
              repeats: int = 3, backend: str | None = None) -> list[BenchRow]:
    """One row per n in [1, n_max]; caps at the whitney enumeration limit."""
    if not 1 <= n_max <= 24:
        raise ValueError(f"n_max must lie in [1, 24], got {n_max}")
    if probes_per_n < 1:
        raise ValueError("probes_per_n must be positive")
    rng = random.Random(seed)
    rows = []
    for n in range(1, n_max + 1):
        c = random_interval_collection(rng, n)
        probes = [rng.uniform(-7, 7) for _ in range(probes_per_n)]
        counter = TermCounter()
        bits = membership_matrix(c, probes, counter)
        if counter.indicator_calls != n * probes_per_n:
            raise AssertionError("instrumentation mismatch while building memberships")

        bform_out = kernels.bform_union_batch(bits, backend)
        whitney_out, terms = kernels.whitney_union_batch(bits, backend)
        bform_ns = _time_ns(lambda: kernels.bform_union_batch(bits, backend), max(repeats, 3))
        whitney_ns = _time_ns(lambda: kernels.whitney_union_batch(bits, backend), repeats)

        rows.append(BenchRow(
            n=n,
            bform_calls=counter.indicator_calls // probes_per_n,
            whitney_terms=terms,
            bform_ns=bform_ns,
            whitney_ns=whitney_ns,
            agree=bool(np.array_equal(bform_out, whitney_out)),
        ))
    return rows


def format_table(rows: list[BenchRow]) -> str:
    lines = [f"{'n':>3} {'bform_calls':>12} {'whitney_terms':>14} "
             f"{'bform_ns':>12} {'whitney_ns':>14} {'ratio':>10} {'agree':>6}"]
    for r in rows:
        ratio = r.whitney_ns / r.bform_ns if r.bform_ns else float("inf")
        lines.append(f"{r.n:>3} {r.bform_calls:>12} {r.whitney_terms:>14} "
                     f"{r.bform_ns:>12} {r.whitney_ns:>14} {ratio:>10.2f} "
                     f"{str(r.agree).lower():>6}")
    return "\n".join(lines)


def write_csv(path, rows: list[BenchRow]) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(CSV_HEADER + "\n")
        for r in rows:
            fh.write(r.csv() + "\n")
