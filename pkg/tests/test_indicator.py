import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from layerset.bcore import ONE, ZERO, b
from layerset.indicator import (CLOSED, NATURALS, OPEN, PLANE, REALS, Disk,
                                Indicator, Interval, UniverseMismatchError,
                                complement, disk_set, empty, intersect,
                                interval_set, universe)
from layerset.tomography import SetCollection, union

probe_reals = st.one_of(
    st.floats(allow_nan=False, allow_infinity=False, min_value=-20, max_value=20),
    st.fractions(min_value=-10, max_value=10, max_denominator=8),
)


class TestUniverseAndEmpty:
    @given(probe_reals)
    def test_universe_is_one_everywhere(self, x):
        assert universe(REALS).eval(x) == ONE

    @given(probe_reals)
    def test_empty_is_zero_everywhere(self, x):
        assert empty(REALS).eval(x) == ZERO

    def test_empty_realized_as_b_one_zero(self):
        assert b(1, 0) == ZERO

    @given(probe_reals)
    def test_universe_is_identity_of_product(self, x):
        a = interval_set(Interval(0, 1))
        assert intersect(universe(REALS), a).eval(x) == a.eval(x)

    @given(probe_reals)
    def test_complement_of_universe_is_empty(self, x):
        assert complement(universe(REALS)).eval(x) == ZERO

    def test_empty_union_is_zero(self):
        assert union(SetCollection([]), 123.4) == ZERO

    def test_unknown_kind_rejected(self):
        with pytest.raises(ValueError):
            universe("lattice")


class TestInterval:
    def test_validation(self):
        with pytest.raises(ValueError):
            Interval(1, 1)
        with pytest.raises(ValueError):
            Interval(2, -1)
        with pytest.raises(ValueError):
            Interval(0, 1, left="ajar")

    def test_closed_interval_examples(self):
        ind = interval_set(Interval(0, 1, CLOSED, CLOSED))
        assert ind.eval(1) == ONE
        assert ind.eval(2) == ZERO

    def test_open_interval_border(self):
        assert interval_set(Interval(0, 1, OPEN, OPEN)).eval(1) == ZERO

    @pytest.mark.parametrize("left,right,at_a,at_b", [
        (CLOSED, CLOSED, 1, 1),
        (OPEN, OPEN, 0, 0),
        (OPEN, CLOSED, 0, 1),
        (CLOSED, OPEN, 1, 0),
    ])
    def test_border_semantics(self, left, right, at_a, at_b):
        a, bnd = Fraction(-3, 2), Fraction(5, 4)
        ind = interval_set(Interval(a, bnd, left, right))
        assert ind.eval(a).twice == 2 * at_a
        assert ind.eval(bnd).twice == 2 * at_b
        assert ind.eval((a + bnd) / 2) == ONE
        assert ind.eval(bnd + 1) == ZERO
        assert ind.eval(a - 1) == ZERO


class TestDisk:
    def test_validation(self):
        with pytest.raises(ValueError):
            Disk(0, 0, 0)
        with pytest.raises(ValueError):
            Disk(0, 0, -2)

    def test_examples(self):
        d1 = disk_set(Disk(1, 0, 1.5))
        assert d1.eval((0, 0)) == ONE          # (0-1)^2 + 0 = 1 < 2.25
        assert d1.eval((2.5, 0)) == ZERO       # border of an open disk
        d2 = disk_set(Disk(-1, 0, 2))
        assert d2.eval((3, 3)) == ZERO         # 16 + 9 = 25 > 4

    def test_closed_disk_includes_border(self):
        d = disk_set(Disk(1, 0, Fraction(3, 2), CLOSED))
        assert d.eval((Fraction(5, 2), 0)) == ONE
        assert d.eval((Fraction(51, 20), 0)) == ZERO


class TestAlgebra:
    def test_intersect_truth_table(self):
        a = interval_set(Interval(0, 2))
        c = interval_set(Interval(1, 3))
        both = intersect(a, c)
        assert both.eval(Fraction(3, 2)) == ONE
        assert both.eval(Fraction(1, 2)) == ZERO
        assert both.eval(Fraction(5, 2)) == ZERO
        assert both.eval(10) == ZERO

    def test_universe_mismatch_rejected(self):
        with pytest.raises(UniverseMismatchError):
            intersect(universe(REALS), universe(PLANE))
        with pytest.raises(UniverseMismatchError):
            SetCollection([universe(NATURALS), universe(REALS)])

    @given(probe_reals)
    def test_complement_involution(self, x):
        a = interval_set(Interval(Fraction(-1, 2), Fraction(7, 4), OPEN, CLOSED))
        assert complement(complement(a)).eval(x) == a.eval(x)

    def test_codomain_closure_on_random_probes(self):
        rng = random.Random(11)
        a = interval_set(Interval(-1, 1))
        c = interval_set(Interval(0, 3, OPEN, OPEN))
        composites = [a, c, intersect(a, c), complement(a), intersect(complement(a), c)]
        for _ in range(10_000):
            x = rng.uniform(-5, 5)
            for ind in composites:
                assert ind.eval(x).twice in (0, 2)

    def test_disjoint_sum_matches_union(self):
        a = interval_set(Interval(0, 1, CLOSED, OPEN))
        c = interval_set(Interval(1, 2, CLOSED, CLOSED))
        pair = SetCollection([a, c])
        for k in range(-8, 25):
            x = Fraction(k, 8)
            s = a.eval(x) + c.eval(x)
            assert s.twice in (0, 2)
            assert s == union(pair, x)

    def test_pairwise_union_identity(self):
        a = interval_set(Interval(0, 2))
        c = interval_set(Interval(1, 3))
        pair = SetCollection([a, c])
        for k in range(-4, 28):
            x = Fraction(k, 8)
            av, cv = a.eval(x).as_bit(), c.eval(x).as_bit()
            inclusion_exclusion = av + cv - av * cv
            assert inclusion_exclusion in (0, 1)
            assert inclusion_exclusion == int(union(pair, x))

    def test_labels_are_cosmetic(self):
        a = interval_set(Interval(0, 1))
        assert "interval" in a.label
        assert "not(" in complement(a).label
        assert Indicator(lambda x: ONE, "anything", REALS).label == "anything"
