"""Exact indicator calculus for collections of sets.

The union and the membership-multiplicity slices of n sets are evaluated
with n indicator terms through a rectangular sign-based B-function; the
classical 2^n - 1 term inclusion-exclusion expansion is kept alongside as
the oracle for equivalence testing and benchmarking.
"""

from .bcore import (HALF, NEG_HALF, NEG_ONE, ONE, ZERO, HalfInt, b,
                    b_kronecker, b_mm, b_mp, b_pm, b_pp, interval_identity,
                    sign)
from .indicator import (CLOSED, NATURALS, OPEN, PLANE, REALS, Disk, Indicator,
                        Interval, UniverseMismatchError, complement, disk_set,
                        empty, intersect, interval_set, universe)
from .tomography import (SetCollection, UnionBuilder, at_most_m, count,
                         empty_union, exactly_m, extend_union, more_than_m,
                         not_in_any, union)
from .whitney import (DEFAULT_CAP, CapExceededError, TermCounter, cardinality,
                      complement_expansion, counting_indicator,
                      iep_cardinality, intersection_term, nonempty_masks,
                      whitney_union)

__version__ = "0.1.0"

__all__ = [
    "HalfInt", "ZERO", "HALF", "ONE", "NEG_HALF", "NEG_ONE",
    "sign", "b", "b_kronecker", "b_pp", "b_mm", "b_mp", "b_pm", "interval_identity",
    "Indicator", "Interval", "Disk", "UniverseMismatchError",
    "REALS", "PLANE", "NATURALS", "OPEN", "CLOSED",
    "universe", "empty", "interval_set", "disk_set", "intersect", "complement",
    "SetCollection", "count", "exactly_m", "at_most_m", "more_than_m", "union",
    "not_in_any", "UnionBuilder", "empty_union", "extend_union",
    "TermCounter", "CapExceededError", "DEFAULT_CAP", "counting_indicator",
    "whitney_union", "intersection_term", "complement_expansion",
    "cardinality", "iep_cardinality", "nonempty_masks",
    "__version__",
]
