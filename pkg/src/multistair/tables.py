"""Hard-coded classification tables for staircase diagrams."""

from __future__ import annotations

import itertools
from functools import lru_cache

from .classify import RepType, RepTypeVerdict
from .diagram import (AxisMap, Diagram, DoublePartition, apply_axis_map, canonicalize,
                      contains, corner7, effective_dimension, enumerate_diagrams, from_partition, is_flat,
                      iter_double_partitions, leq_c, parse_double_partition, q4_diagram,
                      star)
from .quiver import CorrelationIndex

# ------------------------------------------------------------ k = 2

_FINITE_EXCEPTIONS = {(4, 3, 1), (3, 3, 2), (3, 2, 2, 1), (4, 2, 1, 1)}

_TC_PARTITIONS = {(6, 3), (6, 2, 1), (4, 3, 1), (5, 2, 2), (4, 2, 1, 1), (3, 2, 2, 1),
                  (3, 3, 1, 1, 1), (2, 2, 2, 1, 1, 1), (3, 2, 1, 1, 1, 1)}

_TNC_PARTITIONS = {(5, 4), (5, 5), (4, 4, 1), (3, 3, 2), (3, 3, 3), (3, 2, 2, 2),
                   (2, 2, 2, 2, 1), (2, 2, 2, 2, 2)}


def _is_hook(p: tuple[int, ...]) -> bool:
    return all(a == 1 for a in p[1:])


def partition_type(p) -> RepType:
    """Type of the staircase algebra of a partition (parts in any order)."""
    p = tuple(sorted(p, reverse=True))
    n = sum(p)
    if p in _TC_PARTITIONS:
        return RepType.TAME_CONCEALED
    if p in _TNC_PARTITIONS:
        return RepType.TAME_NON_CONCEALED
    family = (_is_hook(p) or p == (n - 2, 2)
              or (len(p) >= 2 and p[0] == p[1] == 2 and _is_hook(p[1:])))
    if family or (n <= 8 and p not in _FINITE_EXCEPTIONS):
        return RepType.FINITE
    return RepType.WILD


# ------------------------------------------------------------ k = 3, flat

_FLAT_FINITE_MAXIMAL = ["(1,|5|,2)", "(4,|4|,1)", "(1,|5|,1^2)", "(2,|2|,2^2)", "(3,|3|,1^3)"]

_FLAT_TC = ["(2,|3|,2)", "(3,|5|,1)", "(2,|6|,1)", "(1,|3|,2,1)", "(2,|4|,1^2)",
            "(1,|6|,1^2)", "(1,|4|,1^3)", "(1,2,|2|,2,1)", "(1^2,|3|,1^2)",
            "(2,|2|,2,1^3)", "(2,|3|,1^4)"]

_FLAT_TNC = ["(2,|3|,3)", "(3,|3|,3)", "(4,|5|,1)", "(1,|3|,3,1)", "(3,|4|,1^2)",
             "(2,|2|,2^3)", "(2^2,|2|,2,1)", "(2^2,|2|,2^2)", "(3,|3|,1^4)"]

# Entries the short lists above do not cover; correlated duplicates are harmless.
_FLAT_FINITE_MAXIMAL_EXTRA = ["(2,|2|,2)", "(3,|3|,1^2)", "(2,|2|,2,1^2)", "(1,|2|,2^3)",
                              "(2,2,|2|,1^2)", "(2^2,|2|,1^3)", "(2,|2|,1^4)", "(1,|2|,2,1^3)",
                              "(1,|3|,1^4)", "(1^2,|2|,1^4)"]

_FLAT_TC_EXTRA = ["(2,|2|,2^2,1)", "(1,|2|,2^2,1^2)", "(1^2,|2|,2,1^2)", "(1,|2|,2,1^4)",
                  "(1,2,|2|,1^4)", "(1^3,|2|,1^3)", "(1,|3|,1^5)"]

_FLAT_TNC_EXTRA = ["(1^2,|2|,2^2,1)", "(1,|2|,2^3,1)", "(2^2,|2|,1^4)"]

# every finite flat algebra outside the two infinite families has at most this many boxes
_FLAT_UNIVERSE_BOXES = 9


def _is_proper_flat(p: DoublePartition) -> bool:
    return len(p.lam) >= 2 and len(p.mu) >= 2 and p.x >= 2


def in_flat_family(p: DoublePartition) -> bool:
    """(lam, mu) <=_c (1,|x|,1) or (2,|2|,1^x) for some x, in either orientation."""
    for q in (p, p.swapped()):
        if len(q.lam) <= 2 and len(q.mu) <= 2 and all(a == 1 for a in q.lam[1:] + q.mu[1:]):
            return True
        if q.x <= 2 and len(q.lam) <= 2 and all(a == 1 for a in q.mu[1:]):
            return True
    return False


@lru_cache(maxsize=1)
def _flat_indexes() -> tuple[CorrelationIndex, CorrelationIndex, CorrelationIndex]:
    universe = [p for p in iter_double_partitions(_FLAT_UNIVERSE_BOXES) if _is_proper_flat(p)]
    maximal = [parse_double_partition(s) for s in _FLAT_FINITE_MAXIMAL + _FLAT_FINITE_MAXIMAL_EXTRA]
    # all correlates of the maximal entries inside the universe
    top = CorrelationIndex()
    for m in maximal:
        top.add(m.to_diagram())
    tops = [p for p in universe if p.to_diagram() in top]
    finite = CorrelationIndex()
    for p in universe:
        if any(leq_c(p, t) or leq_c(p.swapped(), t) for t in tops):
            finite.add(p.to_diagram())
    tc = CorrelationIndex()
    for s in _FLAT_TC + _FLAT_TC_EXTRA:
        tc.add(parse_double_partition(s).to_diagram())
    tnc = CorrelationIndex()
    for s in _FLAT_TNC + _FLAT_TNC_EXTRA:
        tnc.add(parse_double_partition(s).to_diagram())
    return finite, tc, tnc


def flat_type(p: DoublePartition) -> RepType:
    """Type of a proper flat algebra A(lam, mu), read up to correlation."""
    finite, tc, tnc = _flat_indexes()
    d = p.to_diagram()
    if in_flat_family(p) or (p.n <= _FLAT_UNIVERSE_BOXES and d in finite):
        return RepType.FINITE
    if d in tc:
        return RepType.TAME_CONCEALED
    if d in tnc:
        return RepType.TAME_NON_CONCEALED
    return RepType.WILD


# ------------------------------------------------------------ k = 4


@lru_cache(maxsize=1)
def _q4_images() -> tuple[Diagram, ...]:
    q4 = q4_diagram()
    images = {apply_axis_map(q4, AxisMap(perm)) for perm in itertools.permutations(range(4))}
    return tuple(sorted(images, key=lambda d: d.sorted_boxes()))


def four_dim_type(d: Diagram) -> RepType:
    if d.boxes == star(4).boxes:
        return RepType.TAME_CONCEALED
    if any(contains(q, d) for q in _q4_images()):
        return RepType.TAME_NON_CONCEALED
    return RepType.WILD


# ------------------------------------------------------------ dispatcher


def classify_by_table(d: Diagram) -> RepTypeVerdict:
    kind, rule = table_type(d)
    return RepTypeVerdict(kind, {"rule": rule}, source="table")


@lru_cache(maxsize=None)
def _lower_index(k: int, n: int) -> CorrelationIndex:
    idx = CorrelationIndex()
    for d in enumerate_diagrams(k, n, up_to_symmetry=True):
        idx.add(d, payload=d)
    return idx


def lower_correlate(d: Diagram) -> Diagram | None:
    """A diagram of smaller effective dimension correlating with d, if any."""
    e = effective_dimension(d)
    if e <= 2 or d.n > LOWER_CORRELATE_MAX_BOXES:
        return None
    return _lower_index(e - 1, d.n).find(d)


# correlates in lower dimension are searched up to this size
LOWER_CORRELATE_MAX_BOXES = 14


def table_type(d: Diagram) -> tuple[RepType, str]:
    if not d.boxes:
        return RepType.FINITE, "empty"
    c = canonicalize(d)
    e = effective_dimension(c)
    low = lower_correlate(c)
    if low is not None:
        kind, rule = table_type(low)
        return kind, f"correlate:{rule}"
    if e <= 1:
        return RepType.FINITE, "line"
    if e == 2:
        return partition_type(c.partition()), "partition"
    if e == 3:
        p = is_flat(c)
        if p is None:
            if c.boxes == corner7().boxes:
                return RepType.TAME_NON_CONCEALED, "corner"
            return RepType.WILD, "non-flat"
        return flat_type(p), "flat"
    if e == 4:
        return four_dim_type(c), "four-dimensional"
    return RepType.WILD, "dimension >= 5"


def partition_diagram(p) -> Diagram:
    return from_partition(p)
