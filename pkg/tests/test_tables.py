from collections import Counter

from hypothesis import given, settings

from multistair.classify import RepType
from multistair.diagram import (corner7, effective_dimension, embed, enumerate_diagrams, from_boxes, from_partition, iter_partitions,
                                parse_double_partition, q4_diagram, star, transpose)
from multistair.tables import (_FLAT_FINITE_MAXIMAL, _FLAT_TC, _FLAT_TNC, classify_by_table,
                               flat_type, four_dim_type, in_flat_family, lower_correlate,
                               partition_type, table_type)

from conftest import partitions


def _conjugate(p):
    return tuple(sum(1 for a in p if a > i) for i in range(max(p)))


def test_exceptions_below_nine_boxes():
    for n in range(1, 9):
        for p in iter_partitions(n):
            expected = RepType.FINITE
            if p in {(4, 3, 1), (3, 3, 2), (3, 2, 2, 1), (4, 2, 1, 1)}:
                expected = partition_type(p)
                assert expected is not RepType.FINITE
            assert partition_type(p) is expected


def test_census_up_to_ten_boxes():
    reps = {}
    for n in range(1, 11):
        for p in iter_partitions(n):
            reps.setdefault(min(p, _conjugate(p)), partition_type(p))
    census = Counter(t.value for t in reps.values())
    assert census == {"Finite": 46, "TameConcealed": 5, "TameNonConcealed": 5, "Wild": 19}


def test_families_are_finite_at_any_size():
    assert partition_type((20,)) is RepType.FINITE
    assert partition_type((9, 1, 1, 1)) is RepType.FINITE
    assert partition_type((12, 2)) is RepType.FINITE
    assert partition_type((2, 2, 1, 1, 1, 1, 1)) is RepType.FINITE
    assert partition_type((4, 4, 4)) is RepType.WILD


def test_flat_lists_read_back():
    for s in _FLAT_FINITE_MAXIMAL:
        assert flat_type(parse_double_partition(s)) is RepType.FINITE, s
    for s in _FLAT_TC:
        assert flat_type(parse_double_partition(s)) is RepType.TAME_CONCEALED, s
    for s in _FLAT_TNC:
        assert flat_type(parse_double_partition(s)) is RepType.TAME_NON_CONCEALED, s


def test_flat_families():
    assert in_flat_family(parse_double_partition("(1,|9|,1)"))
    assert in_flat_family(parse_double_partition("(2,|2|,1^7)"))
    assert in_flat_family(parse_double_partition("(1^7,|2|,2)"))
    assert not in_flat_family(parse_double_partition("(2,|3|,2)"))
    assert flat_type(parse_double_partition("(1,|12|,1)")) is RepType.FINITE
    assert flat_type(parse_double_partition("(3,|4|,3)")) is RepType.WILD


def test_non_flat_rule():
    assert table_type(corner7()) == (RepType.TAME_NON_CONCEALED, "corner")
    big = from_boxes(3, list(corner7().boxes) + [(3, 1, 1)])
    assert table_type(big)[0] is RepType.WILD


def test_four_dimensional_rule():
    assert four_dim_type(star(4)) is RepType.TAME_CONCEALED
    assert four_dim_type(q4_diagram()) is RepType.TAME_NON_CONCEALED
    assert table_type(from_boxes(4, list(star(4).boxes) + [(3, 1, 1, 1)]))[0] is RepType.WILD
    assert table_type(star(5))[0] is RepType.WILD


def test_improper_diagrams_reduce():
    assert table_type(embed(from_partition([6, 3]), 4))[0] is RepType.TAME_CONCEALED
    assert classify_by_table(embed(from_partition([2]), 3)).kind is RepType.FINITE


def test_proper_diagrams_have_no_lower_correlate():
    for n in range(1, 9):
        for d in enumerate_diagrams(3, n, up_to_symmetry=True):
            if effective_dimension(d) == 3:
                assert lower_correlate(d) is None, d


@settings(max_examples=1000, deadline=None)
@given(partitions)
def test_partition_table_is_transpose_closed(p):
    assert partition_type(p) is partition_type(_conjugate(p))
    d = from_partition(p)
    assert classify_by_table(d).kind is classify_by_table(transpose(d)).kind
