import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from multistair.diagram import (AxisMap, ClosureError, DiagramError, DoublePartition,
                                addable_boxes, apply_axis_map, canonicalize, contains, corner7,
                                downset, effective_dimension, embed, enumerate_diagrams,
                                format_partition, from_boxes, from_partition, from_plane_partition,
                                in_wall_pair, is_flat, is_order_ideal, is_proper,
                                iter_double_partitions, leq_c, parse_double_partition,
                                parse_json_diagram, parse_partition, removable_boxes, star,
                                transpose)

from conftest import diagrams


def test_partition_round_trip():
    d = parse_partition("(3,3,2,1,1)")
    assert d.n == 10 and d.k == 2
    assert d.partition() == (3, 3, 2, 1, 1)
    assert format_partition(d.partition()) == "(1^2,2,3^2)"
    assert parse_partition("(1^2,2,3^2)") == d


def test_parse_errors_name_the_term():
    with pytest.raises(DiagramError, match="'a'"):
        parse_partition("(3,a)")
    with pytest.raises(DiagramError):
        parse_partition("(3,0)")
    with pytest.raises(DiagramError):
        parse_double_partition("(2,3,2)")
    with pytest.raises(DiagramError):
        parse_double_partition("(3,|2|,1)")   # lam not decreasing


def test_closure_violation_reports_missing_box():
    with pytest.raises(ClosureError, match=r"\(1, 1\)"):
        from_boxes(2, [(2, 1)])
    assert not is_order_ideal([(1, 2)])
    assert is_order_ideal([(1, 1), (1, 2)])


def test_json_diagram():
    d = parse_json_diagram('{"k": 2, "boxes": [[1,1],[2,1]]}')
    assert d == from_partition([1, 1]) or d == from_partition([2])
    assert parse_json_diagram(d.to_json()) == d
    with pytest.raises(DiagramError):
        parse_json_diagram('{"boxes": []}')


def test_plane_partition_counts():
    # number of plane partitions of n: 1, 3, 6, 13, 24, 48
    assert [len(list(enumerate_diagrams(3, n))) for n in range(1, 7)] == [1, 3, 6, 13, 24, 48]
    assert [len(list(enumerate_diagrams(2, n))) for n in range(1, 8)] == [1, 2, 3, 5, 7, 11, 15]


def test_plane_partition_constructor():
    d = from_plane_partition([[2, 2], [2, 1]])
    assert d == corner7()
    assert is_flat(d) is None


def test_double_partition_encoding():
    p = parse_double_partition("(2,|3|,2)")
    assert (p.lam, p.mu, p.x, p.ground_length, p.wall, p.n) == ((3, 2), (3, 2), 3, 3, 2, 7)
    assert str(p) == "(2,|3|,2)"
    assert str(parse_double_partition("(1^2,|2|,2^3)")) == "(1^2,|2|,2^3)"
    assert is_flat(p.to_diagram()) is not None
    with pytest.raises(DiagramError):
        DoublePartition((3, 1), (2,))


def test_flatness_matches_wall_definition():
    for n in range(1, 10):
        for d in enumerate_diagrams(3, n):
            literal = any(in_wall_pair(d, c) for c in range(3))
            assert (is_flat(d) is not None) == literal, d


def test_flat_encoding_reproduces_diagram():
    for n in range(1, 9):
        for d in enumerate_diagrams(3, n):
            p = is_flat(d)
            if p is not None:
                assert canonicalize(p.to_diagram()) == canonicalize(d)


def test_leq_c():
    small = parse_double_partition("(1,|2|,1)")
    assert leq_c(small, parse_double_partition("(2,|3|,2)"))
    assert not leq_c(parse_double_partition("(1^2,|2|,1)"), parse_double_partition("(2,|3|,2)"))


def test_iter_double_partitions_bounds():
    ps = list(iter_double_partitions(6, max_ground=3))
    assert all(p.n <= 6 and p.ground_length <= 3 for p in ps)
    assert len(set(ps)) == len(ps)


def test_star_and_effective_dimension():
    s = star(4)
    assert s.n == 5 and is_proper(s)
    e = embed(from_partition([3, 1]), 4)
    assert effective_dimension(e) == 2 and not is_proper(e)
    assert canonicalize(e).k == 2


def test_addable_and_removable():
    d = from_partition([2, 1])
    assert sorted(addable_boxes(d)) == [(1, 3), (2, 2), (3, 1)]
    assert sorted(removable_boxes(d)) == [(1, 2), (2, 1)]


def test_contains_argument_order():
    small, big = from_partition([1]), from_partition([2, 2])
    assert contains(big, small) and not contains(small, big)
    with pytest.raises(DiagramError):
        contains(big, star(3))


def test_transpose_is_conjugate_partition():
    assert transpose(from_partition([3, 2])).partition() == (2, 2, 1)


def test_enumeration_up_to_symmetry_is_canonical():
    reps = list(enumerate_diagrams(3, 6, up_to_symmetry=True))
    assert len({canonicalize(d) for d in reps}) == len(reps) == 11


@settings(max_examples=1000, deadline=None)
@given(diagrams(max_boxes=10))
def test_order_ideal_closure(d):
    assert is_order_ideal(d.boxes)
    for b in addable_boxes(d):
        assert is_order_ideal(d.boxes | {b})
    for b in removable_boxes(d):
        assert is_order_ideal(d.boxes - {b})
    top = max(d.boxes)
    assert downset(d.k, [top]).boxes <= d.boxes


@settings(max_examples=1000, deadline=None)
@given(diagrams(k_min=2, max_boxes=9), st.randoms())
def test_canonical_form_is_axis_invariant(d, rnd):
    perm = list(range(d.k))
    rnd.shuffle(perm)
    assert canonicalize(apply_axis_map(d, AxisMap(tuple(perm)))) == canonicalize(d)
