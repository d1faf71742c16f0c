from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from stringsep.errors import ContractViolation, StandardnessError
from stringsep.geometry import (
    PolylineCurve,
    SegmentRelation,
    StringRepresentation,
    intersection_graph,
    random_segment_instance,
    segment_shared_point,
    segments_intersect,
    sq_dist_segments,
    validate_standardness,
)

coord = st.integers(-50, 50)
point = st.tuples(coord, coord)


def seg(a, b, c, d):
    return (a, b), (c, d)


def test_classification_examples():
    assert segments_intersect((0, 0), (2, 2), (0, 2), (2, 0)) is SegmentRelation.PROPER_CROSSING
    assert segments_intersect((0, 0), (1, 0), (2, 0), (3, 0)) is SegmentRelation.DISJOINT
    assert segments_intersect((0, 0), (2, 0), (1, 0), (3, 0)) is SegmentRelation.OVERLAPPING
    assert segments_intersect((0, 0), (2, 0), (2, 0), (2, 5)) is SegmentRelation.TOUCHING
    assert segments_intersect((0, 0), (4, 0), (2, 0), (2, 5)) is SegmentRelation.TOUCHING
    assert segments_intersect((0, 0), (4, 4), (2, 2), (5, 0)) is SegmentRelation.TOUCHING


@given(point, point, point, point)
def test_symmetry(p, q, r, s):
    if p == q or r == s:
        return
    rel = segments_intersect(p, q, r, s)
    assert segments_intersect(r, s, p, q) is rel
    assert segments_intersect(q, p, r, s) is rel
    assert segments_intersect(p, q, s, r) is rel


@given(point, point, point, point, st.tuples(coord, coord))
def test_translation_invariance(p, q, r, s, t):
    if p == q or r == s:
        return
    shift = lambda a: (a[0] + t[0], a[1] + t[1])
    assert segments_intersect(p, q, r, s) is segments_intersect(
        shift(p), shift(q), shift(r), shift(s)
    )


def test_shared_point_exact():
    pt = segment_shared_point((0, 0), (3, 3), (0, 3), (3, 0))
    assert pt == (Fraction(3, 2), Fraction(3, 2))
    pt = segment_shared_point((0, 0), (2, 1), (1, 0), (1, 5))
    assert pt == (Fraction(1), Fraction(1, 2))


def test_sq_dist_segments():
    assert sq_dist_segments((0, 0), (1, 0), (3, 0), (4, 0)) == 4
    assert sq_dist_segments((0, 0), (1, 0), (0, 1), (1, 1)) == 1
    assert sq_dist_segments((0, 0), (2, 2), (0, 2), (2, 0)) == 0


def test_curve_simplicity():
    PolylineCurve("ok", ((0, 0), (5, 0), (5, 5))).validate()
    with pytest.raises(ContractViolation):
        PolylineCurve("dup", ((0, 0), (0, 0))).validate()
    with pytest.raises(ContractViolation):  # doubles back over itself
        PolylineCurve("back", ((0, 0), (5, 0), (2, 0))).validate()
    with pytest.raises(ContractViolation):  # figure-eight self crossing
        PolylineCurve("self", ((0, 0), (4, 0), (4, 4), (2, -2))).validate()


def test_intersection_graph_path(p3):
    rep = StringRepresentation(
        (
            PolylineCurve("a", ((0, 0), (4, 0))),
            PolylineCurve("b", ((1, -1), (1, 1))),
            PolylineCurve("c", ((3, -1), (3, 1))),
        )
    )
    g, counts = intersection_graph(rep)
    assert g == p3.__class__(3, ((0, 1), (0, 2)))
    assert counts == {(0, 1): 1, (0, 2): 1}


def test_intersection_graph_k2_and_empty():
    g, counts = intersection_graph(
        StringRepresentation(
            (PolylineCurve("a", ((0, 0), (2, 2))), PolylineCurve("b", ((0, 2), (2, 0))))
        )
    )
    assert g.m == 1 and counts == {(0, 1): 1}
    g, counts = intersection_graph(
        StringRepresentation(
            (
                PolylineCurve("a", ((0, 0), (1, 0))),
                PolylineCurve("b", ((0, 2), (1, 2))),
                PolylineCurve("c", ((0, 4), (1, 4))),
            )
        )
    )
    assert g.n == 3 and g.m == 0 and counts == {}


def test_standardness_rejects_overlap():
    rep = StringRepresentation(
        (PolylineCurve("a", ((0, 0), (4, 0))), PolylineCurve("b", ((2, 0), (6, 0))))
    )
    with pytest.raises(StandardnessError) as err:
        validate_standardness(rep)
    assert "a" in str(err.value) and "b" in str(err.value)


def test_standardness_rejects_triple_point():
    rep = StringRepresentation(
        (
            PolylineCurve("a", ((-2, 0), (2, 0))),
            PolylineCurve("b", ((0, -2), (0, 2))),
            PolylineCurve("c", ((-2, -2), (2, 2))),
        )
    )
    with pytest.raises(StandardnessError) as err:
        validate_standardness(rep)
    assert "triple" in str(err.value)


def test_random_instance_standard():
    rep = random_segment_instance(20, seed=7)
    assert len(rep.curves) == 20
    g, _ = intersection_graph(rep)  # validates standardness internally
    assert g.n == 20


def test_random_instance_deterministic():
    a = random_segment_instance(12, seed=3)
    b = random_segment_instance(12, seed=3)
    assert [c.points for c in a.curves] == [c.points for c in b.curves]


def test_random_instance_trivial_and_errors():
    rep = random_segment_instance(1, seed=0)
    g, _ = intersection_graph(rep)
    assert g.n == 1 and g.m == 0
    with pytest.raises(ContractViolation):
        random_segment_instance(0, seed=0)
