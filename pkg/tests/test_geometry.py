import math

import pytest

from nfpmerge.geometry import (
    Containment,
    Contour,
    GeometryError,
    Orientation,
    Piece,
    Point,
    Segment,
    Winding,
    default_eps,
    is_convex,
    orient,
    point_in_convex,
    point_in_ring,
    remove_collinear,
    ring_is_simple,
    segment_intersection,
    signed_area,
    transform,
)

from conftest import rect


def test_point_rejects_non_finite():
    with pytest.raises(GeometryError):
        Point(float("nan"), 0.0)
    with pytest.raises(GeometryError):
        Point(0.0, math.inf)


def test_orient_basic_and_tolerance():
    assert orient((0, 0), (1, 0), (0, 1)) is Orientation.LEFT
    assert orient((0, 0), (1, 0), (0, -1)) is Orientation.RIGHT
    assert orient((0, 0), (1, 0), (2, 0)) is Orientation.COLLINEAR
    # within eps of the line counts as collinear
    assert orient((0, 0), (1, 0), (2, 1e-12), eps=1e-9) is Orientation.COLLINEAR
    assert orient((0, 0), (1, 0), (2, 1e-6), eps=1e-9) is Orientation.LEFT


def test_contour_orientation_and_area():
    c = rect(0, 0, 2, 1)
    assert c.orientation is Winding.CCW
    assert signed_area(c) == pytest.approx(2.0)
    r = c.reversed()
    assert r.orientation is Winding.CW
    assert signed_area(r) == pytest.approx(-2.0)
    assert r.as_ccw() == c


def test_contour_rejects_repeated_vertices():
    with pytest.raises(GeometryError):
        Contour(((0, 0), (1, 0), (1, 0), (0, 1)))


def test_piece_normalizes_orientation():
    p = Piece(rect(0, 0, 3, 3).reversed(), holes=(rect(1, 1, 2, 2),))
    assert p.outer.orientation is Winding.CCW
    assert p.holes[0].orientation is Winding.CW
    assert p.area() == pytest.approx(8.0)
    assert p.reference_point == p.outer[0]


def test_piece_translation_moves_reference():
    p = Piece(rect(0, 0, 1, 1), reference_point=(0.5, 0.5))
    q = p.translated(2, 3)
    assert q.reference_point == Point(2.5, 3.5)
    assert q.outer[0] == Point(2, 3)


def test_segment_intersection_cases():
    # proper crossing
    assert segment_intersection(Segment((0, 0), (2, 2)), Segment((0, 2), (2, 0))) == (Point(1, 1),)
    # T-junction returns the touching endpoint
    assert segment_intersection(Segment((0, 0), (2, 0)), Segment((1, 0), (1, 1))) == (Point(1, 0),)
    # collinear overlap returns the shared interval, ordered along the first segment
    assert segment_intersection(Segment((0, 0), (3, 0)), Segment((4, 0), (1, 0))) == (Point(1, 0), Point(3, 0))
    assert segment_intersection(Segment((3, 0), (0, 0)), Segment((1, 0), (4, 0))) == (Point(3, 0), Point(1, 0))
    # collinear touching at a single point
    assert segment_intersection(Segment((0, 0), (1, 0)), Segment((1, 0), (2, 0))) == (Point(1, 0),)
    # disjoint
    assert segment_intersection(Segment((0, 0), (1, 0)), Segment((0, 1), (1, 1))) == ()
    assert segment_intersection(Segment((0, 0), (1, 0)), Segment((2, 0), (3, 0))) == ()


def test_is_convex():
    assert is_convex(rect(0, 0, 1, 1).vertices)
    assert not is_convex(rect(0, 0, 1, 1).reversed().vertices)
    assert not is_convex([(0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)])
    # collinear joints are allowed
    assert is_convex([(0, 0), (1, 0), (2, 0), (2, 2), (0, 2)])
    # a pentagram winds twice
    star = [(math.cos(a), math.sin(a)) for a in [k * 4 * math.pi / 5 for k in range(5)]]
    assert not is_convex(star)


def test_point_in_convex():
    sq = rect(0, 0, 1, 1)
    assert point_in_convex((0.5, 0.5), sq) is Containment.INSIDE
    assert point_in_convex((1.0, 0.5), sq) is Containment.BOUNDARY
    assert point_in_convex((1.0 + 1e-12, 0.5), sq, eps=1e-9) is Containment.BOUNDARY
    assert point_in_convex((2.0, 0.5), sq) is Containment.OUTSIDE
    with pytest.raises(GeometryError):
        point_in_convex((0, 0), [(0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)])


def test_transform_reflects_through_origin():
    c = transform(rect(0, 0, 1, 2), (1, 1), reflect_origin=True)
    assert c.orientation is Winding.CCW
    assert set(c.vertices) == {Point(1, 1), Point(0, 1), Point(0, -1), Point(1, -1)}


def test_remove_collinear_keeps_u_turns():
    assert remove_collinear([(0, 0), (1, 0), (2, 0), (2, 1), (0, 1)]) == [(0, 0), (2, 0), (2, 1), (0, 1)]
    # both turning points of a there-and-back path survive; the pass-through goes
    assert remove_collinear([(0, 0), (2, 0), (1, 0)]) == [(0, 0), (2, 0)]


def test_ring_simplicity_and_membership():
    assert ring_is_simple(rect(0, 0, 1, 1).vertices)
    assert not ring_is_simple([(0, 0), (1, 1), (1, 0), (0, 1)])
    assert point_in_ring((0.5, 0.5), rect(0, 0, 1, 1).vertices)
    assert not point_in_ring((1.5, 0.5), rect(0, 0, 1, 1).vertices)


def test_default_eps_scales_with_diagonal():
    assert default_eps([(0, 0), (3, 4)]) == pytest.approx(5e-9)
    assert default_eps([(1, 1)]) == pytest.approx(1e-9)
