import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.spatial import ConvexHull

from nfpmerge.convex_nfp import convex_nfp, minkowski_sum_convex
from nfpmerge.fixtures import random_convex, random_pairs
from nfpmerge.geometry import GeometryError, signed_area

from conftest import rect


def hull_of_sums(P, Q):
    """Reference Minkowski sum: convex hull of all pairwise vertex sums."""
    pts = np.array([(p[0] + q[0], p[1] + q[1]) for p in P for q in Q])
    h = ConvexHull(pts)
    return pts[h.vertices], h.volume


def same_polygon(got, want, tol):
    got = np.asarray(got, dtype=float)
    if len(got) != len(want):
        return False
    d = np.abs(got[:, None, :] - want[None, :, :]).max(axis=2)
    return bool((d.min(axis=1) <= tol).all() and (d.min(axis=0) <= tol).all())


def test_square_nfp_of_squares():
    c = convex_nfp(rect(0, 0, 1, 1), rect(0, 0, 1, 1), (0.0, 0.0))
    assert sorted(c.contour.vertices) == [(-1, -1), (-1, 1), (1, -1), (1, 1)]


def test_reference_point_shifts_result():
    a = convex_nfp(rect(0, 0, 2, 1), rect(0, 0, 1, 1), (0.0, 0.0)).contour.vertices
    b = convex_nfp(rect(0, 0, 2, 1), rect(0, 0, 1, 1), (0.5, 0.25)).contour.vertices
    assert sorted((p.x + 0.5, p.y + 0.25) for p in a) == sorted((p.x, p.y) for p in b)


def test_parallel_edges_fuse():
    # both squares contribute parallel edges; the sum is still a 4-gon
    s = minkowski_sum_convex(list(rect(0, 0, 1, 1).vertices), list(rect(0, 0, 2, 3).vertices))
    assert len(s) == 4
    assert signed_area(s) == pytest.approx(12.0)


def test_non_convex_rejected():
    with pytest.raises(GeometryError):
        convex_nfp([(0, 0), (2, 0), (1, 0.5), (2, 2), (0, 2)], rect(0, 0, 1, 1), (0, 0))


def test_result_is_ccw_and_area_matches_hull():
    for A, B in random_pairs("convex", 50, seed=3):
        ref = B.reference_point
        c = convex_nfp(A.outer, B.outer, ref)
        refl = [(ref[0] - x, ref[1] - y) for x, y in B.outer.vertices]
        verts, vol = hull_of_sums(A.outer.vertices, refl)
        assert signed_area(c.contour.vertices) == pytest.approx(vol, rel=1e-9)
        scale = float(np.abs(verts).max()) + 1.0
        assert same_polygon(c.contour.vertices, verts, 1e-9 * scale)


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=0, max_value=2**32 - 1))
def test_matches_hull_oracle_property(seed):
    rng = np.random.default_rng(seed)
    P = list(random_convex(rng).outer.vertices)
    Q = list(random_convex(rng).outer.vertices)
    got = minkowski_sum_convex(P, Q)
    want, vol = hull_of_sums(P, Q)
    assert signed_area(got) == pytest.approx(vol, rel=1e-9)
    assert same_polygon(got, want, 1e-9 * 400)
