import numpy as np
import pytest

from nfpmerge.fixtures import (
    FixtureCase,
    build_case_pieces,
    builtin_cases,
    random_convex,
    random_holed,
    random_pairs,
    random_polyomino,
    random_star,
    square_ring_case,
)
from nfpmerge.geometry import is_convex, ring_is_simple
from nfpmerge.io import serialize_piece
from nfpmerge.merge import gen_nfp
from nfpmerge.oracle import flood_fill_counts

CASES = builtin_cases()


def test_five_cases_shipped():
    assert [c.name for c in CASES] == ["case1", "case2", "case3", "case4", "case5"]


def test_shipped_documents_match_builders():
    built = build_case_pieces()
    for c in CASES:
        A, B, expected, _ = built[c.name]
        assert serialize_piece(c.stationary) == serialize_piece(A)
        assert serialize_piece(c.orbital) == serialize_piece(B)
        assert c.expected == expected


def test_matches_handles_lower_bounds():
    c = FixtureCase("x", None, None, {"hole_count": ">=2", "fit_count": 0})
    assert c.matches({"hole_count": 3, "fit_count": 0})
    assert not c.matches({"hole_count": 1, "fit_count": 0})
    assert not c.matches({"hole_count": 2, "fit_count": 1})


@pytest.mark.parametrize("case", [*CASES, square_ring_case()], ids=lambda c: c.name)
def test_case_counts(case):
    assert case.matches(gen_nfp(case.stationary, case.orbital).counts())


@pytest.mark.parametrize("case", [c for c in CASES if c.name in ("case1", "case2", "case5")],
                         ids=lambda c: c.name)
def test_case_holes_confirmed_by_flood_fill(case):
    r = gen_nfp(case.stationary, case.orbital)
    ff = flood_fill_counts(case.stationary, case.orbital, grid_n=192)
    assert ff == {"hole_count": len(r.holes), "outer_count": len(r.outer)}


def test_random_convex_within_bounds():
    rng = np.random.default_rng(0)
    for _ in range(200):
        p = random_convex(rng)
        v = np.asarray(p.outer.vertices)
        assert is_convex(p.outer.vertices, 1e-9)
        assert (v >= -100).all() and (v <= 100).all()


def test_random_star_is_simple():
    rng = np.random.default_rng(1)
    for _ in range(100):
        assert ring_is_simple(list(random_star(rng).outer.vertices))


def test_random_pairs_deterministic():
    assert random_pairs("star", 5, seed=7) == random_pairs("star", 5, seed=7)
    assert random_pairs("star", 5, seed=7) != random_pairs("star", 5, seed=8)


def test_polyomino_and_holed():
    rng = np.random.default_rng(2)
    p = random_polyomino(rng, 7)
    assert p.area() == pytest.approx(7.0)
    h = random_holed(rng, 5)
    assert len(h.holes) == 1
