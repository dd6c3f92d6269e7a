"""Convex partition of pieces: hole bridging, ear clipping, Hertel-Mehlhorn merge."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import (
    DEFAULT_REL_EPS,
    Contour,
    GeometryError,
    Orientation,
    Piece,
    Point,
    default_eps,
    is_convex,
    orient,
    point_in_ring,
    points_equal,
    remove_collinear,
    ring_is_simple,
    segment_intersection_xy,
    signed_area,
)


class DecompositionError(GeometryError):
    pass


@dataclass(frozen=True)
class ConvexDecomposition:
    source: Piece
    components: tuple[Contour, ...]


@dataclass(frozen=True)
class DecompositionReport:
    convex_ok: bool
    coverage_ok: bool
    area_delta: float
    agreement: float

    @property
    def ok(self) -> bool:
        return self.convex_ok and self.coverage_ok


def piece_eps(piece: Piece, rel_eps: float = DEFAULT_REL_EPS) -> float:
    return default_eps(piece.outer.vertices, rel_eps)


def in_piece_region(p, piece: Piece) -> bool:
    """Even-odd membership in outer minus holes (boundary unspecified)."""
    if not point_in_ring(p, piece.outer.vertices):
        return False
    return not any(point_in_ring(p, h.vertices) for h in piece.holes)


# --- hole bridging -------------------------------------------------------------

def _ccw_angle(dx, dy):
    a = math.atan2(dy, dx)
    return a if a >= 0.0 else a + 2.0 * math.pi


def _in_wedge(ring, k, target) -> bool:
    """Does the ray from ring[k] towards target leave into the polygon interior?"""
    v = ring[k]
    p = ring[k - 1]
    n = ring[(k + 1) % len(ring)]
    base = _ccw_angle(n[0] - v[0], n[1] - v[1])
    span = (_ccw_angle(p[0] - v[0], p[1] - v[1]) - base) % (2.0 * math.pi)
    if span == 0.0:
        span = 2.0 * math.pi
    d = (_ccw_angle(target[0] - v[0], target[1] - v[1]) - base) % (2.0 * math.pi)
    return 0.0 < d < span


def _segment_clear(a, b, edges, eps) -> bool:
    """Segment ab meets no edge except at a or b."""
    for c, d in edges:
        pts = segment_intersection_xy(a[0], a[1], b[0], b[1], c[0], c[1], d[0], d[1], eps)
        for q in pts:
            if not (points_equal(q, a, eps) or points_equal(q, b, eps)):
                return False
        if len(pts) == 2:
            # collinear overlap along the bridge
            return False
    return True


def bridge_holes(piece: Piece, eps: float) -> list[Point]:
    """Splice every hole into the outer ring with the shortest clear diagonal.

    Returns one weakly simple CCW ring; bridge endpoints appear twice.
    """
    ring = list(piece.outer.vertices)
    pending = list(piece.holes)
    all_edges = [e for c in piece.rings for e in c.edges()]
    while pending:
        hole = pending.pop(0)
        hv = list(hole.vertices)
        cands = []
        for hi, h in enumerate(hv):
            for ri, r in enumerate(ring):
                cands.append(((h[0] - r[0]) ** 2 + (h[1] - r[1]) ** 2, ri, hi))
        cands.sort()
        chosen = None
        for _, ri, hi in cands:
            r, h = ring[ri], hv[hi]
            if points_equal(r, h, eps):
                continue
            if not _in_wedge(ring, ri, h):
                continue
            # hole rings are CW, so their exterior wedge is the CCW wedge test
            if not _in_wedge(hv, hi, r):
                continue
            mid = ((r[0] + h[0]) / 2.0, (r[1] + h[1]) / 2.0)
            if not in_piece_region(mid, piece):
                continue
            if not _segment_clear(r, h, all_edges, eps):
                continue
            chosen = (ri, hi)
            break
        if chosen is None:
            raise DecompositionError("could not bridge hole to outer ring")
        ri, hi = chosen
        loop = hv[hi:] + hv[:hi] + [hv[hi]]
        ring = ring[: ri + 1] + loop + ring[ri:]
        all_edges.append((ring[ri], hv[hi]))
    return ring


# --- ear clipping ----------------------------------------------------------------

def _in_triangle_closed(p, a, b, c, eps) -> bool:
    return (orient(a, b, p, eps) is not Orientation.RIGHT
            and orient(b, c, p, eps) is not Orientation.RIGHT
            and orient(c, a, p, eps) is not Orientation.RIGHT)


def triangulate(ring, eps: float = 0.0) -> list[tuple[Point, Point, Point]]:
    """Ear-clip a weakly simple CCW ring into CCW triangles."""
    pts = list(ring)
    idx = list(range(len(pts)))
    tris = []
    start = 0
    while len(idx) > 3:
        n = len(idx)
        clipped = False
        for step in range(n):
            k = (start + step) % n
            ia, ib, ic = idx[k - 1], idx[k], idx[(k + 1) % n]
            a, b, c = pts[ia], pts[ib], pts[ic]
            o = orient(a, b, c, eps)
            if o is Orientation.COLLINEAR or points_equal(a, c, eps):
                del idx[k]
                clipped = True
                break
            if o is Orientation.RIGHT:
                continue
            blocked = False
            for j in idx:
                if j in (ia, ib, ic):
                    continue
                p = pts[j]
                if points_equal(p, a, eps) or points_equal(p, b, eps) or points_equal(p, c, eps):
                    continue
                if _in_triangle_closed(p, a, b, c, eps):
                    blocked = True
                    break
            if blocked:
                continue
            tris.append((a, b, c))
            del idx[k]
            start = k % len(idx)
            clipped = True
            break
        if not clipped:
            raise DecompositionError("ear clipping found no ear; ring is not simple")
    if len(idx) == 3:
        a, b, c = (pts[i] for i in idx)
        if orient(a, b, c, eps) is Orientation.LEFT:
            tris.append((a, b, c))
    return tris


# --- Hertel-Mehlhorn -------------------------------------------------------------

def _merge_at(P, Q, u, v):
    """P contains edge u->v, Q contains v->u; return the polygon without that edge."""
    i = next(k for k in range(len(P)) if P[k] == u and P[(k + 1) % len(P)] == v)
    j = next(k for k in range(len(Q)) if Q[k] == v and Q[(k + 1) % len(Q)] == u)
    p_walk = [P[(i + 1 + s) % len(P)] for s in range(len(P))]  # v ... u
    q_walk = [Q[(j + 1 + s) % len(Q)] for s in range(len(Q))]  # u ... v
    return p_walk[:-1] + q_walk[:-1]


def hertel_mehlhorn(tris, boundary_edges: set, eps: float = 0.0) -> list[list[Point]]:
    polys = [list(t) for t in tris]
    changed = True
    while changed:
        changed = False
        owner = {}
        for pi, P in enumerate(polys):
            if P is None:
                continue
            for k in range(len(P)):
                owner[(P[k], P[(k + 1) % len(P)])] = pi
        for (u, v), pi in sorted(owner.items(), key=lambda kv: kv[1]):
            if (u, v) in boundary_edges:
                continue
            qi = owner.get((v, u))
            if qi is None or qi == pi or polys[pi] is None or polys[qi] is None:
                continue
            P, Q = polys[pi], polys[qi]
            if (u, v) not in zip(P, P[1:] + P[:1]) or (v, u) not in zip(Q, Q[1:] + Q[:1]):
                continue
            merged = _merge_at(P, Q, u, v)
            if is_convex(merged, eps):
                polys[pi] = merged
                polys[qi] = None
                changed = True
        polys = [P for P in polys if P is not None]
    return polys


def decompose(piece: Piece, eps: float | None = None) -> ConvexDecomposition:
    """Partition a piece (holes allowed) into convex CCW components."""
    if eps is None:
        eps = piece_eps(piece)
    for ring in piece.rings:
        if not ring_is_simple(ring.vertices, eps):
            raise DecompositionError("self-intersecting ring")
    cleaned = Piece(
        Contour(tuple(remove_collinear(piece.outer.vertices, eps))),
        tuple(Contour(tuple(remove_collinear(h.vertices, eps))) for h in piece.holes),
        piece.reference_point,
        piece.name,
    )
    if is_convex(cleaned.outer.vertices, eps) and not cleaned.holes:
        return ConvexDecomposition(piece, (cleaned.outer,))
    ring = bridge_holes(cleaned, eps)
    tris = triangulate(ring, eps)
    boundary = set()
    for c in cleaned.rings:
        for a, b in c.edges():
            boundary.add((a, b))
    polys = hertel_mehlhorn(tris, boundary, eps)
    comps = []
    for P in polys:
        P = remove_collinear(P, eps)
        if len(P) >= 3 and signed_area(P) > 0.0:
            comps.append(Contour(tuple(P)))
    return ConvexDecomposition(piece, tuple(comps))


def validate_decomposition(d: ConvexDecomposition, samples: int = 10_000, seed: int = 0,
                           rel_tol: float = 1e-6) -> DecompositionReport:
    piece = d.source
    eps = piece_eps(piece)
    convex_ok = all(is_convex(c.vertices, eps) for c in d.components)
    target = piece.area()
    total = sum(signed_area(c) for c in d.components)
    area_delta = total - target
    area_ok = abs(area_delta) <= rel_tol * abs(target)

    rng = np.random.default_rng(seed)
    x0, y0 = min(v.x for v in piece.outer), min(v.y for v in piece.outer)
    x1, y1 = max(v.x for v in piece.outer), max(v.y for v in piece.outer)
    xs = rng.uniform(x0, x1, samples)
    ys = rng.uniform(y0, y1, samples)
    agree = 0
    for x, y in zip(xs, ys):
        truth = in_piece_region((x, y), piece)
        hits = sum(point_in_ring((x, y), c.vertices) for c in d.components)
        agree += (hits >= 1) == truth and hits <= 1
    agreement = agree / samples
    coverage_ok = area_ok and agreement >= 1.0 - 1e-3
    return DecompositionReport(convex_ok, coverage_ok, area_delta, agreement)
