"""No-fit polygon of two convex components by slope-ordered edge merging."""
from __future__ import annotations

from dataclasses import dataclass

from .geometry import (
    Contour,
    GeometryError,
    Point,
    cross,
    default_eps,
    is_convex,
    remove_collinear,
)


@dataclass(frozen=True)
class NfpComponent:
    contour: Contour
    stationary_id: int = 0
    orbital_id: int = 0


def _lowest_index(verts) -> int:
    return min(range(len(verts)), key=lambda i: (verts[i][1], verts[i][0]))


def minkowski_sum_convex(P, Q, eps: float = 0.0) -> list[Point]:
    """Boundary of P + Q for convex CCW vertex lists, collinear joints fused."""
    P = remove_collinear(P, eps)
    Q = remove_collinear(Q, eps)
    i0, j0 = _lowest_index(P), _lowest_index(Q)
    P = P[i0:] + P[:i0]
    Q = Q[j0:] + Q[:j0]
    n, m = len(P), len(Q)
    out = []
    i = j = 0
    while i < n or j < m:
        p, q = P[i % n], Q[j % m]
        out.append(Point(p[0] + q[0], p[1] + q[1]))
        if i == n:
            j += 1
            continue
        if j == m:
            i += 1
            continue
        ep = (P[(i + 1) % n][0] - p[0], P[(i + 1) % n][1] - p[1])
        eq = (Q[(j + 1) % m][0] - q[0], Q[(j + 1) % m][1] - q[1])
        c = cross((0.0, 0.0), ep, eq)
        if c > 0.0:
            i += 1
        elif c < 0.0:
            j += 1
        else:
            i += 1
            j += 1
    return remove_collinear(out, eps)


def convex_nfp(stat, orb, ref, eps: float | None = None, *,
               stationary_id: int = 0, orbital_id: int = 0) -> NfpComponent:
    """NFP of orbital ``orb`` around stationary ``stat`` for reference point ``ref``.

    A placement t of the reference point makes the interiors overlap exactly
    when t lies strictly inside the returned contour.
    """
    sv = stat.vertices if isinstance(stat, Contour) else list(stat)
    ov = orb.vertices if isinstance(orb, Contour) else list(orb)
    if eps is None:
        eps = default_eps(list(sv) + list(ov))
    if not is_convex(sv, eps) or not is_convex(ov, eps):
        raise GeometryError("convex_nfp requires convex CCW inputs")
    rx, ry = ref[0], ref[1]
    # point reflection keeps CCW order, so no re-orientation is needed
    reflected = [(rx - x, ry - y) for x, y in ov]
    verts = minkowski_sum_convex(list(sv), reflected, eps)
    return NfpComponent(Contour(tuple(verts)), stationary_id, orbital_id)
