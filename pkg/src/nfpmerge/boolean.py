"""Polygon boolean operations on the same intersect, split and extract machinery."""
from __future__ import annotations

from enum import Enum

import numpy as np

from .extraction import extract_all
from .geometry import (
    DEFAULT_REL_EPS,
    Contour,
    Piece,
    Point,
    bbox_diagonal,
    default_eps,
    point_in_ring,
    signed_area,
)
from .graph import MergeGraph
from .merge import compute_intersections, insert_midpoints


class BoolOp(Enum):
    OR = "or"
    AND = "and"
    XOR = "xor"
    NOT = "not"  # A minus B


def piece_state(px, py, piece: Piece, eps: float) -> np.ndarray:
    """Per-point state against a piece: 0 outside, 1 on its boundary, 2 inside."""
    px = np.asarray(px, dtype=np.float64)
    py = np.asarray(py, dtype=np.float64)
    inside = np.zeros(len(px), dtype=bool)
    dmin = np.full(len(px), np.inf)
    for ring in piece.rings:
        v = np.asarray(ring.vertices, dtype=np.float64)
        a = v
        b = np.roll(v, -1, axis=0)
        ax, ay = a[:, 0][None, :], a[:, 1][None, :]
        bx, by = b[:, 0][None, :], b[:, 1][None, :]
        qx, qy = px[:, None], py[:, None]
        ex, ey = bx - ax, by - ay
        ll = ex * ex + ey * ey
        t = np.clip(((qx - ax) * ex + (qy - ay) * ey) / np.where(ll > 0, ll, 1.0), 0.0, 1.0)
        d = np.hypot(qx - (ax + t * ex), qy - (ay + t * ey))
        dmin = np.minimum(dmin, d.min(axis=1))
        crosses = (ay > qy) != (by > qy)
        with np.errstate(divide="ignore", invalid="ignore"):
            xi = ax + (qy - ay) * ex / np.where(ey != 0, ey, 1.0)
        hit = crosses & (qx < xi)
        inside ^= (hit.sum(axis=1) % 2).astype(bool)
    return np.where(dmin <= eps, 1, np.where(inside, 2, 0)).astype(np.int8)


def _keep_vertex(op: BoolOp, a: int, b: int) -> bool:
    if op is BoolOp.OR:
        return a <= 1 and b <= 1
    if op is BoolOp.AND:
        return a >= 1 and b >= 1
    if op is BoolOp.NOT:
        return a >= 1 and b <= 1
    return True


def _assemble(outers: list[Contour], holes: list[Contour], eps: float) -> list[Piece]:
    """Give each hole to the smallest outline that contains material next to it."""
    areas = [signed_area(o) for o in outers]
    owned: list[list[Contour]] = [[] for _ in outers]
    for h in holes:
        vs = h.vertices
        n = len(vs)
        k = max(range(n), key=lambda i: (vs[(i + 1) % n][0] - vs[i][0]) ** 2
                + (vs[(i + 1) % n][1] - vs[i][1]) ** 2)
        a, b = vs[k], vs[(k + 1) % n]
        ex, ey = b[0] - a[0], b[1] - a[1]
        ln = (ex * ex + ey * ey) ** 0.5
        nudge = max(1e-6 * ln, 10.0 * eps)
        # material lies on the left of every directed boundary edge
        probe = (0.5 * (a[0] + b[0]) - ey / ln * nudge, 0.5 * (a[1] + b[1]) + ex / ln * nudge)
        best = None
        for i, o in enumerate(outers):
            if point_in_ring(probe, o.vertices) and (best is None or areas[i] < areas[best]):
                best = i
        if best is not None:
            owned[best].append(h)
    return [Piece(o, tuple(hs)) for o, hs in zip(outers, owned)]


def boolean(A: Piece, B: Piece, op: BoolOp | str, rel_eps: float = DEFAULT_REL_EPS) -> list[Piece]:
    """Regularised boolean of two pieces; degenerate slivers, slits and points are dropped."""
    op = BoolOp(op) if not isinstance(op, BoolOp) else op
    allpts = [p for r in (*A.rings, *B.rings) for p in r.vertices]
    eps = default_eps(allpts, rel_eps)
    a_rings = [list(r.vertices) for r in A.rings]
    b_rings = [list(r.vertices) for r in B.rings]
    if op is BoolOp.NOT:
        b_rings = [r[::-1] for r in b_rings]
    rings = [insert_midpoints(r) for r in compute_intersections(a_rings + b_rings, eps)]
    n_a = len(a_rings)

    g = MergeGraph(eps)
    directed: list[tuple[int, int, int]] = []
    for k, ring in enumerate(rings):
        ids = [g.add_vertex(p) for p in ring]
        m = len(ids)
        for i in range(m):
            if ids[i] != ids[(i + 1) % m]:
                directed.append((ids[i], ids[(i + 1) % m], 0 if k < n_a else 1))

    vids = g.vertices()
    px = [g.points[v].x for v in vids]
    py = [g.points[v].y for v in vids]
    sa = dict(zip(vids, piece_state(px, py, A, eps).tolist()))
    sb = dict(zip(vids, piece_state(px, py, B, eps).tolist()))

    net: dict[tuple[int, int], int] = {}
    mult: dict[tuple[int, int], int] = {}
    for u, v, owner in directed:
        if op is BoolOp.XOR:
            other = sb if owner == 0 else sa
            if other[u] == 2 or other[v] == 2:
                u, v = v, u
        key = (u, v) if u < v else (v, u)
        net[key] = net.get(key, 0) + (1 if (u, v) == key else -1)
        mult[key] = mult.get(key, 0) + 1

    for v in vids:
        if not _keep_vertex(op, sa[v], sb[v]):
            g.remove_vertex(v)
    for (u, v), s in net.items():
        if u not in g.points or v not in g.points:
            continue
        if op is BoolOp.XOR:
            if mult[(u, v)] != 1:
                continue
        elif s == 0:
            continue
        if s > 0:
            g.add_edge(u, v)
        else:
            g.add_edge(v, u)

    res = extract_all(g, eps)
    diag = bbox_diagonal(allpts)
    tiny = eps * max(diag, 1.0)
    outers = [c for c in res.outer if abs(signed_area(c)) > tiny]
    holes = [c for c in res.holes if abs(signed_area(c)) > tiny]
    return _assemble(outers, holes, eps)


def total_area(pieces) -> float:
    return sum(p.area() for p in pieces)
