"""Pure-Python implementations of the hot kernels.

Signatures and semantics mirror ``_ckernels.pyx`` exactly; the compiled
module is preferred when it is importable.
"""
from __future__ import annotations

import math

import numpy as np

from .geometry import segment_intersection_xy

BIG = 1e300


def edge_intersections(edges, owner, eps):
    """All intersection points between edges owned by different components.

    Returns (i, j, x, y) arrays, one row per point; i < j index into ``edges``.
    """
    edges = np.asarray(edges, dtype=np.float64)
    owner = np.asarray(owner, dtype=np.int64)
    n = len(edges)
    xmin = np.minimum(edges[:, 0], edges[:, 2])
    xmax = np.maximum(edges[:, 0], edges[:, 2])
    ymin = np.minimum(edges[:, 1], edges[:, 3])
    ymax = np.maximum(edges[:, 1], edges[:, 3])
    order = np.argsort(xmin, kind="stable")
    E = edges.tolist()
    ow = owner.tolist()
    xmin_l, xmax_l, ymin_l, ymax_l = xmin.tolist(), xmax.tolist(), ymin.tolist(), ymax.tolist()
    out_i, out_j, out_x, out_y = [], [], [], []
    order_l = order.tolist()
    for a_pos in range(n):
        i = order_l[a_pos]
        limit = xmax_l[i] + eps
        for b_pos in range(a_pos + 1, n):
            j = order_l[b_pos]
            if xmin_l[j] > limit:
                break
            if ow[i] == ow[j]:
                continue
            if ymin_l[j] > ymax_l[i] + eps or ymin_l[i] > ymax_l[j] + eps:
                continue
            ax, ay, bx, by = E[i]
            cx, cy, dx, dy = E[j]
            pts = segment_intersection_xy(ax, ay, bx, by, cx, cy, dx, dy, eps)
            lo, hi = (i, j) if i < j else (j, i)
            for x, y in pts:
                out_i.append(lo)
                out_j.append(hi)
                out_x.append(x)
                out_y.append(y)
    return (np.asarray(out_i, dtype=np.int64), np.asarray(out_j, dtype=np.int64),
            np.asarray(out_x, dtype=np.float64), np.asarray(out_y, dtype=np.float64))


def convex_containment(px, py, verts, offsets, eps):
    """Maximum containment state of each point over convex CCW components.

    0 outside all, 1 on some boundary, 2 strictly inside some component.
    """
    px = np.asarray(px, dtype=np.float64)
    py = np.asarray(py, dtype=np.float64)
    verts = np.asarray(verts, dtype=np.float64)
    offsets = np.asarray(offsets, dtype=np.int64)
    state = np.zeros(len(px), dtype=np.int8)
    for k in range(len(offsets) - 1):
        v = verts[offsets[k]:offsets[k + 1]]
        if len(v) < 3:
            continue
        x0, y0 = v.min(axis=0) - eps
        x1, y1 = v.max(axis=0) + eps
        sel = np.nonzero((px >= x0) & (px <= x1) & (py >= y0) & (py <= y1) & (state < 2))[0]
        if len(sel) == 0:
            continue
        a = v
        b = np.roll(v, -1, axis=0)
        ex = b[:, 0] - a[:, 0]
        ey = b[:, 1] - a[:, 1]
        ln = np.hypot(ex, ey)
        qx = px[sel][:, None]
        qy = py[sel][:, None]
        d = (ex * (qy - a[:, 1]) - ey * (qx - a[:, 0])) / ln
        dmin = d.min(axis=1)
        s = np.where(dmin < -eps, 0, np.where(dmin <= eps, 1, 2)).astype(np.int8)
        state[sel] = np.maximum(state[sel], s)
    return state


def _clip_area(P, Q):
    """Area of the intersection of two convex CCW polygons (lists of tuples)."""
    out = Q
    n = len(P)
    for k in range(n):
        if not out:
            return 0.0
        ax, ay = P[k]
        bx, by = P[(k + 1) % n]
        ex, ey = bx - ax, by - ay
        inp = out
        out = []
        m = len(inp)
        for s in range(m):
            cx, cy = inp[s]
            dx, dy = inp[(s + 1) % m]
            dc = ex * (cy - ay) - ey * (cx - ax)
            dd = ex * (dy - ay) - ey * (dx - ax)
            if dc >= 0.0:
                out.append((cx, cy))
            if (dc >= 0.0) != (dd >= 0.0):
                t = dc / (dc - dd)
                out.append((cx + t * (dx - cx), cy + t * (dy - cy)))
    if len(out) < 3:
        return 0.0
    x0, y0 = out[0]
    s = 0.0
    for i in range(1, len(out) - 1):
        x1, y1 = out[i]
        x2, y2 = out[i + 1]
        s += (x1 - x0) * (y2 - y0) - (x2 - x0) * (y1 - y0)
    return max(0.5 * s, 0.0)


def _split(verts, offsets):
    verts = np.asarray(verts, dtype=np.float64)
    offsets = np.asarray(offsets, dtype=np.int64)
    polys = [verts[offsets[k]:offsets[k + 1]] for k in range(len(offsets) - 1)]
    boxes = [(p[:, 0].min(), p[:, 1].min(), p[:, 0].max(), p[:, 1].max()) for p in polys]
    return [list(map(tuple, p.tolist())) for p in polys], boxes


def overlap_areas(a_verts, a_off, b_verts, b_off, tx, ty):
    """Sum of pairwise clip areas between A's and translated B's components."""
    A, abox = _split(a_verts, a_off)
    B, bbox_ = _split(b_verts, b_off)
    tx = np.asarray(tx, dtype=np.float64).tolist()
    ty = np.asarray(ty, dtype=np.float64).tolist()
    out = np.zeros(len(tx))
    for m, (dx, dy) in enumerate(zip(tx, ty)):
        total = 0.0
        for j, Q in enumerate(B):
            qb = bbox_[j]
            qx0, qy0, qx1, qy1 = qb[0] + dx, qb[1] + dy, qb[2] + dx, qb[3] + dy
            Qt = None
            for i, P in enumerate(A):
                pb = abox[i]
                if pb[0] >= qx1 or qx0 >= pb[2] or pb[1] >= qy1 or qy0 >= pb[3]:
                    continue
                if Qt is None:
                    Qt = [(x + dx, y + dy) for x, y in Q]
                total += _clip_area(P, Qt)
        out[m] = total
    return out


def _separation(P, Q):
    """Signed SAT separation of convex CCW polygons; negative means interiors overlap."""
    best = -BIG
    for R, S in ((P, Q), (Q, P)):
        n = len(R)
        for k in range(n):
            ax, ay = R[k]
            bx, by = R[(k + 1) % n]
            ex, ey = bx - ax, by - ay
            ln = math.hypot(ex, ey)
            dmin = BIG
            for sx, sy in S:
                d = -(ex * (sy - ay) - ey * (sx - ax)) / ln
                if d < dmin:
                    dmin = d
            if dmin > best:
                best = dmin
    return best


def min_separation(a_verts, a_off, b_verts, b_off, tx, ty):
    """Smallest SAT separation over all component pairs with touching boxes."""
    A, abox = _split(a_verts, a_off)
    B, bbox_ = _split(b_verts, b_off)
    tx = np.asarray(tx, dtype=np.float64).tolist()
    ty = np.asarray(ty, dtype=np.float64).tolist()
    out = np.full(len(tx), BIG)
    for m, (dx, dy) in enumerate(zip(tx, ty)):
        best = BIG
        for j, Q in enumerate(B):
            qb = bbox_[j]
            qx0, qy0, qx1, qy1 = qb[0] + dx, qb[1] + dy, qb[2] + dx, qb[3] + dy
            Qt = None
            for i, P in enumerate(A):
                pb = abox[i]
                if pb[0] > qx1 or qx0 > pb[2] or pb[1] > qy1 or qy0 > pb[3]:
                    continue
                if Qt is None:
                    Qt = [(x + dx, y + dy) for x, y in Q]
                s = _separation(P, Qt)
                if s < best:
                    best = s
        out[m] = best
    return out
