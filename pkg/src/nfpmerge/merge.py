"""Complete no-fit polygon of two general pieces.

Both pieces are split into convex components, every component pair gets a
convex NFP, and the overlapping component NFPs are merged in a directed
graph. Vertices strictly inside any component are removed together with
their edges, and the rest is split into outlines, holes, sliding paths and
exact-fit points.
"""
from __future__ import annotations

import numpy as np

from . import kernels
from .convex_nfp import NfpComponent, convex_nfp
from .decomposition import ConvexDecomposition, decompose
from .extraction import NfpResult, extract_all
from .geometry import DEFAULT_REL_EPS, Piece, Point, default_eps
from .graph import MergeGraph


def nfp_components(A: Piece | ConvexDecomposition, B: Piece | ConvexDecomposition,
                   eps: float | None = None) -> list[NfpComponent]:
    """Convex NFPs of every (A component, B component) pair, B orbiting A."""
    da = A if isinstance(A, ConvexDecomposition) else decompose(A)
    db = B if isinstance(B, ConvexDecomposition) else decompose(B)
    ref = db.source.reference_point
    out = []
    for i, ca in enumerate(da.components):
        for j, cb in enumerate(db.components):
            out.append(convex_nfp(ca, cb, ref, eps, stationary_id=i, orbital_id=j))
    return out


def _contours(components) -> list[list[Point]]:
    return [list(c.contour.vertices if isinstance(c, NfpComponent) else c) for c in components]


def compute_intersections(components, eps: float) -> list[list[Point]]:
    """Insert every cross-component edge intersection into the contours.

    Collinear overlaps contribute both ends of the shared interval, so each
    resulting edge is either shared in full or not at all.
    """
    rings = _contours(components)
    edges, owner, where = [], [], []
    for k, ring in enumerate(rings):
        n = len(ring)
        for e in range(n):
            a, b = ring[e], ring[(e + 1) % n]
            edges.append((a[0], a[1], b[0], b[1]))
            owner.append(k)
            where.append((k, e))
    extra: dict[tuple[int, int], list[tuple[float, float]]] = {}
    if edges:
        ii, jj, xs, ys = kernels.edge_intersections(np.asarray(edges, dtype=np.float64),
                                                    np.asarray(owner, dtype=np.int64), eps)
        for i, j, x, y in zip(ii.tolist(), jj.tolist(), xs.tolist(), ys.tolist()):
            extra.setdefault(where[i], []).append((x, y))
            extra.setdefault(where[j], []).append((x, y))
    out = []
    for k, ring in enumerate(rings):
        n = len(ring)
        new = []
        for e in range(n):
            a, b = ring[e], ring[(e + 1) % n]
            new.append(Point(a[0], a[1]))
            pts = extra.get((k, e))
            if not pts:
                continue
            dx, dy = b[0] - a[0], b[1] - a[1]
            ll = dx * dx + dy * dy
            pts.sort(key=lambda p: ((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / ll)
            last = a
            for p in pts:
                if max(abs(p[0] - last[0]), abs(p[1] - last[1])) <= eps:
                    continue
                if max(abs(p[0] - b[0]), abs(p[1] - b[1])) <= eps:
                    continue
                new.append(Point(p[0], p[1]))
                last = p
        out.append(new)
    return out


def insert_midpoints(ring) -> list[Point]:
    """Split every edge at its midpoint so no edge joins two boundary points across an interior."""
    n = len(ring)
    out = []
    for e in range(n):
        a, b = ring[e], ring[(e + 1) % n]
        out.append(Point(a[0], a[1]))
        out.append(Point(0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1])))
    return out


def build_graph(rings, eps: float) -> MergeGraph:
    g = MergeGraph(eps)
    for ring in rings:
        ids = [g.add_vertex(p) for p in ring]
        n = len(ids)
        for k in range(n):
            g.add_edge(ids[k], ids[(k + 1) % n])
    return g


def remove_contained(g: MergeGraph, components, eps: float) -> int:
    """Delete vertices strictly inside any component. Returns how many were removed."""
    vids = g.vertices()
    if not vids:
        return 0
    px = np.fromiter((g.points[v].x for v in vids), dtype=np.float64, count=len(vids))
    py = np.fromiter((g.points[v].y for v in vids), dtype=np.float64, count=len(vids))
    verts, offsets = kernels.pack_polygons(_contours(components))
    state = kernels.convex_containment(px, py, verts, offsets, eps)
    removed = 0
    for v, s in zip(vids, state.tolist()):
        if s == 2:
            g.remove_vertex(v)
            removed += 1
    return removed


def merged_graph(components, eps: float) -> MergeGraph:
    rings = [insert_midpoints(r) for r in compute_intersections(components, eps)]
    g = build_graph(rings, eps)
    remove_contained(g, components, eps)
    return g


def gen_nfp(A: Piece, B: Piece, rel_eps: float = DEFAULT_REL_EPS,
            trace: list | None = None) -> NfpResult:
    """Complete NFP of B orbiting a fixed A, positions of B's reference point."""
    da = A if isinstance(A, ConvexDecomposition) else decompose(A)
    db = B if isinstance(B, ConvexDecomposition) else decompose(B)
    comps = nfp_components(da, db)
    eps = default_eps([p for c in comps for p in c.contour.vertices], rel_eps)
    g = merged_graph(comps, eps)
    return extract_all(g, eps, trace)
