"""Split a merged NFP graph into outlines, holes, sliding paths and exact-fit points."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

from .geometry import (
    Contour,
    GeometryError,
    Orientation,
    Point,
    bbox_diagonal,
    orient,
    remove_collinear,
    signed_area,
)
from .graph import MergeGraph

TWO_PI = 2.0 * math.pi
_ANGLE_TIE = 1e-12


class ExtractionError(GeometryError):
    """The graph is not a union of closed circuits."""


class StartKind(Enum):
    OUTLINE = "outline"
    HOLE = "hole"
    PERFECT_FIT = "perfect_fit"


@dataclass(frozen=True)
class StartClass:
    kind: StartKind
    vertex: int
    edge: tuple[int, int] | None = None


@dataclass(frozen=True)
class NfpResult:
    outer: tuple[Contour, ...] = ()
    holes: tuple[Contour, ...] = ()
    slides: tuple[Contour, ...] = ()
    fits: tuple[Point, ...] = ()
    slide_attachments: tuple[Point, ...] = ()
    epsilon: float = 0.0
    edges_consumed: int = field(default=0, compare=False)

    def counts(self) -> dict[str, int]:
        return {
            "outer_count": len(self.outer),
            "hole_count": len(self.holes),
            "slide_count": len(self.slides),
            "fit_count": len(self.fits),
        }

    @property
    def is_empty(self) -> bool:
        return not (self.outer or self.holes or self.slides or self.fits)


def _up_key(dx: float, dy: float) -> float:
    """Counter-clockwise angle from the upward vertical, straight up mapped to 2*pi."""
    a = math.atan2(-dx, dy)
    if a < 0.0:
        a += TWO_PI
    if a <= _ANGLE_TIE or (dx == 0.0 and dy > 0.0):
        a = TWO_PI
    return a


def find_start_vertex(g: MergeGraph) -> int:
    if not g.points:
        raise ExtractionError("empty graph")
    return min(g.points, key=lambda v: (g.points[v].x, g.points[v].y, v))


def _edge_len(g, u, v):
    p, q = g.points[u], g.points[v]
    return math.hypot(q.x - p.x, q.y - p.y)


def classify_start(g: MergeGraph, v: int) -> StartClass:
    """Pick the start edge at ``v`` by its angle to the upward vertical.

    The minimal-angle edge bounds the exterior side of ``v``: if it is
    inward the circuit is a hole (or a sliding path), otherwise an outline.
    """
    p = g.points[v]
    cands = []
    for w in g.out[v]:
        q = g.points[w]
        cands.append((_up_key(q.x - p.x, q.y - p.y), "out", w))
    for u in g.inc[v]:
        q = g.points[u]
        cands.append((_up_key(q.x - p.x, q.y - p.y), "in", u))
    if not cands:
        return StartClass(StartKind.PERFECT_FIT, v)
    best = min(c[0] for c in cands)
    tied = [c for c in cands if c[0] - best <= _ANGLE_TIE]

    def order(c):
        q = g.points[c[2]]
        return (_edge_len(g, v, c[2]), q.x, q.y)

    inward = sorted((c for c in tied if c[1] == "in"), key=order)
    if inward:
        return StartClass(StartKind.HOLE, v, (inward[0][2], v))
    outward = sorted(tied, key=order)
    return StartClass(StartKind.OUTLINE, v, (v, outward[0][2]))


def _next_vertex(g: MergeGraph, prev: int, cur: int, consumed: set, start_edge) -> int | None:
    """Tightest turn at ``cur``: first outgoing edge counter-clockwise from the way back.

    This keeps the free side of the boundary on the walker's right, so an
    outline and a hole meeting at one vertex come out as separate circuits.
    """
    p, c = g.points[prev], g.points[cur]
    back = math.atan2(p.y - c.y, p.x - c.x)
    best = None
    options = [w for w in g.out[cur] if (cur, w) not in consumed]
    if start_edge[0] == cur:
        options.append(start_edge[1])
    for w in options:
        if w == prev:
            ang = TWO_PI
        else:
            q = g.points[w]
            ang = (math.atan2(q.y - c.y, q.x - c.x) - back) % TWO_PI
            if ang <= _ANGLE_TIE:
                ang = TWO_PI
        q = g.points[w]
        key = (ang, _edge_len(g, cur, w), q.x, q.y)
        if best is None or key < best[0]:
            best = (key, w)
    return None if best is None else best[1]


def walk_circuit(g: MergeGraph, edge: tuple[int, int]) -> list[int]:
    """Follow the face cycle through ``edge`` and consume its edges from ``g``."""
    u0, v0 = edge
    if not g.has_edge(u0, v0):
        raise ExtractionError(f"start edge {edge} not in graph")
    ids = [u0]
    consumed = {(u0, v0)}
    prev, cur = u0, v0
    limit = g.n_edges + 1
    while True:
        nxt = _next_vertex(g, prev, cur, consumed, edge)
        if nxt is None:
            raise ExtractionError(f"walk stuck at vertex {cur} {g.points[cur]}")
        if cur == u0 and nxt == v0:
            break
        ids.append(cur)
        consumed.add((cur, nxt))
        prev, cur = cur, nxt
        if len(ids) > limit:
            raise ExtractionError("walk did not close")
    for u, v in consumed:
        g.remove_edge(u, v)
    return ids


def _drop_collinear_ids(g: MergeGraph, ids: list[int]) -> list[Point]:
    pts = [g.points[i] for i in ids]
    return remove_collinear(pts, g.eps)


def _canonical(pts: list[Point]) -> list[Point]:
    k = min(range(len(pts)), key=lambda i: (pts[i].x, pts[i].y))
    return pts[k:] + pts[:k]


def extract_circuit(g: MergeGraph, start: StartClass) -> Contour:
    if start.kind is StartKind.PERFECT_FIT or start.edge is None:
        raise ExtractionError("perfect-fit start has no circuit")
    ids = walk_circuit(g, start.edge)
    return Contour(tuple(_canonical(_drop_collinear_ids(g, ids))))


def split_circuit(ids: list[int]) -> tuple[list[list[int]], list[tuple[int, int]]]:
    """Cut a closed walk into simple circuits.

    The walk is cut wherever it runs along an edge in both directions (the
    edge becomes a sliding path) and then at every vertex it visits twice.
    Returns the simple sub-circuits and the zero-width edges removed.
    """
    stack = [ids]
    cores, slide_edges = [], []
    while stack:
        L = stack.pop()
        n = len(L)
        if n < 2:
            cores.append(L)
            continue
        pos = {}
        for k in range(n):
            pos.setdefault((L[k], L[(k + 1) % n]), k)
        hit = None
        for k in range(n):
            l_ = pos.get((L[(k + 1) % n], L[k]))
            if l_ is not None:
                hit = (k, l_)
                break
        if hit is None:
            # no zero-width edge left: cut at a vertex the walk passes twice
            first = {}
            for k, v in enumerate(L):
                if v in first:
                    i = first[v]
                    stack.append(L[k:] + L[:i])
                    stack.append(L[i:k])
                    break
                first[v] = k
            else:
                cores.append(L)
            continue
        k, l_ = hit
        R = L[k:] + L[:k]
        l_ = (l_ - k) % n
        slide_edges.append((R[0], R[1]))
        Y = R[1:l_] if l_ > 1 else [R[1]]
        Z = R[l_ + 1:] if l_ + 1 < n else [R[0]]
        stack.append(Z)
        stack.append(Y)
    return cores, slide_edges


def _slide_tours(g: MergeGraph, edges: list[tuple[int, int]]) -> list[list[int]]:
    """Group zero-width edges into connected paths, each as a closed there-and-back walk."""
    adj: dict[int, list[int]] = {}
    for u, v in edges:
        adj.setdefault(u, [])
        adj.setdefault(v, [])
        if v not in adj[u]:
            adj[u].append(v)
            adj[v].append(u)
    # contract straight pass-through vertices; junctions and bends stay
    for v in list(adj):
        if len(adj[v]) != 2:
            continue
        u, w = adj[v]
        p, q, r = g.points[u], g.points[v], g.points[w]
        if (w not in adj[u] and orient(p, q, r, g.eps) is Orientation.COLLINEAR
                and (q.x - p.x) * (r.x - q.x) + (q.y - p.y) * (r.y - q.y) > 0.0):
            adj[u][adj[u].index(v)] = w
            adj[w][adj[w].index(v)] = u
            del adj[v]
    seen_v: set[int] = set()
    tours = []
    for root in sorted(adj, key=lambda v: (g.points[v].x, g.points[v].y)):
        if root in seen_v:
            continue
        tour = []
        used = set()

        def dfs(v):
            seen_v.add(v)
            tour.append(v)
            for w in sorted(adj[v], key=lambda w: (g.points[w].x, g.points[w].y)):
                e = (min(v, w), max(v, w))
                if e in used:
                    continue
                used.add(e)
                dfs(w)
                tour.append(v)

        dfs(root)
        tours.append(tour[:-1] if len(tour) > 1 else tour)
    return tours


def extract_all(g: MergeGraph, eps: float | None = None, trace: list | None = None) -> NfpResult:
    """Repeat start selection and circuit extraction until the graph is empty.

    ``g`` is consumed. If ``trace`` is a list, each raw walk (vertex points)
    is appended to it.
    """
    if eps is None:
        eps = g.eps
    if not g.points:
        return NfpResult(epsilon=eps)
    points = dict(g.points)
    diag = bbox_diagonal(points.values())
    zero_area = max(eps, 1e-300) * max(diag, 1.0) ** 2
    outer, holes, slides, fits = [], [], [], []
    contour_ids: set[int] = set()
    slide_ids: list[int] = []
    consumed = 0
    while g.points:
        v = find_start_vertex(g)
        sc = classify_start(g, v)
        if sc.kind is StartKind.PERFECT_FIT:
            fits.append(g.points[v])
            g.remove_vertex(v)
            continue
        ids = walk_circuit(g, sc.edge)
        consumed += len(ids)
        if trace is not None:
            trace.append([g.points[i] for i in ids])
        cores, slide_edges = split_circuit(ids)
        for core in cores:
            if len(core) < 3:
                continue
            pts = _drop_collinear_ids(g, core)
            area = signed_area(pts)
            if len(pts) < 3 or abs(area) <= zero_area:
                # zero-area ring without antiparallel edges: still a sliding path
                slides.append(Contour(tuple(_canonical(pts))))
                slide_ids.extend(core)
                continue
            contour_ids.update(core)
            (outer if area > 0.0 else holes).append(Contour(tuple(_canonical(pts))))
        for tour in _slide_tours(g, slide_edges):
            slides.append(Contour(tuple(_canonical([g.points[i] for i in tour]))))
            slide_ids.extend(tour)
        for i in set(ids):
            if i in g.points and not g.out[i] and not g.inc[i]:
                g.remove_vertex(i)
    # vertex ids stay valid after removal, so shared ids mean shared vertices
    attach = [points[i] for i in dict.fromkeys(slide_ids) if i in contour_ids]

    def order(c):
        return tuple(c.vertices)

    return NfpResult(
        tuple(sorted(outer, key=order)), tuple(sorted(holes, key=order)),
        tuple(sorted(slides, key=order)), tuple(sorted(fits)),
        tuple(sorted(dict.fromkeys(attach))), eps, consumed,
    )


def graph_from_result(result: NfpResult, eps: float | None = None) -> MergeGraph:
    """Rebuild a merge graph whose extraction reproduces ``result``."""
    g = MergeGraph(result.epsilon if eps is None else eps)
    for c in (*result.outer, *result.holes, *result.slides):
        ids = [g.add_vertex(p) for p in c.vertices]
        n = len(ids)
        for k in range(n):
            if n > 1:
                g.add_edge(ids[k], ids[(k + 1) % n])
    for p in result.fits:
        g.add_vertex(p)
    return g
