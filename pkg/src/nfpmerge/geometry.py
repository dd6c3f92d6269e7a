"""Tolerant 2D primitives shared by every stage of the NFP pipeline.

All equality-sensitive predicates take an absolute tolerance ``eps`` (model
units). Callers derive it from a relative tolerance and the bounding-box
diagonal of the data they work on, see :func:`default_eps`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum, IntEnum
from typing import Iterable, NamedTuple, Sequence

DEFAULT_REL_EPS = 1e-9


class GeometryError(ValueError):
    """Raised when an input violates a geometric precondition."""


class _XY(NamedTuple):
    x: float
    y: float


class Point(_XY):
    __slots__ = ()

    def __new__(cls, x, y):
        x = float(x)
        y = float(y)
        if not (math.isfinite(x) and math.isfinite(y)):
            raise GeometryError(f"non-finite coordinate ({x}, {y})")
        return super().__new__(cls, x, y)

    def __repr__(self):
        return f"Point({self.x!r}, {self.y!r})"


class Orientation(IntEnum):
    RIGHT = -1
    COLLINEAR = 0
    LEFT = 1


class Containment(IntEnum):
    OUTSIDE = 0
    BOUNDARY = 1
    INSIDE = 2


class Winding(Enum):
    CCW = "ccw"
    CW = "cw"


@dataclass(frozen=True)
class Segment:
    a: Point
    b: Point

    def __post_init__(self):
        object.__setattr__(self, "a", Point(*self.a))
        object.__setattr__(self, "b", Point(*self.b))
        if self.a == self.b:
            raise GeometryError("degenerate segment")


@dataclass(frozen=True)
class Contour:
    """Closed vertex ring; the last vertex implicitly joins the first.

    ``orientation`` is derived from the shoelace sign (zero area counts as CCW).
    """

    vertices: tuple[Point, ...]
    orientation: Winding = field(init=False)

    def __post_init__(self):
        verts = tuple(Point(*v) for v in self.vertices)
        if not verts:
            raise GeometryError("empty contour")
        n = len(verts)
        if n > 1 and any(verts[i] == verts[(i + 1) % n] for i in range(n)):
            raise GeometryError("contour has repeated consecutive vertices")
        object.__setattr__(self, "vertices", verts)
        orient_ = Winding.CCW if _shoelace(verts) >= 0.0 else Winding.CW
        object.__setattr__(self, "orientation", orient_)

    def __len__(self):
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    def __getitem__(self, i):
        return self.vertices[i]

    def reversed(self) -> "Contour":
        return Contour(tuple(reversed(self.vertices)))

    def edges(self):
        v = self.vertices
        n = len(v)
        return [(v[i], v[(i + 1) % n]) for i in range(n)] if n > 1 else []

    def as_ccw(self) -> "Contour":
        return self if self.orientation is Winding.CCW else self.reversed()

    def as_cw(self) -> "Contour":
        return self if self.orientation is Winding.CW else self.reversed()


@dataclass(frozen=True)
class Piece:
    """Polygon with optional holes; outer is kept CCW and holes CW."""

    outer: Contour
    holes: tuple[Contour, ...] = ()
    reference_point: Point | None = None
    name: str = ""

    def __post_init__(self):
        outer = self.outer if isinstance(self.outer, Contour) else Contour(tuple(self.outer))
        if len(outer) < 3:
            raise GeometryError("outer ring needs at least 3 vertices")
        holes = []
        for h in self.holes:
            h = h if isinstance(h, Contour) else Contour(tuple(h))
            if len(h) < 3:
                raise GeometryError("hole ring needs at least 3 vertices")
            holes.append(h.as_cw())
        object.__setattr__(self, "outer", outer.as_ccw())
        object.__setattr__(self, "holes", tuple(holes))
        ref = self.reference_point
        object.__setattr__(self, "reference_point", Point(*ref) if ref is not None else self.outer[0])

    @property
    def rings(self) -> list[Contour]:
        return [self.outer, *self.holes]

    def area(self) -> float:
        return signed_area(self.outer) + sum(signed_area(h) for h in self.holes)

    def translated(self, dx: float, dy: float) -> "Piece":
        return Piece(
            transform(self.outer, (dx, dy)),
            tuple(transform(h, (dx, dy)) for h in self.holes),
            Point(self.reference_point.x + dx, self.reference_point.y + dy),
            self.name,
        )


# --- scalar helpers ---------------------------------------------------------

def cross(o, a, b) -> float:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def points_equal(p, q, eps: float = 0.0) -> bool:
    return abs(p[0] - q[0]) <= eps and abs(p[1] - q[1]) <= eps


def bbox(points: Iterable) -> tuple[float, float, float, float]:
    xs, ys = [], []
    for p in points:
        xs.append(p[0])
        ys.append(p[1])
    if not xs:
        raise GeometryError("bbox of empty point set")
    return min(xs), min(ys), max(xs), max(ys)


def bbox_diagonal(points: Iterable) -> float:
    x0, y0, x1, y1 = bbox(points)
    return math.hypot(x1 - x0, y1 - y0)


def default_eps(points: Iterable, rel_eps: float = DEFAULT_REL_EPS) -> float:
    diag = bbox_diagonal(points)
    return rel_eps * (diag if diag > 0 else 1.0)


def _orient_xy(px, py, qx, qy, rx, ry, eps):
    ux, uy = qx - px, qy - py
    vx, vy = rx - px, ry - py
    c = ux * vy - uy * vx
    tol = eps * max(math.hypot(ux, uy), math.hypot(vx, vy))
    if c > tol:
        return 1
    if c < -tol:
        return -1
    return 0


def orient(p, q, r, eps: float = 0.0) -> Orientation:
    """Turn direction of p->q->r; collinear when r is within ~eps of the line."""
    return Orientation(_orient_xy(p[0], p[1], q[0], q[1], r[0], r[1], eps))


def _shoelace(verts: Sequence) -> float:
    n = len(verts)
    if n < 3:
        return 0.0
    x0, y0 = verts[0]
    s = 0.0
    for i in range(1, n - 1):
        x1, y1 = verts[i]
        x2, y2 = verts[i + 1]
        s += (x1 - x0) * (y2 - y0) - (x2 - x0) * (y1 - y0)
    return 0.5 * s


def signed_area(c) -> float:
    """Shoelace area; positive for counter-clockwise rings."""
    verts = c.vertices if isinstance(c, Contour) else c
    return _shoelace(verts)


def segment_intersection_xy(ax, ay, bx, by, cx, cy, dx, dy, eps=0.0):
    """Intersection of segments ab and cd as a list of (x, y) tuples.

    Endpoint touches return the touching endpoint itself and collinear
    overlaps return the two extreme points of the shared interval, so that
    no new coordinates are synthesised unless the segments properly cross.
    """
    if (max(ax, bx) < min(cx, dx) - eps or max(cx, dx) < min(ax, bx) - eps
            or max(ay, by) < min(cy, dy) - eps or max(cy, dy) < min(ay, by) - eps):
        return []
    o1 = _orient_xy(ax, ay, bx, by, cx, cy, eps)
    o2 = _orient_xy(ax, ay, bx, by, dx, dy, eps)
    o3 = _orient_xy(cx, cy, dx, dy, ax, ay, eps)
    o4 = _orient_xy(cx, cy, dx, dy, bx, by, eps)
    if o1 == 0 and o2 == 0:
        ex, ey = bx - ax, by - ay
        ll = ex * ex + ey * ey
        length = math.sqrt(ll)
        tc = ((cx - ax) * ex + (cy - ay) * ey) / ll
        td = ((dx - ax) * ex + (dy - ay) * ey) / ll
        if tc <= td:
            lo_o, hi_o = (tc, (cx, cy)), (td, (dx, dy))
        else:
            lo_o, hi_o = (td, (dx, dy)), (tc, (cx, cy))
        lo = lo_o if lo_o[0] > 0.0 else (0.0, (ax, ay))
        hi = hi_o if hi_o[0] < 1.0 else (1.0, (bx, by))
        gap = (hi[0] - lo[0]) * length
        if gap < -eps:
            return []
        if gap <= eps:
            return [lo[1]]
        return [lo[1], hi[1]]
    if o1 * o2 > 0 or o3 * o4 > 0:
        return []
    if o1 == 0:
        return [(cx, cy)]
    if o2 == 0:
        return [(dx, dy)]
    if o3 == 0:
        return [(ax, ay)]
    if o4 == 0:
        return [(bx, by)]
    rx, ry = bx - ax, by - ay
    sx, sy = dx - cx, dy - cy
    denom = rx * sy - ry * sx
    t = ((cx - ax) * sy - (cy - ay) * sx) / denom
    return [(ax + t * rx, ay + t * ry)]


def segment_intersection(s: Segment, t: Segment, eps: float = 0.0) -> tuple[Point, ...]:
    pts = segment_intersection_xy(s.a.x, s.a.y, s.b.x, s.b.y, t.a.x, t.a.y, t.b.x, t.b.y, eps)
    if len(pts) == 2:
        # order along s so the result does not depend on argument order
        ex, ey = s.b.x - s.a.x, s.b.y - s.a.y
        pts.sort(key=lambda p: (p[0] - s.a.x) * ex + (p[1] - s.a.y) * ey)
    return tuple(Point(*p) for p in pts)


def is_convex(verts: Sequence, eps: float = 0.0) -> bool:
    """True for a CCW ring with no right turns that winds exactly once."""
    n = len(verts)
    if n < 3 or _shoelace(verts) <= 0.0:
        return False
    turning = 0.0
    for i in range(n):
        p, q, r = verts[i - 1], verts[i], verts[(i + 1) % n]
        if orient(p, q, r, eps) is Orientation.RIGHT:
            return False
        a1 = math.atan2(q[1] - p[1], q[0] - p[0])
        a2 = math.atan2(r[1] - q[1], r[0] - q[0])
        d = (a2 - a1 + math.pi) % (2.0 * math.pi) - math.pi
        turning += d
    return abs(turning - 2.0 * math.pi) < 1e-6


def point_in_convex(p, c, eps: float = 0.0, *, check: bool = True) -> Containment:
    verts = c.vertices if isinstance(c, Contour) else c
    if check and not is_convex(verts, eps):
        raise GeometryError("point_in_convex requires a convex CCW contour")
    px, py = p[0], p[1]
    n = len(verts)
    on_edge = False
    for i in range(n):
        ax, ay = verts[i]
        bx, by = verts[(i + 1) % n]
        ex, ey = bx - ax, by - ay
        d = (ex * (py - ay) - ey * (px - ax)) / math.hypot(ex, ey)
        if d < -eps:
            return Containment.OUTSIDE
        if d <= eps:
            on_edge = True
    return Containment.BOUNDARY if on_edge else Containment.INSIDE


def transform(c, translate=(0.0, 0.0), reflect_origin: bool = False) -> Contour:
    """Optionally reflect through the origin, then translate."""
    tx, ty = float(translate[0]), float(translate[1])
    verts = c.vertices if isinstance(c, Contour) else c
    if reflect_origin:
        return Contour(tuple(Point(-x + tx, -y + ty) for x, y in verts))
    return Contour(tuple(Point(x + tx, y + ty) for x, y in verts))


def point_segment_distance(p, a, b) -> float:
    ex, ey = b[0] - a[0], b[1] - a[1]
    ll = ex * ex + ey * ey
    if ll == 0.0:
        return math.hypot(p[0] - a[0], p[1] - a[1])
    t = max(0.0, min(1.0, ((p[0] - a[0]) * ex + (p[1] - a[1]) * ey) / ll))
    return math.hypot(p[0] - a[0] - t * ex, p[1] - a[1] - t * ey)


def point_in_ring(p, verts: Sequence) -> bool:
    """Even-odd crossing test; boundary points are unspecified."""
    x, y = p[0], p[1]
    inside = False
    n = len(verts)
    j = n - 1
    for i in range(n):
        xi, yi = verts[i]
        xj, yj = verts[j]
        if (yi > y) != (yj > y):
            xc = xi + (y - yi) * (xj - xi) / (yj - yi)
            if x < xc:
                inside = not inside
        j = i
    return inside


def remove_collinear(verts: Sequence, eps: float = 0.0) -> list:
    """Drop vertices that continue straight on; U-turns are kept."""
    out = list(verts)
    changed = True
    while changed and len(out) > 2:
        changed = False
        i = 0
        while i < len(out) and len(out) > 2:
            p, q, r = out[i - 1], out[i], out[(i + 1) % len(out)]
            if points_equal(p, q, eps):
                del out[i]
                changed = True
                continue
            if (orient(p, q, r, eps) is Orientation.COLLINEAR
                    and (q[0] - p[0]) * (r[0] - q[0]) + (q[1] - p[1]) * (r[1] - q[1]) > 0.0):
                del out[i]
                changed = True
                continue
            i += 1
    return out


def ring_is_simple(verts: Sequence, eps: float = 0.0) -> bool:
    """No two non-adjacent edges meet (adjacent edges may only share their joint)."""
    n = len(verts)
    edges = [(verts[i], verts[(i + 1) % n]) for i in range(n)]
    for i in range(n):
        a, b = edges[i]
        for j in range(i + 1, n):
            c, d = edges[j]
            pts = segment_intersection_xy(a[0], a[1], b[0], b[1], c[0], c[1], d[0], d[1], eps)
            if not pts:
                continue
            if j == i + 1:
                if len(pts) > 1 or not points_equal(pts[0], b, eps):
                    return False
            elif i == 0 and j == n - 1:
                if len(pts) > 1 or not points_equal(pts[0], a, eps):
                    return False
            else:
                return False
    return True
