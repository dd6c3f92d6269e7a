"""Independent overlap oracle for checking computed no-fit polygons.

Overlap of B (placed with its reference point at t) and A is judged from
the pieces themselves, never from the NFP: pairwise clipped area of the
convex components, backed by a separating-axis test that is re-run in
exact rational arithmetic when the float margin is too thin to trust.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import kernels
from .decomposition import decompose
from .extraction import NfpResult
from .geometry import Piece, bbox, bbox_diagonal

AREA_REL = 1e-6
SEP_REL = 1e-11
SLIDE_PROBE_AT = 2.0 ** 0.5 - 1.0


@dataclass(frozen=True)
class _Packed:
    comps: tuple
    verts: np.ndarray
    offsets: np.ndarray


@lru_cache(maxsize=256)
def _packed(piece: Piece) -> _Packed:
    comps = tuple(tuple(c.vertices) for c in decompose(piece).components)
    v, o = kernels.pack_polygons(comps)
    return _Packed(comps, v, o)


def _shift(B: Piece, t) -> tuple[np.ndarray, np.ndarray]:
    t = np.atleast_2d(np.asarray(t, dtype=np.float64))
    return t[:, 0] - B.reference_point.x, t[:, 1] - B.reference_point.y


def intersection_area(A: Piece, B: Piece, t) -> np.ndarray | float:
    """Overlap area of A and B placed with its reference point at t (one or many)."""
    scalar = np.ndim(t) == 1
    pa, pb = _packed(A), _packed(B)
    dx, dy = _shift(B, t)
    out = kernels.overlap_areas(pa.verts, pa.offsets, pb.verts, pb.offsets, dx, dy)
    return float(out[0]) if scalar else out


def min_separation(A: Piece, B: Piece, t) -> np.ndarray:
    pa, pb = _packed(A), _packed(B)
    dx, dy = _shift(B, t)
    return kernels.min_separation(pa.verts, pa.offsets, pb.verts, pb.offsets, dx, dy)


def _exact_pair_overlaps(P, Q) -> bool:
    """Open interiors of convex CCW polygons intersect, decided exactly."""
    for R, S in ((P, Q), (Q, P)):
        n = len(R)
        for k in range(n):
            ax, ay = R[k]
            bx, by = R[(k + 1) % n]
            ex, ey = bx - ax, by - ay
            if all(ex * (sy - ay) - ey * (sx - ax) <= 0 for sx, sy in S):
                return False
    return True


def exact_overlap(A: Piece, B: Piece, t) -> bool:
    pa, pb = _packed(A), _packed(B)
    dx = Fraction(float(t[0])) - Fraction(B.reference_point.x)
    dy = Fraction(float(t[1])) - Fraction(B.reference_point.y)
    Af = [[(Fraction(x), Fraction(y)) for x, y in c] for c in pa.comps]
    for q in pb.comps:
        Qf = [(Fraction(x) + dx, Fraction(y) + dy) for x, y in q]
        qx0, qx1 = min(p[0] for p in Qf), max(p[0] for p in Qf)
        qy0, qy1 = min(p[1] for p in Qf), max(p[1] for p in Qf)
        for P in Af:
            if (min(p[0] for p in P) >= qx1 or qx0 >= max(p[0] for p in P)
                    or min(p[1] for p in P) >= qy1 or qy0 >= max(p[1] for p in P)):
                continue
            if _exact_pair_overlaps(P, Qf):
                return True
    return False


def _scale(A: Piece, B: Piece) -> float:
    return bbox_diagonal([*A.outer.vertices, *B.outer.vertices])


def area_threshold(A: Piece, B: Piece) -> float:
    return AREA_REL * min(A.area(), B.area())


def overlaps(A: Piece, B: Piece, t) -> np.ndarray:
    """Boolean overlap verdict per placement (interiors share positive area)."""
    t = np.atleast_2d(np.asarray(t, dtype=np.float64))
    delta = area_threshold(A, B)
    tol = SEP_REL * _scale(A, B)
    area = intersection_area(A, B, t)
    verdict = area > delta
    rest = np.nonzero(~verdict)[0]
    if len(rest):
        sep = min_separation(A, B, t[rest])
        verdict[rest[sep < -tol]] = True
        for k in rest[np.abs(sep) <= tol]:
            verdict[k] = exact_overlap(A, B, t[k])
    return verdict


# --- NFP region queries ------------------------------------------------------

def winding_numbers(result: NfpResult, pts) -> np.ndarray:
    """Signed winding number of outlines plus holes around each point."""
    pts = np.atleast_2d(np.asarray(pts, dtype=np.float64))
    qx, qy = pts[:, 0][:, None], pts[:, 1][:, None]
    w = np.zeros(len(pts), dtype=np.int64)
    for c in (*result.outer, *result.holes):
        v = np.asarray(c.vertices, dtype=np.float64)
        b = np.roll(v, -1, axis=0)
        ax, ay, bx, by = v[:, 0][None], v[:, 1][None], b[:, 0][None], b[:, 1][None]
        side = (bx - ax) * (qy - ay) - (by - ay) * (qx - ax)
        up = (ay <= qy) & (by > qy) & (side > 0)
        down = (ay > qy) & (by <= qy) & (side < 0)
        w += up.sum(axis=1) - down.sum(axis=1)
    return w


def nfp_contains(result: NfpResult, pts) -> np.ndarray:
    return winding_numbers(result, pts) > 0


def boundary_distance(result: NfpResult, pts) -> np.ndarray:
    """Distance to the nearest contour edge, sliding path or fit point."""
    pts = np.atleast_2d(np.asarray(pts, dtype=np.float64))
    qx, qy = pts[:, 0][:, None], pts[:, 1][:, None]
    d = np.full(len(pts), np.inf)
    for c in (*result.outer, *result.holes, *result.slides):
        v = np.asarray(c.vertices, dtype=np.float64)
        b = np.roll(v, -1, axis=0)
        ax, ay = v[:, 0][None], v[:, 1][None]
        ex, ey = b[:, 0][None] - ax, b[:, 1][None] - ay
        ll = ex * ex + ey * ey
        s = np.clip(((qx - ax) * ex + (qy - ay) * ey) / np.where(ll > 0, ll, 1.0), 0.0, 1.0)
        d = np.minimum(d, np.hypot(qx - ax - s * ex, qy - ay - s * ey).min(axis=1))
    for p in result.fits:
        d = np.minimum(d, np.hypot(pts[:, 0] - p.x, pts[:, 1] - p.y))
    return d


def result_points(result: NfpResult) -> list:
    pts = [p for c in (*result.outer, *result.holes, *result.slides) for p in c.vertices]
    return pts + list(result.fits)


def grid_box(A: Piece, B: Piece, result: NfpResult | None = None, pad: float = 0.05):
    """NFP bounding box grown by ``pad`` of its size on every side."""
    pts = result_points(result) if result is not None else []
    if not pts:
        ax0, ay0, ax1, ay1 = bbox(A.outer.vertices)
        bx0, by0, bx1, by1 = bbox(B.outer.vertices)
        r = B.reference_point
        pts = [(ax0 - (bx1 - r.x), ay0 - (by1 - r.y)), (ax1 - (bx0 - r.x), ay1 - (by0 - r.y))]
    x0, y0, x1, y1 = bbox(pts)
    w, h = max(x1 - x0, 1e-12), max(y1 - y0, 1e-12)
    return x0 - pad * w, y0 - pad * h, x1 + pad * w, y1 + pad * h


def grid_points(box, n: int, jitter: float = 0.0, seed: int = 0,
                shift: tuple[float, float] = (0.0, 0.0)) -> np.ndarray:
    """n*n cell centres of ``box`` (row-major, y outer).

    ``shift`` moves the whole lattice by a fraction of a cell; ``jitter``
    perturbs each sample independently within its cell.
    """
    x0, y0, x1, y1 = box
    hx, hy = (x1 - x0) / n, (y1 - y0) / n
    gx = x0 + (np.arange(n) + 0.5 + shift[0]) * hx
    gy = y0 + (np.arange(n) + 0.5 + shift[1]) * hy
    X, Y = np.meshgrid(gx, gy)
    if jitter:
        rng = np.random.default_rng(seed)
        X = X + rng.uniform(-jitter, jitter, X.shape) * hx
        Y = Y + rng.uniform(-jitter, jitter, Y.shape) * hy
    return np.column_stack([X.ravel(), Y.ravel()])


# --- verification ------------------------------------------------------------

@dataclass
class OracleReport:
    n_points: int = 0
    n_band: int = 0
    disagreements: list = field(default_factory=list)
    probe_failures: list = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.disagreements and not self.probe_failures


def _probe_offsets(h: float) -> np.ndarray:
    ang = np.arange(8) * (np.pi / 4.0) + np.pi / 8.0
    return h * np.column_stack([np.cos(ang), np.sin(ang)])


def verify_nfp(A: Piece, B: Piece, result: NfpResult, grid_n: int = 64,
               probes: bool = True, jitter: float = 0.0, seed: int = 0) -> OracleReport:
    """Compare NFP membership with the oracle on a grid plus targeted probes.

    Grid points within 2 eps of any NFP feature are only required not to
    overlap by more than the area threshold.
    """
    t0 = time.perf_counter()
    rep = OracleReport()
    eps = result.epsilon
    pts = grid_points(grid_box(A, B, result), grid_n, jitter, seed)
    rep.n_points = len(pts)
    inside = nfp_contains(result, pts)
    band = boundary_distance(result, pts) <= 2.0 * eps
    rep.n_band = int(band.sum())
    delta = area_threshold(A, B)
    if band.any():
        area = intersection_area(A, B, pts[band])
        for p, a in zip(pts[band], area):
            if a > delta:
                rep.disagreements.append((tuple(p), "band", float(a)))
    far = ~band
    actual = overlaps(A, B, pts[far])
    for p, want, got in zip(pts[far], inside[far], actual):
        if bool(want) != bool(got):
            rep.disagreements.append((tuple(p), "nfp" if want else "free", bool(got)))
    if probes:
        rep.probe_failures.extend(probe_features(A, B, result))
    rep.elapsed = time.perf_counter() - t0
    return rep


def probe_features(A: Piece, B: Piece, result: NfpResult, rel_h: float = 1e-6) -> list:
    """Fit points and slide midpoints must be free with overlap all around."""
    h = rel_h * _scale(A, B)
    fails = []
    for p in result.fits:
        if overlaps(A, B, [p])[0]:
            fails.append(("fit", tuple(p), "overlaps"))
        around = overlaps(A, B, np.asarray(p) + _probe_offsets(h))
        if not around.all():
            fails.append(("fit", tuple(p), "free neighbour"))
    for c in result.slides:
        vs = c.vertices
        for k in range(len(vs) - 1 if len(vs) == 2 else len(vs)):
            a, b = np.asarray(vs[k]), np.asarray(vs[(k + 1) % len(vs)])
            # off-centre so the probe does not land on a junction of the path
            m = a + SLIDE_PROBE_AT * (b - a)
            e = b - a
            ln = float(np.hypot(*e))
            if ln == 0.0:
                continue
            nrm = np.array([-e[1], e[0]]) / ln
            if overlaps(A, B, [m])[0]:
                fails.append(("slide", tuple(m), "overlaps"))
            side = overlaps(A, B, np.stack([m + h * nrm, m - h * nrm]))
            if not side.all():
                fails.append(("slide", tuple(m), "free neighbour"))
    return fails


# irrational cell fractions keep lattice rows off integer-aligned edges
LATTICE_SHIFT = (0.5 * (5 ** 0.5 - 2.0), 0.5 * (2 ** 0.5 - 1.25))


def flood_fill_counts(A: Piece, B: Piece, box=None, grid_n: int = 256,
                      shift: tuple[float, float] = LATTICE_SHIFT) -> dict[str, int]:
    """Connected free and overlapping regions on a shifted grid.

    Free regions not touching the border are holes of the NFP. Per-sample
    jitter is avoided on purpose: it can strand single samples in concave
    corners and report them as holes.
    """
    from scipy import ndimage

    if box is None:
        box = grid_box(A, B)
    pts = grid_points(box, grid_n, shift=shift)
    free = ~overlaps(A, B, pts).reshape(grid_n, grid_n)
    four = ndimage.generate_binary_structure(2, 1)
    lab, n = ndimage.label(free, structure=four)
    border = set(np.unique(np.concatenate([lab[0], lab[-1], lab[:, 0], lab[:, -1]])).tolist())
    border.discard(0)
    _, n_solid = ndimage.label(~free, structure=four)
    return {"hole_count": n - len(border), "outer_count": int(n_solid)}


def random_placements(A: Piece, B: Piece, n: int, seed: int = 0) -> np.ndarray:
    x0, y0, x1, y1 = grid_box(A, B)
    rng = np.random.default_rng(seed)
    return np.column_stack([rng.uniform(x0, x1, n), rng.uniform(y0, y1, n)])
