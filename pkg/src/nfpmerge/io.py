"""JSON piece and NFP documents, plus SVG rendering."""
from __future__ import annotations

import json
import math
import re
import warnings
from typing import Any

from .extraction import NfpResult
from .geometry import (
    Contour,
    GeometryError,
    Piece,
    Point,
    bbox,
    point_in_ring,
    ring_is_simple,
    segment_intersection_xy,
)

SIG_DIGITS = 12


class DocumentError(ValueError):
    """Malformed or invalid document; ``location`` names where it went wrong."""

    def __init__(self, message: str, location: str = ""):
        self.location = location
        super().__init__(f"{location}: {message}" if location else message)


class OrientationWarning(UserWarning):
    pass


def fmt(x: float) -> float:
    """Round to 12 significant digits, with -0.0 folded into 0.0."""
    y = float(f"{float(x):.{SIG_DIGITS}g}")
    return 0.0 if y == 0.0 else y


def _pt(p) -> list[float]:
    return [fmt(p[0]), fmt(p[1])]


_PAIR = re.compile(r"\[\s*(-?[\d.eE+-]+),\s*(-?[\d.eE+-]+)\s*\]")


def _dumps(doc: dict) -> bytes:
    """Indented JSON with each [x, y] pair kept on one line."""
    text = json.dumps(doc, indent=2, allow_nan=False)
    return (_PAIR.sub(r"[\1, \2]", text) + "\n").encode("utf-8")


def _load(data: bytes | str) -> Any:
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as e:
            raise DocumentError(f"not UTF-8 ({e.reason})", f"byte {e.start}") from None
    try:
        return json.loads(data)
    except json.JSONDecodeError as e:
        raise DocumentError(e.msg, f"line {e.lineno} column {e.colno}") from None


# --- pieces ------------------------------------------------------------------

def _parse_point(v, where: str) -> Point:
    if not (isinstance(v, list) and len(v) == 2):
        raise DocumentError("expected [x, y]", where)
    for c in v:
        if isinstance(c, bool) or not isinstance(c, (int, float)) or not math.isfinite(c):
            raise DocumentError("coordinates must be finite numbers", where)
    return Point(float(v[0]), float(v[1]))


def _parse_ring(v, where: str) -> list[Point]:
    if not isinstance(v, list) or len(v) < 3:
        raise DocumentError("ring needs at least 3 points", where)
    pts = [_parse_point(p, f"{where}[{i}]") for i, p in enumerate(v)]
    if len(pts) > 3 and pts[0] == pts[-1]:
        pts.pop()
    for i in range(len(pts)):
        if pts[i] == pts[i - 1]:
            raise DocumentError("repeated consecutive point", f"{where}[{i}]")
    if not ring_is_simple(pts):
        raise DocumentError("ring is self-intersecting", where)
    if _area(pts) == 0.0:
        raise DocumentError("ring has zero area", where)
    return pts


def _area(pts) -> float:
    return 0.5 * sum(pts[i - 1][0] * pts[i][1] - pts[i][0] * pts[i - 1][1] for i in range(len(pts)))


def _rings_cross(r, s) -> bool:
    for i in range(len(r)):
        a, b = r[i - 1], r[i]
        for j in range(len(s)):
            c, d = s[j - 1], s[j]
            if segment_intersection_xy(a[0], a[1], b[0], b[1], c[0], c[1], d[0], d[1]):
                return True
    return False


def piece_from_dict(doc: Any) -> Piece:
    if not isinstance(doc, dict):
        raise DocumentError("top level must be an object", "$")
    if "outer" not in doc:
        raise DocumentError("missing field", "$.outer")
    outer = _parse_ring(doc["outer"], "$.outer")
    if _area(outer) < 0:
        warnings.warn("outer ring was clockwise; reversed to counter-clockwise", OrientationWarning,
                      stacklevel=3)
    holes = []
    raw_holes = doc.get("holes", [])
    if not isinstance(raw_holes, list):
        raise DocumentError("expected a list of rings", "$.holes")
    for k, h in enumerate(raw_holes):
        where = f"$.holes[{k}]"
        ring = _parse_ring(h, where)
        if _area(ring) > 0:
            warnings.warn(f"hole {k} was counter-clockwise; reversed to clockwise",
                          OrientationWarning, stacklevel=3)
        if _rings_cross(ring, outer) or not all(point_in_ring(p, outer) for p in ring):
            raise DocumentError("hole is not strictly inside the outer ring", where)
        for j, other in enumerate(holes):
            if _rings_cross(ring, other) or point_in_ring(ring[0], other) or point_in_ring(other[0], ring):
                raise DocumentError(f"hole overlaps hole {j}", where)
        holes.append(ring)
    ref = doc.get("reference_point")
    ref = _parse_point(ref, "$.reference_point") if ref is not None else None
    name = doc.get("name", "")
    if not isinstance(name, str):
        raise DocumentError("expected a string", "$.name")
    try:
        return Piece(Contour(tuple(outer)), tuple(Contour(tuple(h)) for h in holes), ref, name)
    except GeometryError as e:
        raise DocumentError(str(e), "$") from None


def parse_piece(data: bytes | str) -> Piece:
    return piece_from_dict(_load(data))


def piece_to_dict(piece: Piece, units: str = "") -> dict:
    return {
        "name": piece.name,
        "units": units,
        "outer": [_pt(p) for p in piece.outer.vertices],
        "holes": [[_pt(p) for p in h.vertices] for h in piece.holes],
        "reference_point": _pt(piece.reference_point),
    }


def serialize_piece(piece: Piece, units: str = "") -> bytes:
    return _dumps(piece_to_dict(piece, units))


def read_piece(path) -> Piece:
    with open(path, "rb") as fh:
        return parse_piece(fh.read())


def write_piece(piece: Piece, path, units: str = "") -> None:
    with open(path, "wb") as fh:
        fh.write(serialize_piece(piece, units))


def pieces_to_document(pieces: list[Piece]) -> bytes:
    return _dumps({"pieces": [piece_to_dict(p) for p in pieces]})


# --- NFP documents -----------------------------------------------------------

def nfp_to_dict(result: NfpResult, stationary: str = "", orbital: str = "",
                tool_version: str | None = None) -> dict:
    if tool_version is None:
        from . import __version__ as tool_version
    return {
        "stationary": stationary,
        "orbital": orbital,
        "outer": [[_pt(p) for p in c.vertices] for c in result.outer],
        "holes": [[_pt(p) for p in c.vertices] for c in result.holes],
        "slides": [[_pt(p) for p in c.vertices] for c in result.slides],
        "fits": [_pt(p) for p in result.fits],
        "epsilon": fmt(result.epsilon),
        "tool_version": tool_version,
    }


def serialize_nfp(result: NfpResult, stationary: str = "", orbital: str = "",
                  tool_version: str | None = None) -> bytes:
    return _dumps(nfp_to_dict(result, stationary, orbital, tool_version))


def parse_nfp(data: bytes | str) -> tuple[NfpResult, dict]:
    """Parse an NFP document; returns the result and its metadata fields."""
    doc = _load(data)
    if not isinstance(doc, dict):
        raise DocumentError("top level must be an object", "$")

    def contours(key):
        raw = doc.get(key, [])
        if not isinstance(raw, list):
            raise DocumentError("expected a list of contours", f"$.{key}")
        out = []
        for k, c in enumerate(raw):
            if not isinstance(c, list) or not c:
                raise DocumentError("expected a non-empty point list", f"$.{key}[{k}]")
            out.append(Contour(tuple(_parse_point(p, f"$.{key}[{k}][{i}]") for i, p in enumerate(c))))
        return tuple(out)

    fits = doc.get("fits", [])
    if not isinstance(fits, list):
        raise DocumentError("expected a list of points", "$.fits")
    eps = doc.get("epsilon", 0.0)
    if not isinstance(eps, (int, float)):
        raise DocumentError("expected a number", "$.epsilon")
    result = NfpResult(
        contours("outer"), contours("holes"), contours("slides"),
        tuple(_parse_point(p, f"$.fits[{i}]") for i, p in enumerate(fits)),
        (), float(eps),
    )
    meta = {k: doc.get(k, "") for k in ("stationary", "orbital", "tool_version")}
    return result, meta


# --- SVG ---------------------------------------------------------------------

DEFAULT_STYLE = {
    "fill": "#9ab8d6",
    "stroke": "#1f3b57",
    "slide": "#c0392b",
    "fit": "#c0392b",
    "width": 480,
}


def _path(rings, flip) -> str:
    parts = []
    for r in rings:
        pts = [flip(p) for p in r]
        parts.append("M " + " L ".join(f"{x:.6g} {y:.6g}" for x, y in pts) + " Z")
    return " ".join(parts)


def render_svg(result, style: dict | None = None) -> bytes:
    """Standalone SVG of an NFP result or a list of pieces (holes as even-odd voids)."""
    st = {**DEFAULT_STYLE, **(style or {})}
    if isinstance(result, NfpResult):
        filled = [list(c.vertices) for c in (*result.outer, *result.holes)]
        slides = [list(c.vertices) for c in result.slides]
        fits = list(result.fits)
    else:
        filled = [list(r.vertices) for p in result for r in p.rings]
        slides, fits = [], []
    pts = [p for r in filled + slides for p in r] + fits
    width = int(st["width"])
    if not pts:
        return (f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{width}" '
                f'viewBox="0 0 1 1"></svg>\n').encode()
    x0, y0, x1, y1 = bbox(pts)
    diag = math.hypot(x1 - x0, y1 - y0) or 1.0
    pad = 0.05 * diag
    w, h = (x1 - x0) + 2 * pad, (y1 - y0) + 2 * pad
    height = max(1, round(width * h / w))

    def flip(p):
        return p[0] - x0 + pad, y1 + pad - p[1]

    sw = 0.004 * diag
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
           f'viewBox="0 0 {w:.6g} {h:.6g}">']
    if filled:
        out.append(f'<path d="{_path(filled, flip)}" fill="{st["fill"]}" fill-rule="evenodd" '
                   f'stroke="{st["stroke"]}" stroke-width="{sw:.4g}"/>')
    for s in slides:
        d = "M " + " L ".join(f"{x:.6g} {y:.6g}" for x, y in map(flip, s))
        out.append(f'<path d="{d}" fill="none" stroke="{st["slide"]}" '
                   f'stroke-width="{2 * sw:.4g}" stroke-dasharray="{4 * sw:.4g} {2 * sw:.4g}"/>')
    r = 0.015 * diag
    for p in fits:
        x, y = flip(p)
        out.append(f'<circle cx="{x:.6g}" cy="{y:.6g}" r="{r:.4g}" fill="{st["fit"]}"/>')
    out.append("</svg>")
    return ("\n".join(out) + "\n").encode()
