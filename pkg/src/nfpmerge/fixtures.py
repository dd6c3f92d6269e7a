"""Hand-built degenerate test geometry and random polygon generators.

The built-in cases are shipped as piece documents under ``data/``;
``build_case_pieces`` is the code that produced them.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from importlib import resources

import numpy as np

from .geometry import Contour, Piece

EXPECTED_KEYS = ("outer_count", "hole_count", "slide_count", "fit_count")


@dataclass(frozen=True)
class FixtureCase:
    name: str
    stationary: Piece
    orbital: Piece
    expected: dict
    description: str = ""

    def matches(self, counts: dict) -> bool:
        """Exact ints must match; strings like ">=1" are lower bounds."""
        for k, want in self.expected.items():
            got = counts[k]
            if isinstance(want, str):
                if not got >= int(want.lstrip(">=")):
                    return False
            elif got != want:
                return False
        return True


def _piece(verts, holes=(), name="", ref=None) -> Piece:
    return Piece(Contour(tuple(verts)), tuple(Contour(tuple(h)) for h in holes), ref, name)


def anchor(head_w=4.0, head_h=1.0, stem_w=1.0, stem_h=5.0, name="anchor") -> Piece:
    """T-shaped piece: a wide head at the bottom with a narrow stem standing on it."""
    s0 = 0.5 * (head_w - stem_w)
    s1 = s0 + stem_w
    return _piece([(0, 0), (head_w, 0), (head_w, head_h), (s1, head_h), (s1, head_h + stem_h),
                   (s0, head_h + stem_h), (s0, head_h), (0, head_h)], name=name)


def pocket_bar(pockets, height=6.0, floor=1.0, lip=2.0, margin=2.0, name="bar") -> Piece:
    """Bar with lipped pockets opening upwards.

    ``pockets`` holds (cavity_x0, cavity_width, mouth_x0, mouth_width). The
    cavity spans floor..height-lip; the mouth cuts through the lip.
    """
    top = height - lip
    right = max(c0 + cw for c0, cw, _, _ in pockets) + margin
    verts = [(0, 0), (right, 0), (right, height)]
    for c0, cw, m0, mw in sorted(pockets, reverse=True):
        verts += [(m0 + mw, height), (m0 + mw, top), (c0 + cw, top), (c0 + cw, floor),
                  (c0, floor), (c0, top), (m0, top), (m0, height)]
    verts.append((0, height))
    return _piece(verts, name=name)


def build_case_pieces() -> dict[str, tuple[Piece, Piece, dict, str]]:
    cases = {}
    A = pocket_bar([(2, 6, 4, 2)], name="case1_stationary")
    cases["case1"] = (A, anchor(name="case1_orbital"),
                      {"outer_count": 1, "hole_count": 1, "slide_count": 0, "fit_count": 0},
                      "interlocking pocket and anchor, single trapped region")
    A = pocket_bar([(2, 6, 4, 2), (10, 7, 13, 2), (19, 6, 20, 2), (27, 8, 30, 2), (37, 6, 39, 2)],
                   name="case2_stationary")
    cases["case2"] = (A, anchor(name="case2_orbital"),
                      {"outer_count": 1, "hole_count": 5, "slide_count": 0, "fit_count": 0},
                      "five lipped pockets of different widths, five trapped regions")
    # cavity height equals the anchor head height: zero vertical freedom
    A = pocket_bar([(2, 6, 4, 2)], height=6.0, floor=3.0, lip=2.0, name="case3_stationary")
    cases["case3"] = (A, anchor(name="case3_orbital"),
                      {"outer_count": 1, "slide_count": ">=1", "fit_count": 0},
                      "pocket exactly as tall as the anchor head, sliding only")
    A = _piece([(0, 0), (8, 0), (8, 4), (5, 4), (5, 3), (6, 3), (6, 1), (2, 1), (2, 3), (3, 3),
                (3, 4), (0, 4)], name="case4_stationary")
    B = _piece([(2, 1), (6, 1), (6, 3), (5, 3), (5, 4), (8, 4), (8, 6), (0, 6), (0, 4), (3, 4),
                (3, 3), (2, 3)], name="case4_orbital")
    cases["case4"] = (A, B, {"outer_count": 1, "hole_count": 0, "slide_count": 0, "fit_count": ">=1"},
                      "dovetail socket and matching tab, exact fit only")
    A = _piece([(0, 0), (7.5, 0), (7.5, 1), (6, 1), (6, 4), (10, 4), (10, 1), (8.5, 1), (8.5, 0),
                (16, 0), (16, 10), (0, 10)],
               holes=[[(1, 4), (5, 4), (5, 5.5), (11, 5.5), (11, 4), (15, 4), (15, 8), (11, 8),
                       (11, 6.5), (5, 6.5), (5, 8), (1, 8)]],
               name="case5_stationary")
    B = _piece([(0, 0), (2, 0), (2, 2), (0, 2)], name="case5_orbital")
    cases["case5"] = (A, B, {"outer_count": 1, "hole_count": ">=2", "slide_count": 0, "fit_count": 0},
                      "dumbbell hole plus lipped pocket, several trapped regions")
    return cases


def write_case_documents(directory) -> None:
    """Regenerate the shipped piece documents (used once when building the data)."""
    from pathlib import Path

    from .io import serialize_piece

    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    manifest = {}
    for name, (A, B, expected, desc) in build_case_pieces().items():
        (d / f"{name}_stationary.json").write_bytes(serialize_piece(A))
        (d / f"{name}_orbital.json").write_bytes(serialize_piece(B))
        manifest[name] = {"stationary": f"{name}_stationary.json",
                          "orbital": f"{name}_orbital.json",
                          "expected": expected, "description": desc}
    (d / "cases.json").write_text(json.dumps(manifest, indent=2) + "\n")


def data_path(filename: str):
    return resources.files("nfpmerge") / "data" / filename


def builtin_cases() -> list[FixtureCase]:
    from .io import parse_piece

    manifest = json.loads(data_path("cases.json").read_text())
    out = []
    for name, entry in manifest.items():
        A = parse_piece(data_path(entry["stationary"]).read_bytes())
        B = parse_piece(data_path(entry["orbital"]).read_bytes())
        out.append(FixtureCase(name, A, B, entry["expected"], entry.get("description", "")))
    return out


def square_ring_case() -> FixtureCase:
    A = _piece([(0, 0), (3, 0), (3, 3), (0, 3)], holes=[[(1, 1), (1, 2), (2, 2), (2, 1)]], name="ring")
    B = _piece([(0, 0), (1, 0), (1, 1), (0, 1)], name="unit_square")
    return FixtureCase("square_ring", A, B,
                       {"outer_count": 1, "hole_count": 0, "slide_count": 0, "fit_count": 1})


# --- random generators -------------------------------------------------------

def random_convex(rng: np.random.Generator, n_min: int = 3, n_max: int = 10,
                  lo: float = -100.0, hi: float = 100.0) -> Piece:
    """Convex polygon with vertices on a random ellipse, coordinates within [lo, hi]."""
    n = int(rng.integers(n_min, n_max + 1))
    while True:
        ang = np.sort(rng.uniform(0.0, 2.0 * math.pi, n))
        if np.min(np.diff(np.append(ang, ang[0] + 2 * math.pi))) > 1e-3:
            break
    span = hi - lo
    rx, ry = rng.uniform(0.05, 0.25) * span, rng.uniform(0.05, 0.25) * span
    r = max(rx, ry)  # rotation can swing either radius onto an axis
    cx = rng.uniform(lo + r, hi - r)
    cy = rng.uniform(lo + r, hi - r)
    rot = rng.uniform(0.0, math.pi)
    c, s = math.cos(rot), math.sin(rot)
    pts = []
    for a in ang:
        x, y = rx * math.cos(a), ry * math.sin(a)
        pts.append((cx + c * x - s * y, cy + s * x + c * y))
    return _piece(pts)


def random_star(rng: np.random.Generator, n_min: int = 5, n_max: int = 12,
                radius: float = 10.0, inner: float = 0.35) -> Piece:
    """Star-shaped simple polygon around the origin with random radii."""
    n = int(rng.integers(n_min, n_max + 1))
    while True:
        ang = np.sort(rng.uniform(0.0, 2.0 * math.pi, n))
        gaps = np.diff(np.append(ang, ang[0] + 2 * math.pi))
        if gaps.min() > 0.05 and gaps.max() < math.pi * 0.9:
            break
    r = rng.uniform(inner, 1.0, n) * radius
    return _piece([(float(ri * math.cos(a)), float(ri * math.sin(a))) for ri, a in zip(r, ang)])


def random_pairs(kind: str, count: int, seed: int = 0) -> list[tuple[Piece, Piece]]:
    rng = np.random.default_rng(seed)
    gen = random_convex if kind == "convex" else random_star
    return [(gen(rng), gen(rng)) for _ in range(count)]


def random_polyomino(rng: np.random.Generator, n_cells: int) -> Piece:
    """Union of ``n_cells`` edge-connected unit squares on the integer grid.

    Lots of collinear edges and exact contacts, which is the point: NFPs of
    such pieces are full of sliding paths and exact fits.
    """
    from .boolean import boolean

    cells = [(0, 0)]
    seen = {(0, 0)}
    while len(cells) < n_cells:
        x, y = cells[int(rng.integers(len(cells)))]
        dx, dy = ((1, 0), (-1, 0), (0, 1), (0, -1))[int(rng.integers(4))]
        if (x + dx, y + dy) not in seen:
            seen.add((x + dx, y + dy))
            cells.append((x + dx, y + dy))
    parts: list[Piece] = []
    for x, y in sorted(cells):
        merged = _piece([(x, y), (x + 1, y), (x + 1, y + 1), (x, y + 1)])
        rest = []
        for p in parts:
            r = boolean(merged, p, "or")
            if len(r) == 1:
                merged = r[0]
            else:
                rest.append(p)
        parts = rest + [merged]
    if len(parts) != 1:
        raise RuntimeError("polyomino union did not collapse to one piece")
    return parts[0]


def random_holed(rng: np.random.Generator, n_cells: int) -> Piece:
    """Bounding frame of a random polyomino with the polyomino cut out as a hole."""
    from .boolean import boolean

    while True:
        cut = random_polyomino(rng, n_cells)
        xs = [p.x for p in cut.outer]
        ys = [p.y for p in cut.outer]
        frame = _piece([(min(xs) - 1, min(ys) - 1), (max(xs) + 1, min(ys) - 1),
                        (max(xs) + 1, max(ys) + 1), (min(xs) - 1, max(ys) + 1)])
        res = boolean(frame, cut, "not")
        if len(res) == 1:
            return res[0]
