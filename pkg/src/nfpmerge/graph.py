"""Directed graph with tolerance-aggregated vertices."""
from __future__ import annotations

import math
from typing import Iterator

from .geometry import Point


class MergeGraph:
    """Vertices within ``eps`` (Chebyshev) of an existing vertex reuse its id.

    Adjacency uses insertion-ordered dicts so every traversal is deterministic.
    Duplicate directed edges are ignored; antiparallel pairs are kept.
    """

    def __init__(self, eps: float = 0.0):
        self.eps = float(eps)
        self.points: dict[int, Point] = {}
        self.out: dict[int, dict[int, None]] = {}
        self.inc: dict[int, dict[int, None]] = {}
        self._cell = self.eps if self.eps > 0.0 else None
        self._grid: dict[tuple, list[int]] = {}
        self._next = 0

    # -- vertices ---------------------------------------------------------
    def _key(self, x, y):
        if self._cell is None:
            return (x, y)
        return (math.floor(x / self._cell), math.floor(y / self._cell))

    def find_vertex(self, p) -> int | None:
        x, y = p[0], p[1]
        if self._cell is None:
            ids = self._grid.get((x, y))
            return ids[0] if ids else None
        kx, ky = self._key(x, y)
        for dx in (-1, 0, 1):
            for dy in (-1, 0, 1):
                for vid in self._grid.get((kx + dx, ky + dy), ()):
                    q = self.points.get(vid)
                    if q is not None and abs(q.x - x) <= self.eps and abs(q.y - y) <= self.eps:
                        return vid
        return None

    def add_vertex(self, p) -> int:
        vid = self.find_vertex(p)
        if vid is not None:
            return vid
        vid = self._next
        self._next += 1
        pt = p if isinstance(p, Point) else Point(p[0], p[1])
        self.points[vid] = pt
        self.out[vid] = {}
        self.inc[vid] = {}
        self._grid.setdefault(self._key(pt.x, pt.y), []).append(vid)
        return vid

    def remove_vertex(self, v: int) -> None:
        for w in list(self.out[v]):
            del self.inc[w][v]
        for u in list(self.inc[v]):
            del self.out[u][v]
        del self.out[v]
        del self.inc[v]
        pt = self.points.pop(v)
        bucket = self._grid.get(self._key(pt.x, pt.y))
        if bucket is not None:
            bucket.remove(v)

    # -- edges ------------------------------------------------------------
    def add_edge(self, u: int, v: int) -> bool:
        if u == v or v in self.out[u]:
            return False
        self.out[u][v] = None
        self.inc[v][u] = None
        return True

    def has_edge(self, u: int, v: int) -> bool:
        return u in self.out and v in self.out[u]

    def remove_edge(self, u: int, v: int) -> None:
        del self.out[u][v]
        del self.inc[v][u]

    def edges(self) -> Iterator[tuple[int, int]]:
        for u, nbrs in self.out.items():
            for v in nbrs:
                yield u, v

    @property
    def n_vertices(self) -> int:
        return len(self.points)

    @property
    def n_edges(self) -> int:
        return sum(len(n) for n in self.out.values())

    def degree(self, v: int) -> tuple[int, int]:
        return len(self.inc[v]), len(self.out[v])

    def vertices(self) -> list[int]:
        return list(self.points)

    def copy(self) -> "MergeGraph":
        g = MergeGraph(self.eps)
        g.points = dict(self.points)
        g.out = {k: dict(v) for k, v in self.out.items()}
        g.inc = {k: dict(v) for k, v in self.inc.items()}
        g._grid = {k: list(v) for k, v in self._grid.items()}
        g._next = self._next
        return g

    def __repr__(self):
        return f"MergeGraph(vertices={self.n_vertices}, edges={self.n_edges}, eps={self.eps:g})"
