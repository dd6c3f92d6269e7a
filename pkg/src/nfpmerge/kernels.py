"""Backend selection for the hot kernels.

The compiled extension is used when it imports; otherwise the pure-Python
module is. :func:`use_backend` switches explicitly (tests and benchmarks).
"""
from __future__ import annotations

import logging

from . import _pykernels

log = logging.getLogger(__name__)

try:
    from . import _ckernels
except ImportError:  # pragma: no cover - depends on the build
    _ckernels = None

_BACKENDS = {"python": _pykernels}
if _ckernels is not None:
    _BACKENDS["compiled"] = _ckernels

_active = _BACKENDS.get("compiled", _pykernels)


def available_backends() -> list[str]:
    return sorted(_BACKENDS)


def backend_name() -> str:
    return "compiled" if _active is _ckernels and _ckernels is not None else "python"


def use_backend(name: str) -> None:
    global _active
    if name not in _BACKENDS:
        raise ValueError(f"unknown or unavailable backend {name!r}; have {available_backends()}")
    _active = _BACKENDS[name]
    log.debug("kernel backend set to %s", name)


def edge_intersections(edges, owner, eps):
    return _active.edge_intersections(edges, owner, eps)


def convex_containment(px, py, verts, offsets, eps):
    return _active.convex_containment(px, py, verts, offsets, eps)


def overlap_areas(a_verts, a_off, b_verts, b_off, tx, ty):
    return _active.overlap_areas(a_verts, a_off, b_verts, b_off, tx, ty)


def min_separation(a_verts, a_off, b_verts, b_off, tx, ty):
    return _active.min_separation(a_verts, a_off, b_verts, b_off, tx, ty)


def pack_polygons(polys):
    """Flatten a list of vertex sequences into (verts, offsets) arrays."""
    import numpy as np

    offsets = [0]
    flat = []
    for p in polys:
        for v in p:
            flat.append((v[0], v[1]))
        offsets.append(len(flat))
    verts = np.asarray(flat, dtype=np.float64).reshape(-1, 2)
    return verts, np.asarray(offsets, dtype=np.int64)
