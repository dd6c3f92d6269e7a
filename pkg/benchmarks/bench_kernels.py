"""Time the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat N]

Prints one row per kernel plus an end-to-end NFP row, with the speedup of
the compiled backend when it is available.
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from nfpmerge import kernels
from nfpmerge.fixtures import builtin_cases, random_pairs
from nfpmerge.merge import gen_nfp


def _workloads():
    rng = np.random.default_rng(0)
    pairs = random_pairs("star", 40, seed=0)
    polys = [list(a.outer.vertices) for a, _ in pairs]
    verts, off = kernels.pack_polygons(polys)
    bv, bo = kernels.pack_polygons([list(b.outer.vertices) for _, b in pairs[:8]])
    edges = []
    owner = []
    for k, p in enumerate(polys):
        for i in range(len(p)):
            a, b = p[i - 1], p[i]
            edges.append((a[0] + k % 5, a[1], b[0] + k % 5, b[1]))
            owner.append(k)
    edges = np.asarray(edges)
    owner = np.asarray(owner)
    px, py = rng.uniform(-15, 15, 20000), rng.uniform(-15, 15, 20000)
    tx, ty = rng.uniform(-15, 15, 300), rng.uniform(-15, 15, 300)
    cases = [(c.stationary, c.orbital) for c in builtin_cases()]
    return {
        "edge_intersections": lambda: kernels.edge_intersections(edges, owner, 1e-9),
        "convex_containment": lambda: kernels.convex_containment(px, py, verts, off, 1e-9),
        "overlap_areas": lambda: kernels.overlap_areas(verts, off, bv, bo, tx, ty),
        "min_separation": lambda: kernels.min_separation(verts, off, bv, bo, tx, ty),
        "gen_nfp (fixtures)": lambda: [gen_nfp(a, b) for a, b in cases],
    }


def _best(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    before = kernels.backend_name()
    backends = kernels.available_backends()
    work = _workloads()
    times = {}
    for name in backends:
        kernels.use_backend(name)
        times[name] = {k: _best(fn, args.repeat) for k, fn in work.items()}
    kernels.use_backend(before)
    head = f"{'kernel':<22}" + "".join(f"{b + ' (ms)':>16}" for b in backends)
    if "compiled" in backends:
        head += f"{'speedup':>10}"
    print(head)
    for k in work:
        row = f"{k:<22}" + "".join(f"{1e3 * times[b][k]:>16.2f}" for b in backends)
        if "compiled" in backends:
            row += f"{times['python'][k] / times['compiled'][k]:>9.1f}x"
        print(row)
    if "compiled" not in backends:
        print("compiled extension not built; only the Python fallback was timed")


if __name__ == "__main__":
    main()
