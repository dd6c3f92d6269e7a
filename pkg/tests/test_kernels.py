import numpy as np
import pytest

from nfpmerge import kernels
from nfpmerge.fixtures import random_pairs

BACKENDS = kernels.available_backends()


@pytest.fixture
def restore_backend():
    before = kernels.backend_name()
    yield
    kernels.use_backend(before)


def test_python_backend_always_available():
    assert "python" in BACKENDS


def test_unknown_backend_rejected(restore_backend):
    with pytest.raises(ValueError):
        kernels.use_backend("fortran")


def _random_edges(rng, n):
    e = rng.uniform(-10, 10, size=(n, 4))
    # a few shared endpoints and collinear overlaps
    e[1::7, 0:2] = e[0::7, 2:4][: len(e[1::7])]
    e[3::11] = [0.0, 0.0, 4.0, 0.0]
    e[4::11] = [2.0, 0.0, 6.0, 0.0]
    return e, rng.integers(0, 5, size=n)


def _run_all(backend, rng_seed):
    kernels.use_backend(backend)
    rng = np.random.default_rng(rng_seed)
    edges, owner = _random_edges(rng, 120)
    ints = kernels.edge_intersections(edges, owner, 1e-9)
    pairs = random_pairs("convex", 6, seed=rng_seed)
    polys = [list(a.outer.vertices) for a, _ in pairs]
    verts, off = kernels.pack_polygons(polys)
    px, py = rng.uniform(-100, 100, 400), rng.uniform(-100, 100, 400)
    px[:len(verts)] = verts[:len(px), 0]
    py[:len(verts)] = verts[:len(py), 1]
    cont = kernels.convex_containment(px, py, verts, off, 1e-9)
    b_polys = [list(b.outer.vertices) for _, b in pairs[:3]]
    bv, bo = kernels.pack_polygons(b_polys)
    tx, ty = rng.uniform(-50, 50, 30), rng.uniform(-50, 50, 30)
    areas = kernels.overlap_areas(verts, off, bv, bo, tx, ty)
    seps = kernels.min_separation(verts, off, bv, bo, tx, ty)
    return ints, cont, areas, seps


@pytest.mark.skipif("compiled" not in BACKENDS, reason="compiled extension not built")
@pytest.mark.parametrize("seed", [0, 1, 2])
def test_backends_agree(seed, restore_backend):
    py_out = _run_all("python", seed)
    c_out = _run_all("compiled", seed)
    for a, b in zip(py_out[0], c_out[0]):
        np.testing.assert_allclose(a, b, rtol=0, atol=1e-12)
    np.testing.assert_array_equal(py_out[1], c_out[1])
    np.testing.assert_allclose(py_out[2], c_out[2], rtol=1e-12, atol=1e-9)
    np.testing.assert_allclose(py_out[3], c_out[3], rtol=1e-12, atol=1e-9)


def test_containment_states(restore_backend):
    for name in BACKENDS:
        kernels.use_backend(name)
        verts, off = kernels.pack_polygons([[(0, 0), (2, 0), (2, 2), (0, 2)]])
        st = kernels.convex_containment([1.0, 2.0, 3.0, 0.0], [1.0, 1.0, 1.0, 0.0], verts, off, 1e-9)
        assert list(st) == [2, 1, 0, 1]


def test_overlap_area_of_offset_squares(restore_backend):
    for name in BACKENDS:
        kernels.use_backend(name)
        sq = [[(0, 0), (1, 0), (1, 1), (0, 1)]]
        v, o = kernels.pack_polygons(sq)
        a = kernels.overlap_areas(v, o, v, o, np.array([0.5, 1.0, 2.0]), np.array([0.5, 0.0, 0.0]))
        np.testing.assert_allclose(a, [0.25, 0.0, 0.0], atol=1e-15)


def test_collinear_overlap_reports_both_endpoints(restore_backend):
    for name in BACKENDS:
        kernels.use_backend(name)
        edges = np.array([[0.0, 0.0, 4.0, 0.0], [2.0, 0.0, 6.0, 0.0]])
        i, j, x, y = kernels.edge_intersections(edges, np.array([0, 1]), 1e-9)
        assert sorted(zip(x.tolist(), y.tolist())) == [(2.0, 0.0), (4.0, 0.0)]


def test_fallback_selected_when_extension_missing():
    import subprocess
    import sys

    code = (
        "import sys; sys.modules['nfpmerge._ckernels'] = None\n"
        "from nfpmerge import kernels, gen_nfp\n"
        "from nfpmerge.fixtures import builtin_cases\n"
        "c = builtin_cases()[0]\n"
        "print(kernels.backend_name(), kernels.available_backends(), gen_nfp(c.stationary, c.orbital).counts()['hole_count'])\n"
    )
    out = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True, check=True).stdout
    assert out.split()[0] == "python" and out.strip().endswith("1")
